#include "su3ff/model.hpp"

#include <cmath>
#include <sstream>

#include "su3ff/kernel.hpp"

namespace su3ff {

cplx RationalFn::eval(cplx w, const Coupling& c) const {
  cplx num = scale;
  for (const auto& z : zeros) num *= (w - z);
  cplx den(1.0);
  for (const auto& p : poles) {
    const cplx d = w - p;
    if (std::abs(d) <= c.pole_eps())
      throw PoleError("rational function evaluated at pole " + to_string(p));
    den *= d;
  }
  return num / den;
}

cplx RationalFn::log_eval(cplx w, const Coupling& c) const {
  cplx result = std::log(scale);
  for (const auto& z : zeros) {
    const cplx d = w - z;
    if (std::abs(d) <= c.pole_eps())
      throw ZeroArgument("log of rational function at zero " + to_string(z));
    result += std::log(d);
  }
  for (const auto& p : poles) {
    const cplx d = w - p;
    if (std::abs(d) <= c.pole_eps())
      throw PoleError("log of rational function at pole " + to_string(p));
    result -= std::log(d);
  }
  return result;
}

cplx RationalFn::dlog(cplx w, const Coupling& c) const {
  cplx result(0.0);
  for (const auto& z : zeros) {
    const cplx d = w - z;
    if (std::abs(d) <= c.pole_eps())
      throw ZeroArgument("dlog of rational function at zero " + to_string(z));
    result += 1.0 / d;
  }
  for (const auto& p : poles) {
    const cplx d = w - p;
    if (std::abs(d) <= c.pole_eps())
      throw PoleError("dlog of rational function at pole " + to_string(p));
    result -= 1.0 / d;
  }
  return result;
}

namespace {

void validate_chain(int length, const VarSet& xi, const Coupling& c, bool check_distinct) {
  if (length <= 0) throw ConstructionError("chain length must be positive");
  if (xi.size() != static_cast<std::size_t>(length))
    throw ConstructionError("chain needs exactly L inhomogeneities");
  if (check_distinct) {
    std::size_t i = 0, j = 0;
    if (!pairwise_distinct(xi, c.dist_eps(), &i, &j)) {
      std::ostringstream os;
      os << "chain inhomogeneities must be pairwise distinct; xi[" << i << "] = " << to_string(xi[i])
         << " collides with xi[" << j << "]";
      throw ConstructionError(os.str());
    }
  }
}

void validate_rational(const RationalFn& fn, const Coupling& c, const char* name) {
  if (fn.scale == cplx(0.0))
    throw ConstructionError(std::string(name) + ": scale must be nonzero");
  for (const auto& z : fn.zeros)
    for (const auto& p : fn.poles)
      if (std::abs(z - p) < c.dist_eps()) {
        std::ostringstream os;
        os << name << ": common root " << to_string(z) << " in numerator and denominator";
        throw ConstructionError(os.str());
      }
}

}  // namespace

ModelSpec ModelSpec::xxx_chain(int length, VarSet xi, Coupling c) {
  validate_chain(length, xi, c, true);
  return ModelSpec(XXXChain{length, std::move(xi)}, c);
}

ModelSpec ModelSpec::xxx_chain_unchecked(int length, VarSet xi, Coupling c) {
  validate_chain(length, xi, c, false);
  return ModelSpec(XXXChain{length, std::move(xi)}, c);
}

ModelSpec ModelSpec::xxx_chain_split_homogeneous(int length, Coupling c, double split) {
  std::vector<cplx> xi;
  xi.reserve(static_cast<std::size_t>(length));
  for (int n = 1; n <= length; ++n) xi.push_back(cplx(n * split, 0.0));
  return xxx_chain(length, VarSet(std::move(xi)), c);
}

ModelSpec ModelSpec::generic(RationalFn r1, RationalFn r3, RationalFn lambda2, Coupling c) {
  validate_rational(r1, c, "r1");
  validate_rational(r3, c, "r3");
  validate_rational(lambda2, c, "lambda2");
  return ModelSpec(GenericRational{std::move(r1), std::move(r3), std::move(lambda2)}, c);
}

const ModelSpec::XXXChain& ModelSpec::chain() const {
  if (!is_chain()) throw Error("model is not a lattice chain");
  return std::get<XXXChain>(data_);
}

const ModelSpec::GenericRational& ModelSpec::rational() const {
  if (is_chain()) throw Error("model is not a generic rational model");
  return std::get<GenericRational>(data_);
}

cplx ModelSpec::r(int which, cplx w) const {
  if (which != 1 && which != 3) throw Error("r index must be 1 or 3");
  if (is_chain()) {
    if (which == 3) return cplx(1.0);
    return kernel::f(w, chain().xi, c_);
  }
  const auto& fn = (which == 1) ? rational().r1 : rational().r3;
  return fn.eval(w, c_);
}

cplx ModelSpec::log_r(int which, cplx w) const {
  if (which != 1 && which != 3) throw Error("r index must be 1 or 3");
  if (is_chain()) {
    if (which == 3) return cplx(0.0);
    return kernel::logf_sum(w, chain().xi, c_);
  }
  const auto& fn = (which == 1) ? rational().r1 : rational().r3;
  return fn.log_eval(w, c_);
}

cplx ModelSpec::dlog_r(int which, cplx w) const {
  if (which != 1 && which != 3) throw Error("r index must be 1 or 3");
  if (is_chain()) {
    if (which == 3) return cplx(0.0);
    cplx result(0.0);
    for (const auto& xi : chain().xi) result += kernel::dlogf(w, xi, c_);
    return result;
  }
  const auto& fn = (which == 1) ? rational().r1 : rational().r3;
  return fn.dlog(w, c_);
}

cplx ModelSpec::lambda(int j, cplx w) const {
  if (j < 1 || j > 3) throw Error("lambda index must be in 1..3");
  if (is_chain()) {
    cplx result(1.0);
    const cplx shift = (j == 1) ? c_.value() : cplx(0.0);
    for (const auto& xi : chain().xi) result *= (w - xi + shift);
    return result;
  }
  const cplx l2 = rational().lambda2.eval(w, c_);
  if (j == 2) return l2;
  return l2 * ((j == 1) ? rational().r1.eval(w, c_) : rational().r3.eval(w, c_));
}

}  // namespace su3ff
