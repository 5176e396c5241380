#include "su3ff/kernel.hpp"

#include <cmath>
#include <sstream>

namespace su3ff {

std::string to_string(cplx z) {
  std::ostringstream os;
  os << "(" << z.real();
  if (z.imag() >= 0)
    os << "+" << z.imag() << "i)";
  else
    os << z.imag() << "i)";
  return os.str();
}

bool pairwise_distinct(const VarSet& xs, double eps, std::size_t* i, std::size_t* j) {
  for (std::size_t a = 0; a < xs.size(); ++a)
    for (std::size_t b = a + 1; b < xs.size(); ++b)
      if (std::abs(xs[a] - xs[b]) < eps) {
        if (i) *i = a;
        if (j) *j = b;
        return false;
      }
  return true;
}

void require_distinct(const VarSet& xs, const Coupling& c, const char* what) {
  std::size_t i = 0, j = 0;
  if (!pairwise_distinct(xs, c.dist_eps(), &i, &j)) {
    std::ostringstream os;
    os << what << ": coincident elements " << to_string(xs[i]) << " and " << to_string(xs[j])
       << " at positions " << i << ", " << j;
    throw PoleError(os.str());
  }
}

bool same_multiset(const VarSet& a, const VarSet& b, double tol) {
  if (a.size() != b.size()) return false;
  std::vector<bool> used(b.size(), false);
  for (const auto& x : a) {
    bool found = false;
    for (std::size_t k = 0; k < b.size(); ++k) {
      if (!used[k] && std::abs(x - b[k]) <= tol) {
        used[k] = true;
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

namespace kernel {

namespace {

[[noreturn]] void pole(const char* fn, cplx x, cplx y, const char* denom) {
  std::ostringstream os;
  os << fn << "(" << to_string(x) << ", " << to_string(y) << "): denominator " << denom
     << " below pole guard";
  throw PoleError(os.str());
}

}  // namespace

cplx g(cplx x, cplx y, const Coupling& c) {
  const cplx d = x - y;
  if (std::abs(d) <= c.pole_eps()) pole("g", x, y, "x-y");
  return c.value() / d;
}

cplx f(cplx x, cplx y, const Coupling& c) {
  const cplx d = x - y;
  if (std::abs(d) <= c.pole_eps()) pole("f", x, y, "x-y");
  return (d + c.value()) / d;
}

cplx h(cplx x, cplx y, const Coupling& c) { return (x - y + c.value()) / c.value(); }

cplx t(cplx x, cplx y, const Coupling& c) {
  const cplx d = x - y;
  if (std::abs(d) <= c.pole_eps()) pole("t", x, y, "x-y");
  if (std::abs(d + c.value()) <= c.pole_eps()) pole("t", x, y, "x-y+c");
  return c.value() * c.value() / (d * (d + c.value()));
}

namespace {

template <typename Fn>
cplx set_product(Fn&& fn, const VarSet& xs, const VarSet& ys) {
  cplx result(1.0);
  for (const auto& x : xs)
    for (const auto& y : ys) result *= fn(x, y);
  return result;
}

}  // namespace

#define SU3FF_KERNEL_PRODUCTS(name)                                          \
  cplx name(const VarSet& xs, const VarSet& ys, const Coupling& c) {         \
    return set_product([&](cplx x, cplx y) { return name(x, y, c); }, xs,    \
                       ys);                                                  \
  }                                                                          \
  cplx name(cplx x, const VarSet& ys, const Coupling& c) {                   \
    cplx result(1.0);                                                        \
    for (const auto& y : ys) result *= name(x, y, c);                        \
    return result;                                                           \
  }                                                                          \
  cplx name(const VarSet& xs, cplx y, const Coupling& c) {                   \
    cplx result(1.0);                                                        \
    for (const auto& x : xs) result *= name(x, y, c);                        \
    return result;                                                           \
  }

SU3FF_KERNEL_PRODUCTS(g)
SU3FF_KERNEL_PRODUCTS(f)
SU3FF_KERNEL_PRODUCTS(h)
SU3FF_KERNEL_PRODUCTS(t)

#undef SU3FF_KERNEL_PRODUCTS

namespace {

cplx log_checked(cplx value, const Coupling& c, const char* what) {
  if (std::abs(value) <= c.pole_eps()) {
    std::ostringstream os;
    os << "log of vanishing " << what << " = " << to_string(value);
    throw ZeroArgument(os.str());
  }
  return std::log(value);
}

}  // namespace

cplx logf_sum(cplx x, const VarSet& ys, const Coupling& c) {
  cplx result(0.0);
  for (const auto& y : ys) result += log_checked(f(x, y, c), c, "f factor");
  return result;
}

cplx logf_sum(const VarSet& xs, cplx y, const Coupling& c) {
  cplx result(0.0);
  for (const auto& x : xs) result += log_checked(f(x, y, c), c, "f factor");
  return result;
}

cplx dlogf(cplx x, cplx y, const Coupling& c) {
  const cplx d = x - y;
  if (std::abs(d) <= c.pole_eps()) pole("dlogf", x, y, "x-y");
  if (std::abs(d + c.value()) <= c.pole_eps()) pole("dlogf", x, y, "x-y+c");
  return 1.0 / (d + c.value()) - 1.0 / d;
}

cplx ginv(cplx x, cplx y, const Coupling& c) { return (x - y) / c.value(); }

cplx ginv(cplx x, const VarSet& ys, const Coupling& c) {
  cplx result(1.0);
  for (const auto& y : ys) result *= ginv(x, y, c);
  return result;
}

cplx ginv(const VarSet& xs, cplx y, const Coupling& c) {
  cplx result(1.0);
  for (const auto& x : xs) result *= ginv(x, y, c);
  return result;
}

cplx pow_principal(cplx base, cplx expo, bool* note) {
  if (note && (base.imag() != 0.0 || base.real() <= 0.0)) *note = true;
  if (expo == cplx(0.0)) return cplx(1.0);
  return std::exp(expo * std::log(base));
}

}  // namespace kernel

cplx eval_kernel(KernelFn fn, cplx x, cplx y, const Coupling& c) {
  switch (fn) {
    case KernelFn::g:
      return kernel::g(x, y, c);
    case KernelFn::f:
      return kernel::f(x, y, c);
    case KernelFn::h:
      return kernel::h(x, y, c);
    case KernelFn::t:
      return kernel::t(x, y, c);
  }
  throw Error("unreachable kernel dispatch");
}

cplx prod_kernel(KernelFn fn, const VarSet& xs, const VarSet& ys, const Coupling& c) {
  switch (fn) {
    case KernelFn::g:
      return kernel::g(xs, ys, c);
    case KernelFn::f:
      return kernel::f(xs, ys, c);
    case KernelFn::h:
      return kernel::h(xs, ys, c);
    case KernelFn::t:
      return kernel::t(xs, ys, c);
  }
  throw Error("unreachable kernel dispatch");
}

cplx delta_prod(DeltaKind kind, const VarSet& xs, const Coupling& c) {
  require_distinct(xs, c, "delta_prod");
  cplx result(1.0);
  const std::size_t n = xs.size();
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < j; ++k) {
      // j > k pairs; the plain kind takes the swapped arguments.
      result *= (kind == DeltaKind::primed) ? kernel::g(xs[j], xs[k], c)
                                            : kernel::g(xs[k], xs[j], c);
    }
  return result;
}

}  // namespace su3ff
