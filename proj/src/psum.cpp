#include "su3ff/psum.hpp"

#include <bit>
#include <sstream>

#include "su3ff/dwpf.hpp"
#include "su3ff/kernel.hpp"

namespace su3ff {

namespace {

// Compensated (Kahan) accumulation keeps the partition sums reproducible
// independent of any future reordering of terms.
class KahanSum {
 public:
  void add(cplx term) {
    const cplx y = term - comp_;
    const cplx t = sum_ + y;
    comp_ = (t - sum_) - y;
    sum_ = t;
  }
  cplx value() const { return sum_; }

 private:
  cplx sum_{0.0};
  cplx comp_{0.0};
};

void split(const VarSet& xs, std::uint32_t mask, VarSet& part_i, VarSet& part_ii) {
  for (std::size_t k = 0; k < xs.size(); ++k) {
    if (mask & (1u << k))
      part_i.push_back(xs[k]);
    else
      part_ii.push_back(xs[k]);
  }
}

void check_equal_sizes(const VarSet& xi, const VarSet& eta, const char* what) {
  if (xi.size() != eta.size()) {
    std::ostringstream os;
    os << what << ": #xi = " << xi.size() << " but #eta = " << eta.size();
    throw SizeMismatch(os.str());
  }
}

void check_cap(const VarSet& xi, std::size_t size_cap, const char* what) {
  if (xi.size() > size_cap) {
    std::ostringstream os;
    os << what << ": n = " << xi.size() << " exceeds the partition-sum cap " << size_cap;
    throw SizeLimit(os.str());
  }
}

cplx int_pow(cplx base, std::size_t k) {
  cplx result(1.0);
  for (std::size_t i = 0; i < k; ++i) result *= base;
  return result;
}

}  // namespace

PartitionPair PartitionPair::make(std::uint32_t xi_mask, std::uint32_t eta_mask) {
  if (std::popcount(xi_mask) != std::popcount(eta_mask))
    throw ConstructionError("partition pair: subset-I cardinalities differ");
  return PartitionPair{xi_mask, eta_mask};
}

int PartitionPair::cardinality_first() const { return std::popcount(xi_mask); }

std::vector<PartitionPair> partition_pairs(std::size_t n) {
  if (n > 31) throw SizeLimit("partition_pairs: n too large for bitmask enumeration");
  std::vector<PartitionPair> out;
  const std::uint32_t limit = 1u << n;
  for (std::uint32_t mx = 0; mx < limit; ++mx)
    for (std::uint32_t me = 0; me < limit; ++me)
      if (std::popcount(mx) == std::popcount(me)) out.push_back(PartitionPair{mx, me});
  return out;
}

cplx gsum_brute(const VarSet& xi, const VarSet& eta, cplx zeta, const Coupling& c,
                std::size_t size_cap) {
  check_equal_sizes(xi, eta, "gsum_brute");
  check_cap(xi, size_cap, "gsum_brute");
  const std::size_t n = xi.size();
  KahanSum sum;
  const std::uint32_t limit = 1u << n;
  for (std::uint32_t mx = 0; mx < limit; ++mx) {
    const int n1 = std::popcount(mx);
    VarSet xi_i, xi_ii;
    split(xi, mx, xi_i, xi_ii);
    const cplx fx = kernel::f(xi_i, xi_ii, c);
    const cplx zeta_pow = int_pow(zeta, n - static_cast<std::size_t>(n1));
    for (std::uint32_t me = 0; me < limit; ++me) {
      if (std::popcount(me) != n1) continue;
      VarSet eta_i, eta_ii;
      split(eta, me, eta_i, eta_ii);
      sum.add(zeta_pow * fx * kernel::f(eta_ii, eta_i, c) * dwpf(eta_i, xi_i, c) *
              dwpf(xi_ii.shifted(c.value()), eta_ii, c));
    }
  }
  return sum.value();
}

cplx gsum_single(const VarSet& xi, const VarSet& eta, cplx zeta, const Coupling& c,
                 std::size_t size_cap) {
  check_equal_sizes(xi, eta, "gsum_single");
  check_cap(xi, size_cap, "gsum_single");
  const std::size_t n = xi.size();
  KahanSum sum;
  const std::uint32_t limit = 1u << n;
  for (std::uint32_t mx = 0; mx < limit; ++mx) {
    const int n1 = std::popcount(mx);
    VarSet xi_i, xi_ii;
    split(xi, mx, xi_i, xi_ii);
    VarSet merged = xi_i.shifted(-c.value());
    for (const auto& x : xi_ii.shifted(c.value())) merged.push_back(x);
    const double sign = (n1 % 2 == 0) ? 1.0 : -1.0;
    sum.add(int_pow(zeta, n - static_cast<std::size_t>(n1)) * sign * kernel::f(xi_i, xi_ii, c) *
            kernel::f(eta, xi_i, c) * dwpf(merged, eta, c));
  }
  return sum.value();
}

cplx gsum_first_order(const VarSet& xi, const VarSet& eta, cplx zeta, const Coupling& c,
                      bool* branch_note) {
  check_equal_sizes(xi, eta, "gsum_first_order");
  const std::size_t n = xi.size();
  cplx exponent(0.0);
  for (std::size_t i = 0; i < n; ++i) exponent += (eta[i] - xi[i]) / c.value();
  const cplx zeta_pow = kernel::pow_principal(zeta, exponent, branch_note);
  const double sign = (n % 2 == 0) ? 1.0 : -1.0;
  return sign * zeta_pow * kernel::t(xi, eta, c) * kernel::h(eta, eta, c) *
         kernel::h(xi, xi, c);
}

cplx gtilde(const VarSet& xi, const VarSet& eta, cplx gamma, const Coupling& c, GtildeMode mode,
            std::size_t size_cap) {
  check_equal_sizes(xi, eta, "gtilde");
  const std::size_t n = xi.size();
  if (mode == GtildeMode::closed) {
    cplx pair_sum(0.0);
    for (std::size_t i = 0; i < n; ++i) pair_sum += (eta[i] - xi[i]) / c.value();
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    return sign * kernel::t(xi, eta, c) * kernel::h(eta, eta, c) * kernel::h(xi, xi, c) *
           (gamma + pair_sum);
  }
  check_cap(xi, size_cap, "gtilde");
  KahanSum sum;
  const std::uint32_t limit = 1u << n;
  for (std::uint32_t mx = 0; mx < limit; ++mx) {
    const int n1 = std::popcount(mx);
    VarSet xi_i, xi_ii;
    split(xi, mx, xi_i, xi_ii);
    const cplx fx = kernel::f(xi_i, xi_ii, c);
    const cplx weight = gamma + cplx(static_cast<double>(n - static_cast<std::size_t>(n1)));
    for (std::uint32_t me = 0; me < limit; ++me) {
      if (std::popcount(me) != n1) continue;
      VarSet eta_i, eta_ii;
      split(eta, me, eta_i, eta_ii);
      sum.add(weight * fx * kernel::f(eta_ii, eta_i, c) * dwpf(eta_i, xi_i, c) *
              dwpf(xi_ii.shifted(c.value()), eta_ii, c));
    }
  }
  return sum.value();
}

}  // namespace su3ff
