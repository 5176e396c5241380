#include <doctest.h>

#include "su3ff/dwpf.hpp"
#include "su3ff/kernel.hpp"
#include "su3ff/psum.hpp"
#include "su3ff/rng.hpp"

using namespace su3ff;

namespace {

double rel_err(cplx got, cplx want) {
  const double scale = std::max(1.0, std::abs(want));
  return std::abs(got - want) / scale;
}

// Pairs (xi, eta) with eta_i - xi_j away from {0, c, -c, 2c} so that every
// partition term is regular.
void draw_admissible(Rng& rng, const Coupling& c, std::size_t n, VarSet& xi, VarSet& eta) {
  for (;;) {
    std::vector<cplx> x(n), e(n);
    for (auto& v : x) v = 1.5 * rng.complex_normal();
    for (auto& v : e) v = 1.5 * rng.complex_normal();
    VarSet cx{std::vector<cplx>(x)}, ce{std::vector<cplx>(e)};
    bool ok = pairwise_distinct(cx, 5e-2, nullptr, nullptr) &&
              pairwise_distinct(ce, 5e-2, nullptr, nullptr);
    for (const auto& a : e)
      for (const auto& b : x)
        for (double k : {0.0, 1.0, -1.0, 2.0})
          if (std::abs(a - b - k * c.value()) < 5e-2) ok = false;
    if (ok) {
      xi = std::move(cx);
      eta = std::move(ce);
      return;
    }
  }
}

const Coupling kC{cplx(1.1, -0.4)};

}  // namespace

TEST_CASE("partition pair bookkeeping") {
  CHECK(partition_pairs(0).size() == 1);
  CHECK(partition_pairs(2).size() == 6);   // sum_k C(2,k)^2 = C(4,2)
  CHECK(partition_pairs(3).size() == 20);  // C(6,3)
  CHECK_THROWS_AS(PartitionPair::make(0b11, 0b1), ConstructionError);
  CHECK(PartitionPair::make(0b101, 0b011).cardinality_first() == 2);
}

TEST_CASE("gsum trivial cases") {
  CHECK(gsum_brute(VarSet{}, VarSet{}, cplx(0.7), kC) == cplx(1.0));
  CHECK(gsum_single(VarSet{}, VarSet{}, cplx(0.7), kC) == cplx(1.0));
  CHECK(gtilde(VarSet{}, VarSet{}, cplx(2.5, 1.0), kC, GtildeMode::brute) == cplx(2.5, 1.0));
  CHECK(gtilde(VarSet{}, VarSet{}, cplx(2.5, 1.0), kC, GtildeMode::closed) == cplx(2.5, 1.0));
}

TEST_CASE("gsum size handling") {
  Rng rng(5);
  VarSet xi, eta;
  draw_admissible(rng, kC, 2, xi, eta);
  CHECK_THROWS_AS(gsum_brute(xi, VarSet{}, cplx(1.0), kC), SizeMismatch);
  CHECK_THROWS_AS(gsum_brute(xi, eta, cplx(1.0), kC, 1), SizeLimit);
}

TEST_CASE("n=1 two-term sum reduces to -t") {
  Rng rng(19);
  VarSet xi, eta;
  draw_admissible(rng, kC, 1, xi, eta);
  // g(eta,xi) + g(xi+c,eta) collapses to -t(xi,eta) at zeta = 1
  const cplx direct = kernel::g(eta[0], xi[0], kC) + kernel::g(xi[0] + kC.value(), eta[0], kC);
  CHECK(rel_err(direct, -kernel::t(xi[0], eta[0], kC)) < 1e-13);
  CHECK(rel_err(gsum_brute(xi, eta, cplx(1.0), kC), -kernel::t(xi[0], eta[0], kC)) < 1e-13);
}

TEST_CASE("brute and single-sum forms agree") {
  Rng rng(23);
  for (std::size_t n : {1u, 2u, 3u}) {
    VarSet xi, eta;
    draw_admissible(rng, kC, n, xi, eta);
    for (cplx zeta : {cplx(1.0), cplx(0.85, 0.1), cplx(1.3)}) {
      const cplx brute = gsum_brute(xi, eta, zeta, kC);
      const cplx single = gsum_single(xi, eta, zeta, kC);
      CHECK(rel_err(single, brute) < 1e-10);
    }
  }
}

TEST_CASE("first-order form is exact at zeta = 1") {
  Rng rng(29);
  for (std::size_t n = 1; n <= 4; ++n) {
    VarSet xi, eta;
    draw_admissible(rng, kC, n, xi, eta);
    CHECK(rel_err(gsum_first_order(xi, eta, cplx(1.0), kC), gsum_brute(xi, eta, cplx(1.0), kC)) <
          1e-10);
  }
}

TEST_CASE("first-order remainder scales as (zeta-1)^2") {
  Rng rng(31);
  VarSet xi, eta;
  draw_admissible(rng, kC, 3, xi, eta);
  auto remainder = [&](double eps) {
    const cplx zeta(1.0 + eps, 0.0);
    return std::abs(gsum_brute(xi, eta, zeta, kC) - gsum_first_order(xi, eta, zeta, kC));
  };
  const double r1 = remainder(1e-2), r2 = remainder(1e-3);
  const double slope = std::log10(r1 / r2);
  CHECK(slope > 1.9);
  CHECK(slope < 2.1);
}

TEST_CASE("gtilde closed form") {
  Rng rng(37);
  // n=1, gamma=0: -t(xi,eta) (eta-xi)/c
  VarSet xi, eta;
  draw_admissible(rng, kC, 1, xi, eta);
  const cplx want = -kernel::t(xi[0], eta[0], kC) * (eta[0] - xi[0]) / kC.value();
  CHECK(rel_err(gtilde(xi, eta, cplx(0.0), kC, GtildeMode::closed), want) < 1e-13);
  CHECK(rel_err(gtilde(xi, eta, cplx(0.0), kC, GtildeMode::brute), want) < 1e-12);

  for (std::size_t n = 2; n <= 5; ++n) {
    VarSet x2, e2;
    draw_admissible(rng, kC, n, x2, e2);
    const cplx gamma(0.6, -0.2);
    CHECK(rel_err(gtilde(x2, e2, gamma, kC, GtildeMode::brute),
                  gtilde(x2, e2, gamma, kC, GtildeMode::closed)) < 1e-10);
  }
}

TEST_CASE("gtilde equals gamma G(1) plus the zeta derivative") {
  Rng rng(41);
  VarSet xi, eta;
  draw_admissible(rng, kC, 3, xi, eta);
  const cplx gamma(1.2, 0.4);
  const double eps = 1e-5;
  const cplx g_plus = gsum_brute(xi, eta, cplx(1.0 + eps), kC);
  const cplx g_minus = gsum_brute(xi, eta, cplx(1.0 - eps), kC);
  const cplx g_one = gsum_brute(xi, eta, cplx(1.0), kC);
  const cplx fd = gamma * g_one + (g_plus - g_minus) / (2 * eps);
  CHECK(rel_err(gtilde(xi, eta, gamma, kC, GtildeMode::brute), fd) < 1e-8);
}

TEST_CASE("gtilde recursion when eta_n approaches xi_n") {
  Rng rng(43);
  const cplx gamma(0.9, 0.1);
  for (std::size_t n = 2; n <= 4; ++n) {
    VarSet xi, eta;
    draw_admissible(rng, kC, n, xi, eta);
    const VarSet xi_rest = xi.without(n - 1);
    const VarSet eta_rest = eta.without(n - 1);
    const cplx xin = xi[n - 1];

    auto probe = [&](double delta) {
      const VarSet eta_probe = eta.replaced(n - 1, xin + delta);
      return delta * gtilde(xi, eta_probe, gamma, kC, GtildeMode::brute);
    };
    const cplx expect_limit = kC.value() * kernel::f(eta_rest, xin, kC) *
                              kernel::f(xin, xi_rest, kC) *
                              gtilde(xi_rest, eta_rest, gamma, kC, GtildeMode::brute);
    const double d1 = 1e-4, d2 = 1e-5;
    const cplx extrapolated = (d1 * probe(d2) - d2 * probe(d1)) / (d1 - d2);
    CHECK(rel_err(extrapolated, expect_limit) < 1e-6);
  }
}

TEST_CASE("gtilde recursion when eta_n approaches xi_n + c") {
  // Here the function has a simple pole whose strength carries the shifted
  // recursion: (eta_n - xi_n - c) gtilde_n tends to
  // -c f(xi-rest, xi_n) f(eta_n, eta-rest) gtilde_{n-1}(gamma + 1).
  Rng rng(47);
  const cplx gamma(0.3, -0.7);
  for (std::size_t n = 2; n <= 4; ++n) {
    VarSet xi, eta;
    draw_admissible(rng, kC, n, xi, eta);
    const VarSet xi_rest = xi.without(n - 1);
    const VarSet eta_rest = eta.without(n - 1);
    const cplx target = xi[n - 1] + kC.value();

    auto probe = [&](double delta) {
      const VarSet eta_probe = eta.replaced(n - 1, target + delta);
      return delta * gtilde(xi, eta_probe, gamma, kC, GtildeMode::brute);
    };
    const cplx expect_limit = -kC.value() * kernel::f(xi_rest, xi[n - 1], kC) *
                              kernel::f(target, eta_rest, kC) *
                              gtilde(xi_rest, eta_rest, gamma + cplx(1.0), kC, GtildeMode::brute);
    const double d1 = 1e-4, d2 = 1e-5;
    const cplx extrapolated = (d1 * probe(d2) - d2 * probe(d1)) / (d1 - d2);
    CHECK(rel_err(extrapolated, expect_limit) < 1e-6);
  }
}
