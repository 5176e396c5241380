#include <doctest.h>

#include <numbers>

#include "su3ff/bethe.hpp"
#include "su3ff/kernel.hpp"
#include "su3ff/rng.hpp"

using namespace su3ff;

namespace {

double rel_err(cplx got, cplx want) {
  const double scale = std::max(1.0, std::abs(want));
  return std::abs(got - want) / scale;
}

const Coupling kC{cplx(1.0)};
const auto kChainL2 = ModelSpec::xxx_chain(2, VarSet{cplx(0.0), cplx(0.3)}, kC);

BetheState make_state(VarSet u, VarSet v, Twist twist = Twist::identity()) {
  BetheState st;
  st.modes = Modes::zeros(u.size(), v.size());
  st.u = std::move(u);
  st.v = std::move(v);
  st.twist = twist;
  return st;
}

}  // namespace

TEST_CASE("phi trivial structure") {
  // a=1, b=0: only the log r1 term survives
  auto st = make_state(VarSet{cplx(0.9, 0.2)}, VarSet{});
  const VectorXcd p = phi(kChainL2, st);
  CHECK(p.size() == 1);
  CHECK(rel_err(p(0), kChainL2.log_r(1, cplx(0.9, 0.2))) < 1e-14);

  // a=0, b=1 on the chain: log r3 = 0
  auto stv = make_state(VarSet{}, VarSet{cplx(0.4)});
  CHECK(std::abs(phi(kChainL2, stv)(0)) == 0.0);

  // a=1, b=1: log r1(u) - log f(v,u)
  auto stuv = make_state(VarSet{cplx(0.9, 0.2)}, VarSet{cplx(-0.8, 0.4)});
  const cplx expect = kChainL2.log_r(1, cplx(0.9, 0.2)) -
                      std::log(kernel::f(cplx(-0.8, 0.4), cplx(0.9, 0.2), kC));
  CHECK(rel_err(phi(kChainL2, stuv)(0), expect) < 1e-14);
}

TEST_CASE("closed-form root of the L=2 one-root sector") {
  // f(u,xi1) f(u,xi2) = 1 is linear after clearing denominators:
  // u = (xi1 + xi2 - c)/2 = -0.35.
  auto st = make_state(VarSet{cplx(-0.35)}, VarSet{});
  const VectorXcd r = residual(kChainL2, st);
  CHECK(std::abs(r(0)) < 1e-14);
}

TEST_CASE("mode numbers shift the residual by 2 pi i") {
  auto st = make_state(VarSet{cplx(-0.35)}, VarSet{});
  auto shifted = st;
  shifted.modes.ell[0] = 1;
  const cplx diff = residual(kChainL2, shifted)(0) - residual(kChainL2, st)(0);
  CHECK(rel_err(diff, cplx(0.0, -2.0 * std::numbers::pi)) < 1e-14);
}

TEST_CASE("hand value of the one-root Jacobian") {
  // L=2 with both inhomogeneities at zero (analytic check only) and
  // u = -1/2: theta = sum_n [1/(u+c) - 1/u] = 2 (2 + 2) = 8.
  const auto degenerate = ModelSpec::xxx_chain_unchecked(2, VarSet{cplx(0.0), cplx(0.0)}, kC);
  auto st = make_state(VarSet{cplx(-0.5)}, VarSet{});
  const MatrixXcd theta = jacobian_theta(degenerate, st);
  CHECK(rel_err(theta(0, 0), cplx(8.0)) < 1e-13);

  // a=0, b=0: empty matrix, determinant 1 by convention
  auto vac = make_state(VarSet{}, VarSet{});
  CHECK(jacobian_theta(kChainL2, vac).rows() == 0);
}

TEST_CASE("jacobian matches finite differences of phi") {
  const auto model = ModelSpec::xxx_chain(3, VarSet{cplx(0.1, 0.05), cplx(-0.2), cplx(0.35, -0.1)}, kC);
  auto st = make_state(VarSet{cplx(0.6, 0.3), cplx(-0.9, -0.2)}, VarSet{cplx(0.15, 0.7)});
  const MatrixXcd theta = jacobian_theta(model, st);
  const double eps = 1e-6;

  auto phi_at = [&](const VarSet& u, const VarSet& v) {
    auto probe = st;
    probe.u = u;
    probe.v = v;
    return phi(model, probe);
  };

  for (std::size_t k = 0; k < st.a(); ++k) {
    const VectorXcd plus = phi_at(st.u.replaced(k, st.u[k] + eps), st.v);
    const VectorXcd minus = phi_at(st.u.replaced(k, st.u[k] - eps), st.v);
    const VectorXcd fd = (plus - minus) / (2 * eps);
    for (Eigen::Index j = 0; j < theta.rows(); ++j)
      CHECK(std::abs(theta(j, static_cast<Eigen::Index>(k)) - fd(j)) <
            1e-7 * std::max(1.0, std::abs(fd(j))));
  }
  for (std::size_t k = 0; k < st.b(); ++k) {
    const VectorXcd plus = phi_at(st.u, st.v.replaced(k, st.v[k] + eps));
    const VectorXcd minus = phi_at(st.u, st.v.replaced(k, st.v[k] - eps));
    const VectorXcd fd = (plus - minus) / (2 * eps);
    for (Eigen::Index j = 0; j < theta.rows(); ++j)
      CHECK(std::abs(theta(j, static_cast<Eigen::Index>(st.a() + k)) - fd(j)) <
            1e-7 * std::max(1.0, std::abs(fd(j))));
  }
}

TEST_CASE("solver finds the closed-form root") {
  SolveOptions opts;
  opts.rng_seed = 5;
  opts.random_seeds = 16;
  const auto report = solve(kChainL2, 1, 0, Twist::identity(), {}, {}, opts);
  REQUIRE(report.states.size() == 1);
  CHECK(rel_err(report.states[0].u[0], cplx(-0.35)) < 1e-12);
  CHECK(report.states[0].on_shell);
  CHECK(report.states[0].residual_norm < 1e-12);
}

TEST_CASE("solver handles the empty sector") {
  const auto report = solve(kChainL2, 0, 0, Twist::identity(), {}, {}, SolveOptions{});
  REQUIRE(report.states.size() == 1);
  CHECK(report.states[0].on_shell);
  CHECK(report.states[0].residual_norm == 0.0);
}

TEST_CASE("twisted root solves the multiplicative equation") {
  // Twist (1, q^2, 1): f(u,xi1) f(u,xi2) = q^2, a quadratic after clearing
  // denominators; check the returned roots against it directly.
  const cplx q(1.1, 0.15);
  const Twist twist(cplx(1.0), q * q, cplx(1.0));
  SolveOptions opts;
  opts.rng_seed = 6;
  opts.random_seeds = 32;
  const auto report = solve(kChainL2, 1, 0, twist, {}, {}, opts);
  REQUIRE(report.states.size() >= 1);
  for (const auto& st : report.states) {
    const cplx u = st.u[0];
    const cplx lhs = kernel::f(u, cplx(0.0), kC) * kernel::f(u, cplx(0.3), kC);
    CHECK(rel_err(lhs, q * q) < 1e-10);
  }
  // Quadratic oracle: (u+1)(u+0.7) - q^2 u(u-0.3) = 0 expands to
  // (1-q^2) u^2 + (1.7 + 0.3 q^2) u + 0.7 = 0.
  const cplx A = 1.0 - q * q;
  const cplx b_coef = 1.7 + 0.3 * q * q;
  const cplx c_coef = 0.7;
  const cplx disc = std::sqrt(b_coef * b_coef - 4.0 * A * c_coef);
  const cplx r1 = (-b_coef + disc) / (2.0 * A);
  const cplx r2 = (-b_coef - disc) / (2.0 * A);
  for (const auto& st : report.states) {
    const cplx u = st.u[0];
    CHECK((rel_err(u, r1) < 1e-9 || rel_err(u, r2) < 1e-9));
  }
}

TEST_CASE("continuation in twist is reversible") {
  SolveOptions opts;
  opts.rng_seed = 7;
  const auto report = solve(kChainL2, 1, 0, Twist::identity(), {}, {}, opts);
  REQUIRE(report.states.size() == 1);
  const BetheState base = report.states[0];

  // zero-length path
  const BetheState same = continue_in_twist(kChainL2, base, base.twist, 4);
  CHECK(same.u[0] == base.u[0]);

  const double eps = 1e-5;
  const Twist target(cplx(1.0 + eps), cplx(1.0), cplx(1.0));
  const BetheState there = continue_in_twist(kChainL2, base, target, 2);
  CHECK(there.on_shell);
  const BetheState back = continue_in_twist(kChainL2, there, Twist::identity(), 2);
  CHECK(rel_err(back.u[0], base.u[0]) < 1e-10);
}

TEST_CASE("root derivatives match twist continuation") {
  const auto model =
      ModelSpec::xxx_chain(3, VarSet{cplx(0.07, 0.02), cplx(-0.31, 0.11), cplx(0.23, -0.05)}, kC);
  SolveOptions opts;
  opts.rng_seed = 8;
  opts.random_seeds = 48;
  const auto report = solve(model, 2, 1, Twist::identity(), {}, {}, opts);
  REQUIRE(report.states.size() >= 1);
  const BetheState base = report.states[0];
  const MatrixXcd deriv = root_derivatives_dkappa(model, base);

  // columns sum to zero across s
  for (Eigen::Index j = 0; j < deriv.rows(); ++j)
    CHECK(std::abs(deriv(j, 0) + deriv(j, 1) + deriv(j, 2)) < 1e-12);

  const double eps = 1e-6;
  for (int s = 1; s <= 3; ++s) {
    auto bump = [&](double sign) {
      const cplx k1 = (s == 1) ? cplx(1.0 + sign * eps) : cplx(1.0);
      const cplx k2 = (s == 2) ? cplx(1.0 + sign * eps) : cplx(1.0);
      const cplx k3 = (s == 3) ? cplx(1.0 + sign * eps) : cplx(1.0);
      return continue_in_twist(model, base, Twist(k1, k2, k3), 1);
    };
    const BetheState plus = bump(1.0), minus = bump(-1.0);
    for (std::size_t j = 0; j < base.a(); ++j) {
      const cplx fd = (plus.u[j] - minus.u[j]) / (2 * eps);
      CHECK(std::abs(fd - deriv(static_cast<Eigen::Index>(j), s - 1)) < 1e-5);
    }
    for (std::size_t j = 0; j < base.b(); ++j) {
      const cplx fd = (plus.v[j] - minus.v[j]) / (2 * eps);
      CHECK(std::abs(fd - deriv(static_cast<Eigen::Index>(base.a() + j), s - 1)) < 1e-5);
    }
  }
}

TEST_CASE("exp of residual reproduces the multiplicative equations") {
  const auto model =
      ModelSpec::xxx_chain(3, VarSet{cplx(0.07, 0.02), cplx(-0.31, 0.11), cplx(0.23, -0.05)}, kC);
  SolveOptions opts;
  opts.rng_seed = 9;
  opts.random_seeds = 48;
  const auto report = solve(model, 2, 1, Twist::identity(), {}, {}, opts);
  REQUIRE(report.states.size() >= 1);
  for (const auto& st : report.states) {
    for (std::size_t j = 0; j < st.a(); ++j) {
      const VarSet u_rest = st.u.without(j);
      const cplx lhs = model.r(1, st.u[j]);
      const cplx rhs = kernel::f(st.u[j], u_rest, kC) / kernel::f(u_rest, st.u[j], kC) *
                       kernel::f(st.v, st.u[j], kC);
      CHECK(rel_err(lhs, rhs) < 1e-11);
    }
    for (std::size_t j = 0; j < st.b(); ++j) {
      const VarSet v_rest = st.v.without(j);
      const cplx lhs = model.r(3, st.v[j]);
      const cplx rhs = kernel::f(v_rest, st.v[j], kC) / kernel::f(st.v[j], v_rest, kC) *
                       kernel::f(st.v[j], st.u, kC);
      CHECK(rel_err(lhs, rhs) < 1e-11);
    }
  }
}

TEST_CASE("theta determinant is invariant under root relabeling") {
  const auto model =
      ModelSpec::xxx_chain(4, VarSet{cplx(0.1), cplx(-0.2, 0.1), cplx(0.3, -0.2), cplx(-0.05, 0.25)}, kC);
  SolveOptions opts;
  opts.rng_seed = 10;
  opts.random_seeds = 64;
  const auto report = solve(model, 2, 1, Twist::identity(), {}, {}, opts);
  REQUIRE(report.states.size() >= 1);
  const BetheState& st = report.states[0];
  BetheState swapped = st;
  swapped.u = VarSet{st.u[1], st.u[0]};
  const cplx d1 = jacobian_theta(model, st).determinant();
  const cplx d2 = jacobian_theta(model, swapped).determinant();
  CHECK(rel_err(d1, d2) < 1e-10);
}

TEST_CASE("admissibility filter reports collisions") {
  auto st = make_state(VarSet{cplx(0.5), cplx(0.5) + cplx(1e-12)}, VarSet{});
  CHECK(!admissibility_reason(st, kC).empty());
  auto st2 = make_state(VarSet{cplx(0.5)}, VarSet{cplx(0.5) + kC.value()});
  CHECK(!admissibility_reason(st2, kC).empty());
  auto ok = make_state(VarSet{cplx(0.5)}, VarSet{cplx(-0.4, 0.8)});
  CHECK(admissibility_reason(ok, kC).empty());
}
