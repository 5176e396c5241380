#include "su3ff/bethe.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "su3ff/kernel.hpp"
#include "su3ff/rng.hpp"

namespace su3ff {

namespace {

constexpr cplx kTwoPiI{0.0, 2.0 * std::numbers::pi};

void check_modes(const BetheState& state) {
  if (state.modes.ell.size() != state.a() || state.modes.m.size() != state.b())
    throw SizeMismatch("mode number lists must match the root cardinalities");
}

VectorXcd rhs_constants(const BetheState& state) {
  const auto a = state.a();
  const auto b = state.b();
  VectorXcd out(static_cast<Eigen::Index>(a + b));
  const cplx lk1 = std::log(state.twist.k1());
  const cplx lk2 = std::log(state.twist.k2());
  const cplx lk3 = std::log(state.twist.k3());
  for (std::size_t j = 0; j < a; ++j)
    out(static_cast<Eigen::Index>(j)) =
        lk2 - lk1 + kTwoPiI * static_cast<double>(state.modes.ell[j]);
  for (std::size_t j = 0; j < b; ++j)
    out(static_cast<Eigen::Index>(a + j)) =
        lk2 - lk3 + kTwoPiI * static_cast<double>(state.modes.m[j]);
  return out;
}

}  // namespace

VectorXcd phi(const ModelSpec& model, const BetheState& state) {
  const auto& c = model.coupling();
  const auto a = state.a();
  const auto b = state.b();
  VectorXcd out(static_cast<Eigen::Index>(a + b));
  for (std::size_t j = 0; j < a; ++j) {
    const cplx uj = state.u[j];
    cplx value = model.log_r(1, uj);
    for (std::size_t k = 0; k < a; ++k) {
      if (k == j) continue;
      value -= std::log(kernel::f(uj, state.u[k], c));
      value += std::log(kernel::f(state.u[k], uj, c));
    }
    value -= kernel::logf_sum(state.v, uj, c);
    out(static_cast<Eigen::Index>(j)) = value;
  }
  for (std::size_t j = 0; j < b; ++j) {
    const cplx vj = state.v[j];
    cplx value = model.log_r(3, vj);
    for (std::size_t k = 0; k < b; ++k) {
      if (k == j) continue;
      value -= std::log(kernel::f(state.v[k], vj, c));
      value += std::log(kernel::f(vj, state.v[k], c));
    }
    value -= kernel::logf_sum(vj, state.u, c);
    out(static_cast<Eigen::Index>(a + j)) = value;
  }
  return out;
}

VectorXcd residual(const ModelSpec& model, const BetheState& state) {
  check_modes(state);
  return phi(model, state) - rhs_constants(state);
}

MatrixXcd jacobian_theta(const ModelSpec& model, const BetheState& state) {
  const auto& c = model.coupling();
  const auto a = state.a();
  const auto b = state.b();
  const auto n = static_cast<Eigen::Index>(a + b);
  MatrixXcd theta = MatrixXcd::Zero(n, n);
  auto D = [&](cplx x, cplx y) { return kernel::dlogf(x, y, c); };

  for (std::size_t j = 0; j < a; ++j) {
    const cplx uj = state.u[j];
    cplx diag = model.dlog_r(1, uj);
    for (std::size_t k = 0; k < a; ++k) {
      if (k == j) continue;
      const cplx pair = D(uj, state.u[k]) + D(state.u[k], uj);
      diag -= pair;
      theta(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) = pair;
    }
    for (std::size_t m = 0; m < b; ++m) {
      diag += D(state.v[m], uj);
      theta(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(a + m)) =
          -D(state.v[m], uj);
    }
    theta(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j)) = diag;
  }

  for (std::size_t j = 0; j < b; ++j) {
    const cplx vj = state.v[j];
    cplx diag = model.dlog_r(3, vj);
    for (std::size_t k = 0; k < b; ++k) {
      if (k == j) continue;
      const cplx pair = D(state.v[k], vj) + D(vj, state.v[k]);
      diag += pair;
      theta(static_cast<Eigen::Index>(a + j), static_cast<Eigen::Index>(a + k)) = -pair;
    }
    for (std::size_t l = 0; l < a; ++l) {
      diag -= D(vj, state.u[l]);
      theta(static_cast<Eigen::Index>(a + j), static_cast<Eigen::Index>(l)) = D(vj, state.u[l]);
    }
    theta(static_cast<Eigen::Index>(a + j), static_cast<Eigen::Index>(a + j)) = diag;
  }
  return theta;
}

std::string admissibility_reason(const BetheState& state, const Coupling& c) {
  std::size_t i = 0, j = 0;
  if (!pairwise_distinct(state.u, c.dist_eps(), &i, &j)) {
    std::ostringstream os;
    os << "coincident u roots at positions " << i << ", " << j;
    return os.str();
  }
  if (!pairwise_distinct(state.v, c.dist_eps(), &i, &j)) {
    std::ostringstream os;
    os << "coincident v roots at positions " << i << ", " << j;
    return os.str();
  }
  for (std::size_t l = 0; l < state.a(); ++l)
    for (std::size_t m = 0; m < state.b(); ++m) {
      const cplx d = state.v[m] - state.u[l];
      for (const cplx shift : {cplx(0.0), c.value(), -c.value()}) {
        if (std::abs(d - shift) < c.pole_eps()) {
          std::ostringstream os;
          os << "u-v collision: v[" << m << "] - u[" << l << "] = " << to_string(d)
             << " hits a kernel degeneracy";
          return os.str();
        }
      }
    }
  return {};
}

namespace {

double residual_norm_or_inf(const ModelSpec& model, const BetheState& state) {
  try {
    const VectorXcd r = residual(model, state);
    return (r.size() == 0) ? 0.0 : r.cwiseAbs().maxCoeff();
  } catch (const Error&) {
    return std::numeric_limits<double>::infinity();
  }
}

void write_roots(BetheState& state, const VectorXcd& x) {
  std::vector<cplx> u(state.a()), v(state.b());
  for (std::size_t j = 0; j < state.a(); ++j) u[j] = x(static_cast<Eigen::Index>(j));
  for (std::size_t j = 0; j < state.b(); ++j)
    v[j] = x(static_cast<Eigen::Index>(state.a() + j));
  state.u = VarSet(std::move(u));
  state.v = VarSet(std::move(v));
}

VectorXcd read_roots(const BetheState& state) {
  VectorXcd x(static_cast<Eigen::Index>(state.a() + state.b()));
  for (std::size_t j = 0; j < state.a(); ++j) x(static_cast<Eigen::Index>(j)) = state.u[j];
  for (std::size_t j = 0; j < state.b(); ++j)
    x(static_cast<Eigen::Index>(state.a() + j)) = state.v[j];
  return x;
}

// Newton iteration with step halving; returns the failure reason or empty.
std::string newton(const ModelSpec& model, BetheState& state, const SolveOptions& opts) {
  if (state.a() + state.b() == 0) {
    state.residual_norm = 0.0;
    state.on_shell = true;
    return {};
  }
  double norm = residual_norm_or_inf(model, state);
  if (!std::isfinite(norm)) return "seed starts on a kernel singularity";
  for (int iter = 0; iter < opts.max_iter; ++iter) {
    if (norm < opts.tol) {
      state.residual_norm = norm;
      state.on_shell = true;
      return {};
    }
    VectorXcd res;
    MatrixXcd theta;
    try {
      res = residual(model, state);
      theta = jacobian_theta(model, state);
    } catch (const Error& e) {
      return std::string("evaluation failed: ") + e.what();
    }
    VectorXcd step;
    try {
      step = solve_checked(theta, (-res).eval(), "newton step");
    } catch (const SingularJacobian& e) {
      return e.what();
    }
    const VectorXcd x0 = read_roots(state);
    double scale = 1.0;
    bool improved = false;
    for (int halving = 0; halving <= opts.max_halvings; ++halving) {
      BetheState trial = state;
      write_roots(trial, x0 + scale * step);
      const double trial_norm = residual_norm_or_inf(model, trial);
      if (trial_norm < norm) {
        state = trial;
        norm = trial_norm;
        improved = true;
        break;
      }
      scale *= 0.5;
    }
    if (!improved) return "damped step failed to reduce the residual";
  }
  if (norm < opts.tol) {
    state.residual_norm = norm;
    state.on_shell = true;
    return {};
  }
  std::ostringstream os;
  os << "no convergence after " << opts.max_iter << " iterations (residual " << norm << ")";
  return os.str();
}

bool same_state_roots(const BetheState& x, const BetheState& y, double tol) {
  return same_multiset(x.u, y.u, tol) && same_multiset(x.v, y.v, tol);
}

}  // namespace

std::vector<std::pair<VarSet, VarSet>> random_seeds(std::size_t a, std::size_t b,
                                                    const Coupling& c, std::uint64_t rng_seed,
                                                    int count) {
  Rng rng(rng_seed);
  const double scale = std::abs(c.value());
  std::vector<std::pair<VarSet, VarSet>> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    std::vector<cplx> u(a), v(b);
    for (auto& x : u) x = scale * rng.complex_normal();
    for (auto& x : v) x = scale * rng.complex_normal();
    out.emplace_back(VarSet(std::move(u)), VarSet(std::move(v)));
  }
  return out;
}

SolveReport solve(const ModelSpec& model, std::size_t a, std::size_t b, const Twist& twist,
                  const Modes& modes, const std::vector<std::pair<VarSet, VarSet>>& seeds,
                  const SolveOptions& opts) {
  Modes effective = modes;
  if (effective.ell.empty() && a > 0) effective.ell.assign(a, 0);
  if (effective.m.empty() && b > 0) effective.m.assign(b, 0);
  if (effective.ell.size() != a || effective.m.size() != b)
    throw SizeMismatch("mode number lists must match the sector sizes");

  std::vector<std::pair<VarSet, VarSet>> all_seeds = seeds;
  if (opts.random_seeds > 0) {
    auto extra = random_seeds(a, b, model.coupling(), opts.rng_seed, opts.random_seeds);
    all_seeds.insert(all_seeds.end(), extra.begin(), extra.end());
  }
  if (a + b == 0 && all_seeds.empty()) all_seeds.emplace_back(VarSet{}, VarSet{});

  SolveReport report;
  for (const auto& [su, sv] : all_seeds) {
    if (su.size() != a || sv.size() != b)
      throw SizeMismatch("seed cardinalities must match the sector sizes");
    BetheState state{su, sv, twist, effective, 0.0, false};
    const std::string failure = newton(model, state, opts);
    if (!failure.empty()) {
      report.failed.push_back(FailedSeed{su, sv, failure});
      continue;
    }
    const std::string reject = admissibility_reason(state, model.coupling());
    if (!reject.empty()) {
      report.rejected.push_back(RejectedState{state, reject});
      continue;
    }
    bool duplicate = false;
    for (const auto& existing : report.states)
      if (same_state_roots(existing, state, opts.dedup_tol)) {
        duplicate = true;
        break;
      }
    if (!duplicate) report.states.push_back(std::move(state));
  }
  return report;
}

BetheState continue_in_twist(const ModelSpec& model, const BetheState& state, const Twist& target,
                             int steps, const SolveOptions& opts) {
  if (!state.on_shell) throw Error("continue_in_twist requires an on-shell state");
  if (state.twist == target) return state;
  if (steps < 1) throw Error("continue_in_twist requires at least one step");

  BetheState current = state;
  for (int i = 1; i <= steps; ++i) {
    const double tfrac = static_cast<double>(i) / steps;
    const Twist kappa(state.twist.k1() + tfrac * (target.k1() - state.twist.k1()),
                      state.twist.k2() + tfrac * (target.k2() - state.twist.k2()),
                      state.twist.k3() + tfrac * (target.k3() - state.twist.k3()));
    current.twist = kappa;
    current.on_shell = false;
    const std::string failure = newton(model, current, opts);
    if (!failure.empty()) {
      std::ostringstream os;
      os << "twist continuation failed at step " << i << " of " << steps << ": " << failure;
      throw NoConvergence(os.str());
    }
  }
  return current;
}

MatrixXcd root_derivatives_dkappa(const ModelSpec& model, const BetheState& state) {
  if (!state.on_shell) throw Error("root derivatives require an on-shell state");
  if (!state.twist.is_identity(1e-14))
    throw Error("root derivatives are defined at the identity twist");
  const auto n = static_cast<Eigen::Index>(state.a() + state.b());
  const MatrixXcd theta = jacobian_theta(model, state);
  Eigen::FullPivLU<MatrixXcd> lu(theta);
  if (n > 0 && !lu.isInvertible())
    throw SingularJacobian("root_derivatives_dkappa: theta is singular");
  MatrixXcd out(n, 3);
  for (int s = 1; s <= 3; ++s) {
    VectorXcd rhs(n);
    const double du = (s == 2 ? 1.0 : 0.0) - (s == 1 ? 1.0 : 0.0);
    const double dv = (s == 2 ? 1.0 : 0.0) - (s == 3 ? 1.0 : 0.0);
    for (std::size_t j = 0; j < state.a(); ++j) rhs(static_cast<Eigen::Index>(j)) = du;
    for (std::size_t j = 0; j < state.b(); ++j)
      rhs(static_cast<Eigen::Index>(state.a() + j)) = dv;
    out.col(s - 1) = (n > 0) ? lu.solve(rhs).eval() : VectorXcd(0);
  }
  return out;
}

}  // namespace su3ff
