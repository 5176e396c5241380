#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "su3ff/linalg.hpp"
#include "su3ff/model.hpp"
#include "su3ff/types.hpp"

namespace su3ff {

// Branch integers of the logarithmic Bethe equations, one per root.
struct Modes {
  std::vector<long> ell;  // size a
  std::vector<long> m;    // size b

  static Modes zeros(std::size_t a, std::size_t b) {
    return Modes{std::vector<long>(a, 0), std::vector<long>(b, 0)};
  }
};

// A candidate or converged solution of the (twisted) nested Bethe equations.
struct BetheState {
  VarSet u;
  VarSet v;
  Twist twist;
  Modes modes;
  double residual_norm{0.0};
  bool on_shell{false};

  std::size_t a() const { return u.size(); }
  std::size_t b() const { return v.size(); }
};

// Logarithmic form of the equations, principal branch per factor:
//   Phi_j     = log r1(u_j) - sum_{k≠j} [log f(u_j,u_k) - log f(u_k,u_j)]
//               - sum_m log f(v_m, u_j)
//   Phi_{a+j} = log r3(v_j) - sum_{k≠j} [log f(v_k,v_j) - log f(v_j,v_k)]
//               - sum_l log f(v_j, u_l)
VectorXcd phi(const ModelSpec& model, const BetheState& state);

// Phi_j minus the twist constants and mode terms; zero exactly on shell.
VectorXcd residual(const ModelSpec& model, const BetheState& state);

// Analytic Jacobian d Phi / d(u, v) in the block order (u_1..u_a, v_1..v_b).
MatrixXcd jacobian_theta(const ModelSpec& model, const BetheState& state);

struct SolveOptions {
  double tol = 1e-12;          // on-shell residual max-norm
  int max_iter = 50;
  int max_halvings = 8;        // Newton step damping
  double dedup_tol = 1e-8;     // multiset equality of root sets
  std::uint64_t rng_seed = 1;
  int random_seeds = 32;       // appended to any explicit seeds
};

struct RejectedState {
  BetheState state;
  std::string reason;
};

struct FailedSeed {
  VarSet u, v;
  std::string reason;
};

struct SolveReport {
  std::vector<BetheState> states;
  std::vector<RejectedState> rejected;
  std::vector<FailedSeed> failed;
};

// Gaussian seeds scaled by |c|.
std::vector<std::pair<VarSet, VarSet>> random_seeds(std::size_t a, std::size_t b,
                                                    const Coupling& c, std::uint64_t rng_seed,
                                                    int count);

// Newton iteration on the residual from every seed, followed by the
// admissibility filter and deduplication. Non-converged seeds and rejected
// solutions are reported, not dropped.
SolveReport solve(const ModelSpec& model, std::size_t a, std::size_t b, const Twist& twist,
                  const Modes& modes, const std::vector<std::pair<VarSet, VarSet>>& seeds,
                  const SolveOptions& opts = {});

// Path-follow the root set to the target twist in `steps` Newton-corrected
// increments, preserving mode numbers.
BetheState continue_in_twist(const ModelSpec& model, const BetheState& state, const Twist& target,
                             int steps, const SolveOptions& opts = {});

// d(u,v)/d kappa_s at the identity twist, one column per s = 1,2,3, from the
// linear system theta . dx = rhs^(s).
MatrixXcd root_derivatives_dkappa(const ModelSpec& model, const BetheState& state);

// The admissibility filter applied by solve(); empty string means admissible.
std::string admissibility_reason(const BetheState& state, const Coupling& c);

}  // namespace su3ff
