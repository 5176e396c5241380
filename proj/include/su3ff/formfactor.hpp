#pragma once

#include <string>

#include "su3ff/bethe.hpp"
#include "su3ff/linalg.hpp"
#include "su3ff/model.hpp"
#include "su3ff/types.hpp"

namespace su3ff {

struct FormFactorResult {
  cplx value{0.0};
  int s{0};          // operator index 1..3 (0 when not applicable)
  cplx z{0.0};       // evaluation point (inhomogeneity of site m for local operators)
  int a{0}, b{0};    // sector sizes
  double cond{1.0};  // pivot-ratio diagnostic of the determinant
  int p{-1};         // modified-row index, 1-based (off-diagonal only)
  std::string note;
  std::string state_c, state_b;  // provenance ids, filled by the CLI
};

// Transfer-matrix eigenvalue
//   tau_kappa(z) = k1 r1(z) f(u,z) + k2 f(z,u) f(v,z) + k3 r3(z) f(z,v);
// the identity twist gives the standard tau.
cplx tau(cplx z, const VarSet& u, const VarSet& v, const ModelSpec& model,
         const Twist& twist = Twist::identity());

// Analytic derivatives of tau with respect to one u or v root.
cplx tau_du(cplx z, const VarSet& u, const VarSet& v, std::size_t k, const ModelSpec& model,
            const Twist& twist = Twist::identity());
cplx tau_dv(cplx z, const VarSet& u, const VarSet& v, std::size_t k, const ModelSpec& model,
            const Twist& twist = Twist::identity());

// Scalar prefactor (-1)^a c^{a+b} f(v,u) prod_{j!=k} f(u_j,u_k) f(v_j,v_k).
cplx hab(const VarSet& u, const VarSet& v, const Coupling& c);

// The (a+b+1) x (a+b+1) bordered Jacobian: theta in the upper-left block,
// tau derivatives in the last row, Kronecker-delta column, and the explicit
// kappa_s derivative of tau_kappa in the corner.
MatrixXcd theta_ext(int s, cplx z, const ModelSpec& model, const BetheState& state);

// Squared norm of the on-shell vector, H_{a,b} det theta.
DetResult norm_squared_cond(const ModelSpec& model, const BetheState& state);
cplx norm_squared(const ModelSpec& model, const BetheState& state);

// Diagonal form factor H_{a,b} det theta_ext.
FormFactorResult ff_diagonal(int s, cplx z, const ModelSpec& model, const BetheState& state);

struct OmegaResult {
  VectorXcd values;  // length a+b
  int p;             // 0-based index of the largest magnitude component
};

// The row vector whose nonvanishing entry selects the modified row; throws
// AllZero when the two states share all roots.
OmegaResult omega(const BetheState& state_c, const BetheState& state_b, const Coupling& c);

// The (a+b) x (a+b) matrix of the off-diagonal representation with row p
// (0-based) replaced by the h-product/Y row.
MatrixXcd n_matrix_offdiag(int s, const ModelSpec& model, const BetheState& state_c,
                           const BetheState& state_b, int p);

// Off-diagonal form factor between two distinct on-shell states; p defaults
// to the largest-magnitude omega component.
FormFactorResult ff_offdiagonal(int s, cplx z, const ModelSpec& model, const BetheState& state_c,
                                const BetheState& state_b);
FormFactorResult ff_offdiagonal_row(int s, cplx z, const ModelSpec& model,
                                    const BetheState& state_c, const BetheState& state_b, int p);

struct ScalarProductResult {
  cplx value{0.0};
  double cond{1.0};
  double scale{0.0};  // magnitude reference for near-zero assertions
  std::string note;
};

// Determinant representation of the scalar product of a twisted on-shell
// state (at kappa) with a standard on-shell state; first-order accurate in
// (kappa_3/kappa_1 - 1).
ScalarProductResult scalar_product_twisted(const ModelSpec& model, const BetheState& state_c,
                                           const BetheState& state_b, const Twist& kappa);

// The unreduced scalar-product matrix (for null-vector diagnostics).
MatrixXcd scalar_product_matrix(const ModelSpec& model, const BetheState& state_c,
                                const BetheState& state_b, const Twist& kappa);

// The row-combined p-th row of the scalar-product matrix; vanishes at the
// identity twist, and its kappa_s derivative reproduces the Y row.
VectorXcd modified_row_p(const ModelSpec& model, const BetheState& state_c,
                         const BetheState& state_b, const Twist& kappa, int p);

// Total kappa_s derivative of tau_kappa at the identity twist, including the
// root motion from the twisted equations.
cplx tau_kappa_total_derivative(int s, cplx z, const ModelSpec& model, const BetheState& state);

// Matrix element of the one-site projector at site m (1-based) via the
// lattice reconstruction of local operators, for the inhomogeneous chain.
FormFactorResult ff_local(int s, int m, const ModelSpec& model, const BetheState& state_c,
                          const BetheState& state_b);

// Un-normalized transfer eigenvalue Lambda(w) = lambda_2(w) tau(w); regular
// at the inhomogeneity points.
cplx transfer_eigenvalue_unnormalized(cplx w, const VarSet& u, const VarSet& v,
                                      const ModelSpec& model);

}  // namespace su3ff
