#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <limits>

#include "su3ff/types.hpp"

namespace su3ff {

using Eigen::MatrixXcd;
using Eigen::VectorXcd;

// Pivot magnitude ratio above which a determinant is flagged ill-conditioned.
inline constexpr double kCondFlagThreshold = 1e12;

struct DetResult {
  cplx value{1.0};
  double cond{1.0};  // ratio of largest to smallest LU pivot magnitude
  bool ill_conditioned() const { return cond > kCondFlagThreshold; }
};

// Determinant via LU with partial pivoting, with the pivot-ratio diagnostic.
// The 0x0 determinant is 1 by convention.
inline DetResult det_lu(const MatrixXcd& m) {
  DetResult out;
  const auto n = m.rows();
  if (n == 0) return out;
  Eigen::PartialPivLU<MatrixXcd> lu(m);
  out.value = lu.determinant();
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  const auto diag = lu.matrixLU().diagonal();
  for (Eigen::Index i = 0; i < n; ++i) {
    const double p = std::abs(diag(i));
    lo = std::min(lo, p);
    hi = std::max(hi, p);
  }
  out.cond = (lo > 0.0) ? hi / lo : std::numeric_limits<double>::infinity();
  return out;
}

// Solve A x = b, throwing SingularJacobian when A has no usable inverse.
inline VectorXcd solve_checked(const MatrixXcd& A, const VectorXcd& b, const char* what) {
  if (A.rows() == 0) return VectorXcd(0);
  Eigen::FullPivLU<MatrixXcd> lu(A);
  if (!lu.isInvertible()) throw SingularJacobian(std::string(what) + ": matrix is singular");
  return lu.solve(b);
}

inline MatrixXcd inverse_checked(const MatrixXcd& A, const char* what) {
  if (A.rows() == 0) return MatrixXcd(0, 0);
  Eigen::FullPivLU<MatrixXcd> lu(A);
  if (!lu.isInvertible()) throw SingularJacobian(std::string(what) + ": matrix is singular");
  return lu.inverse();
}

}  // namespace su3ff
