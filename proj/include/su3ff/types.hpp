#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "su3ff/errors.hpp"

namespace su3ff {

using cplx = std::complex<double>;

std::string to_string(cplx z);

// Relative guard for denominator underflow in the rational kernels.
inline constexpr double kPoleEpsBase = 1e-12;
// Distinctness tolerance for rapidity sets; roots closer than this make
// every determinant formula ill-conditioned.
inline constexpr double kDistEpsBase = 1e-10;

// The R-matrix constant c.
class Coupling {
 public:
  explicit Coupling(cplx c) : c_(c) {
    if (c == cplx(0.0)) throw ConstructionError("coupling constant c must be nonzero");
  }

  cplx value() const { return c_; }
  double pole_eps() const { return kPoleEpsBase * std::max(1.0, std::abs(c_)); }
  double dist_eps() const { return kDistEpsBase * std::max(1.0, std::abs(c_)); }

 private:
  cplx c_;
};

// An ordered set of complex rapidities ("bar" set). Empty sets are valid and
// all product conventions treat them as empty products.
class VarSet {
 public:
  VarSet() = default;
  explicit VarSet(std::vector<cplx> elems) : elems_(std::move(elems)) {}
  VarSet(std::initializer_list<cplx> elems) : elems_(elems) {}

  std::size_t size() const { return elems_.size(); }
  bool empty() const { return elems_.empty(); }
  const cplx& operator[](std::size_t i) const { return elems_[i]; }
  const std::vector<cplx>& elems() const { return elems_; }

  auto begin() const { return elems_.begin(); }
  auto end() const { return elems_.end(); }

  // The set with element i removed (the "bar x_i" convention).
  VarSet without(std::size_t i) const {
    std::vector<cplx> out;
    out.reserve(elems_.size() - 1);
    for (std::size_t k = 0; k < elems_.size(); ++k)
      if (k != i) out.push_back(elems_[k]);
    return VarSet(std::move(out));
  }

  // Elementwise shift: the "x̄ + c" convention.
  VarSet shifted(cplx delta) const {
    std::vector<cplx> out(elems_);
    for (auto& x : out) x += delta;
    return VarSet(std::move(out));
  }

  VarSet replaced(std::size_t i, cplx value) const {
    std::vector<cplx> out(elems_);
    out[i] = value;
    return VarSet(std::move(out));
  }

  void push_back(cplx x) { elems_.push_back(x); }

 private:
  std::vector<cplx> elems_;
};

// Returns false and reports the first offending pair if two elements are
// closer than eps.
bool pairwise_distinct(const VarSet& xs, double eps, std::size_t* i = nullptr,
                       std::size_t* j = nullptr);

// Throws PoleError if the set has near-coincident elements.
void require_distinct(const VarSet& xs, const Coupling& c, const char* what);

// Diagonal twist parameters (kappa_1, kappa_2, kappa_3).
class Twist {
 public:
  Twist() = default;  // identity
  Twist(cplx k1, cplx k2, cplx k3) : k_{k1, k2, k3} {
    for (auto k : k_)
      if (k == cplx(0.0)) throw ConstructionError("twist components must be nonzero");
  }

  static Twist identity() { return Twist(); }

  cplx k1() const { return k_[0]; }
  cplx k2() const { return k_[1]; }
  cplx k3() const { return k_[2]; }
  // s in 1..3
  cplx component(int s) const { return k_[static_cast<std::size_t>(s - 1)]; }

  bool is_identity(double eps = 0.0) const {
    for (auto k : k_)
      if (std::abs(k - cplx(1.0)) > eps) return false;
    return true;
  }

  bool operator==(const Twist& o) const { return k_ == o.k_; }

 private:
  std::array<cplx, 3> k_{cplx(1.0), cplx(1.0), cplx(1.0)};
};

// Multiset comparison with tolerance: greedy matching of closest elements.
bool same_multiset(const VarSet& a, const VarSet& b, double tol);

}  // namespace su3ff
