#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "su3ff/types.hpp"

namespace su3ff {

// A rational function described by its zero and pole lists plus an overall
// scale. Derivatives of the logarithm are computed analytically from the
// root lists.
struct RationalFn {
  std::vector<cplx> zeros;
  std::vector<cplx> poles;
  cplx scale{1.0};

  static RationalFn one() { return RationalFn{}; }

  cplx eval(cplx w, const Coupling& c) const;
  // Sum of principal logs over factors; ZeroArgument at a zero, PoleError at
  // a pole.
  cplx log_eval(cplx w, const Coupling& c) const;
  cplx dlog(cplx w, const Coupling& c) const;
};

// Functional data of the generalized model: the ratios r1 = λ1/λ2 and
// r3 = λ3/λ2 plus the normalization λ2 itself, either as free rational
// descriptors or instantiated for the inhomogeneous SU(3)-invariant XXX
// chain with the polynomial-normalized Lax operator
//   R'(x,y) = (x-y) I + c P,
// for which λ1(w) = Π_n (w - ξ_n + c), λ2 = λ3 = Π_n (w - ξ_n), so that
// r1(w) = Π_n f(w, ξ_n) and r3(w) = 1.
class ModelSpec {
 public:
  struct XXXChain {
    int length;
    VarSet xi;
  };
  struct GenericRational {
    RationalFn r1, r3, lambda2;
  };

  static ModelSpec xxx_chain(int length, VarSet xi, Coupling c);
  // Skips the distinctness check; only for analytic spot checks that need
  // exactly coincident inhomogeneities.
  static ModelSpec xxx_chain_unchecked(int length, VarSet xi, Coupling c);
  // Homogeneous chain represented with split inhomogeneities ξ_n = n·split
  // so the lattice reconstruction operations stay regular.
  static ModelSpec xxx_chain_split_homogeneous(int length, Coupling c, double split = 1e-3);
  static ModelSpec generic(RationalFn r1, RationalFn r3, RationalFn lambda2, Coupling c);

  const Coupling& coupling() const { return c_; }
  bool is_chain() const { return std::holds_alternative<XXXChain>(data_); }
  const XXXChain& chain() const;
  const GenericRational& rational() const;

  // which in {1, 3}
  cplx r(int which, cplx w) const;
  cplx log_r(int which, cplx w) const;
  cplx dlog_r(int which, cplx w) const;

  // Vacuum eigenvalues λ_j, j in {1,2,3}; for the generic variant
  // λ1 = r1 λ2, λ3 = r3 λ2.
  cplx lambda(int j, cplx w) const;

 private:
  ModelSpec(std::variant<XXXChain, GenericRational> data, Coupling c)
      : data_(std::move(data)), c_(c) {}

  std::variant<XXXChain, GenericRational> data_;
  Coupling c_;
};

}  // namespace su3ff
