#pragma once

#include <cstdint>
#include <vector>

#include "su3ff/types.hpp"

namespace su3ff {

// One term of the double partition sum: bit k set in a mask places element k
// of the corresponding set into subset I. Both subsets I must have equal
// cardinality.
struct PartitionPair {
  std::uint32_t xi_mask{};
  std::uint32_t eta_mask{};

  static PartitionPair make(std::uint32_t xi_mask, std::uint32_t eta_mask);
  int cardinality_first() const;
};

// All partition pairs of two n-element sets with equal subset-I cardinality;
// sum over k of C(n,k)^2 entries.
std::vector<PartitionPair> partition_pairs(std::size_t n);

inline constexpr std::size_t kPartitionSumCap = 8;

// Double partition sum
//   G_n(ζ) = Σ ζ^{n_II} f(ξ̄_I, ξ̄_II) f(η̄_II, η̄_I) K_{n_I}(η̄_I | ξ̄_I)
//            K_{n_II}(ξ̄_II + c | η̄_II)
// evaluated term by term over all partitions of both sets.
cplx gsum_brute(const VarSet& xi, const VarSet& eta, cplx zeta, const Coupling& c,
                std::size_t size_cap = kPartitionSumCap);

// The same function as a single sum over partitions of ξ̄ only:
//   G_n(ζ) = Σ ζ^{n_II} (-1)^{n_I} f(ξ̄_I, ξ̄_II) f(η̄, ξ̄_I)
//            K_n({ξ̄_I - c, ξ̄_II + c} | η̄).
cplx gsum_single(const VarSet& xi, const VarSet& eta, cplx zeta, const Coupling& c,
                 std::size_t size_cap = kPartitionSumCap);

// Closed form valid up to O((ζ-1)^2), exact at ζ = 1:
//   (-1)^n ζ^{Σ(η_i-ξ_i)/c} t(ξ̄,η̄) h(η̄,η̄) h(ξ̄,ξ̄).
// The power uses the principal branch; *branch_note is set when that choice
// is nontrivial.
cplx gsum_first_order(const VarSet& xi, const VarSet& eta, cplx zeta, const Coupling& c,
                      bool* branch_note = nullptr);

enum class GtildeMode { brute, closed };

// The γ-weighted sum γ G_n(1) + dG_n/dζ|_{ζ=1}:
//   brute:  Σ (γ + n_II) f(ξ̄_I,ξ̄_II) f(η̄_II,η̄_I) K_{n_I} K_{n_II}
//   closed: (-1)^n t(ξ̄,η̄) h(η̄,η̄) h(ξ̄,ξ̄) (γ + Σ (η_i - ξ_i)/c)
cplx gtilde(const VarSet& xi, const VarSet& eta, cplx gamma, const Coupling& c, GtildeMode mode,
            std::size_t size_cap = kPartitionSumCap);

}  // namespace su3ff
