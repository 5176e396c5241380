#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "su3ff/bethe.hpp"
#include "su3ff/linalg.hpp"
#include "su3ff/model.hpp"
#include "su3ff/types.hpp"

namespace su3ff {

inline constexpr int kLatticeMax = 6;

// Weight sector of the 3^L-dimensional quantum space with site-symbol
// occupancies (N1, N2, N3) = (L-a, a-b, b); basis strings are enumerated in
// increasing full-space index order (site 1 is the most significant digit).
class SectorBasis {
 public:
  SectorBasis(int length, int a, int b);

  int length() const { return length_; }
  int a() const { return a_; }
  int b() const { return b_; }
  std::size_t dim() const { return indices_.size(); }
  const std::vector<std::size_t>& full_indices() const { return indices_; }

  // Symbol (1..3) at site m (1-based) of sector basis state i.
  int symbol_at(std::size_t i, int m) const;

  MatrixXcd restrict_full(const MatrixXcd& full) const;
  // Largest magnitude of a matrix element leaking out of the sector.
  double leakage(const MatrixXcd& full) const;

 private:
  int length_, a_, b_;
  std::vector<std::size_t> indices_;
};

// Operator-valued monodromy matrix of the inhomogeneous chain, built from
// the ordered product of polynomial-normalized Lax operators
// R'(x,y) = (x-y) I + c P over sites L..1 (site 1 applied first).
class Monodromy {
 public:
  explicit Monodromy(const ModelSpec& chain_model, int lattice_max = kLatticeMax);

  int length() const { return length_; }
  std::size_t dim() const { return dim_; }
  const ModelSpec& model() const { return model_; }

  // All nine blocks T'_{ij}(w) on the full space; i, j in 1..3.
  std::array<std::array<MatrixXcd, 3>, 3> blocks(cplx w) const;
  MatrixXcd entry(int i, int j, cplx w) const;

  // Sum_s kappa_s T'_{ss}(w), optionally normalized by lambda_2(w).
  MatrixXcd transfer(cplx w, const Twist& twist, bool normalized) const;

 private:
  ModelSpec model_;
  int length_;
  std::size_t dim_;
};

MatrixXcd sector_transfer(const Monodromy& mono, cplx w, const Twist& twist,
                          const SectorBasis& sector, bool normalized = true);

// An eigenpair of the sector transfer matrix matched to a Bethe state by its
// eigenvalue at the probe points. Left and right vectors are biorthonormal
// under the bilinear (transpose, no conjugation) pairing.
struct MatchedState {
  VectorXcd left;
  VectorXcd right;
  cplx eigenvalue;
  int index;
  std::vector<cplx> probes;
};

std::vector<cplx> default_probes(const ModelSpec& model, std::uint64_t seed, int count);

MatchedState match_state(const Monodromy& mono, const BetheState& state,
                         const SectorBasis& sector, std::vector<cplx> probes);

// Bilinear matrix elements; all eigenvector scale factors cancel in the
// ratios below.
cplx bilinear(const VectorXcd& left, const MatrixXcd& op, const VectorXcd& right);

// <L| T'_ss(z)/lambda_2(z) |R> / <L|R> for one matched state.
cplx ratio_diag(int s, cplx z, const Monodromy& mono, const MatchedState& matched,
                const SectorBasis& sector);

// Normalization-free cross ratio between two matched states:
//   [<L_C| T^_ss(z) |R_B> <L_B| T^_s's'(z') |R_C>] / [<L_C|R_C> <L_B|R_B>].
cplx ratio_offdiag(int s, int sp, cplx z, cplx zp, const Monodromy& mono,
                   const MatchedState& mc, const MatchedState& mb, const SectorBasis& sector);

// One-site projector E^{ss} at site m (1-based), restricted to the sector.
MatrixXcd local_op(int s, int m, const SectorBasis& sector);

// Cross ratios with the local projectors instead of monodromy entries.
cplx local_ratio_diag(int s, int m, const MatchedState& matched, const SectorBasis& sector);
cplx local_ratio_offdiag(int s, int sp, int m, int mp, const MatchedState& mc,
                         const MatchedState& mb, const SectorBasis& sector);

}  // namespace su3ff
