#include "su3ff/oracle.hpp"

#include <cmath>
#include <sstream>

#include "su3ff/formfactor.hpp"
#include "su3ff/kernel.hpp"
#include "su3ff/rng.hpp"

namespace su3ff {

namespace {

std::size_t pow3(int n) {
  std::size_t out = 1;
  for (int i = 0; i < n; ++i) out *= 3;
  return out;
}

// Digit (0..2) of full index r at site m, 1-based, site 1 most significant.
int digit_at(std::size_t r, int m, int length) {
  return static_cast<int>((r / pow3(length - m)) % 3);
}

}  // namespace

SectorBasis::SectorBasis(int length, int a, int b) : length_(length), a_(a), b_(b) {
  if (length < 1 || length > kLatticeMax)
    throw SizeLimit("sector basis: lattice length outside 1..6");
  if (a < 0 || b < 0 || a > length || b > a) {
    std::ostringstream os;
    os << "sector (a,b) = (" << a << "," << b << ") invalid for L = " << length
       << "; requires 0 <= b <= a <= L";
    throw ConstructionError(os.str());
  }
  const int n1 = length - a, n2 = a - b, n3 = b;
  const std::size_t dim = pow3(length);
  for (std::size_t r = 0; r < dim; ++r) {
    int count[3] = {0, 0, 0};
    for (int m = 1; m <= length; ++m) ++count[digit_at(r, m, length)];
    if (count[0] == n1 && count[1] == n2 && count[2] == n3) indices_.push_back(r);
  }
}

int SectorBasis::symbol_at(std::size_t i, int m) const {
  return digit_at(indices_.at(i), m, length_) + 1;
}

MatrixXcd SectorBasis::restrict_full(const MatrixXcd& full) const {
  const auto n = static_cast<Eigen::Index>(dim());
  MatrixXcd out(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      out(i, j) = full(static_cast<Eigen::Index>(indices_[static_cast<std::size_t>(i)]),
                       static_cast<Eigen::Index>(indices_[static_cast<std::size_t>(j)]));
  return out;
}

double SectorBasis::leakage(const MatrixXcd& full) const {
  std::vector<bool> inside(static_cast<std::size_t>(full.rows()), false);
  for (auto idx : indices_) inside[idx] = true;
  double worst = 0.0;
  for (auto col : indices_)
    for (Eigen::Index row = 0; row < full.rows(); ++row)
      if (!inside[static_cast<std::size_t>(row)])
        worst = std::max(worst, std::abs(full(row, static_cast<Eigen::Index>(col))));
  return worst;
}

Monodromy::Monodromy(const ModelSpec& chain_model, int lattice_max)
    : model_(chain_model), length_(0), dim_(0) {
  if (!model_.is_chain()) throw Error("monodromy construction requires the chain model");
  length_ = model_.chain().length;
  if (length_ > lattice_max) {
    std::ostringstream os;
    os << "lattice length " << length_ << " exceeds the dense-oracle cap " << lattice_max;
    throw SizeLimit(os.str());
  }
  dim_ = pow3(length_);
}

std::array<std::array<MatrixXcd, 3>, 3> Monodromy::blocks(cplx w) const {
  const auto n = static_cast<Eigen::Index>(dim_);
  const cplx c = model_.coupling().value();
  const auto& xi = model_.chain().xi;

  // E^{to,from} at site m applied to M from the left: rows with symbol
  // `from` at site m are moved to the corresponding `to` rows.
  auto apply_e = [&](int site, int to, int from, const MatrixXcd& mat) {
    MatrixXcd out = MatrixXcd::Zero(n, n);
    const auto stride = static_cast<std::ptrdiff_t>(pow3(length_ - site));
    for (Eigen::Index r = 0; r < n; ++r) {
      if (digit_at(static_cast<std::size_t>(r), site, length_) != from) continue;
      out.row(r + static_cast<Eigen::Index>((to - from) * stride)) = mat.row(r);
    }
    return out;
  };

  std::array<std::array<MatrixXcd, 3>, 3> t;
  // Site 1 factor: blocks (i,j) of R'(w, xi_1) are (w-xi_1) delta_ij + c E^{ji}.
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      t[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = MatrixXcd::Zero(n, n);
      MatrixXcd& block = t[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      if (i == j) block.diagonal().setConstant(w - xi[0]);
      const auto stride = static_cast<std::ptrdiff_t>(pow3(length_ - 1));
      for (Eigen::Index r = 0; r < n; ++r) {
        if (digit_at(static_cast<std::size_t>(r), 1, length_) != i) continue;
        block(r + static_cast<Eigen::Index>((j - i) * stride), r) += c;
      }
    }

  for (int site = 2; site <= length_; ++site) {
    const cplx d = w - xi[static_cast<std::size_t>(site - 1)];
    std::array<std::array<MatrixXcd, 3>, 3> next;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        MatrixXcd acc = d * t[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        for (int m = 0; m < 3; ++m)
          acc += c * apply_e(site, m, i, t[static_cast<std::size_t>(m)][static_cast<std::size_t>(j)]);
        next[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = std::move(acc);
      }
    t = std::move(next);
  }
  return t;
}

MatrixXcd Monodromy::entry(int i, int j, cplx w) const {
  if (i < 1 || i > 3 || j < 1 || j > 3) throw Error("monodromy entry indices must be in 1..3");
  return blocks(w)[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)];
}

MatrixXcd Monodromy::transfer(cplx w, const Twist& twist, bool normalized) const {
  const auto b = blocks(w);
  MatrixXcd out = twist.k1() * b[0][0] + twist.k2() * b[1][1] + twist.k3() * b[2][2];
  if (normalized) {
    const cplx l2 = model_.lambda(2, w);
    if (std::abs(l2) <= model_.coupling().pole_eps())
      throw PoleError("transfer normalization: lambda_2 vanishes at this point; "
                      "use the un-normalized variant");
    out /= l2;
  }
  return out;
}

MatrixXcd sector_transfer(const Monodromy& mono, cplx w, const Twist& twist,
                          const SectorBasis& sector, bool normalized) {
  return sector.restrict_full(mono.transfer(w, twist, normalized));
}

std::vector<cplx> default_probes(const ModelSpec& model, std::uint64_t seed, int count) {
  Rng rng(seed);
  const double scale = std::max(1.0, std::abs(model.coupling().value()));
  std::vector<cplx> probes;
  probes.reserve(static_cast<std::size_t>(count));
  int guard = 0;
  while (static_cast<int>(probes.size()) < count && guard < 1000) {
    ++guard;
    const cplx w(scale * (2.0 * rng.uniform() - 1.0) * 2.0,
                 scale * (2.0 * rng.uniform() - 1.0) * 2.0);
    bool ok = true;
    if (model.is_chain())
      for (const auto& xi : model.chain().xi)
        if (std::abs(w - xi) < 0.1 * scale) ok = false;
    if (ok) probes.push_back(w);
  }
  if (static_cast<int>(probes.size()) < count)
    throw Error("default_probes: could not draw enough admissible probe points");
  return probes;
}

namespace {

struct EigenSystem {
  VectorXcd values;
  MatrixXcd right;     // columns
  MatrixXcd left;      // rows of right^{-1}, bilinear-biorthonormal
};

EigenSystem diagonalize(const MatrixXcd& m) {
  Eigen::ComplexEigenSolver<MatrixXcd> solver(m);
  if (solver.info() != Eigen::Success)
    throw Error("sector transfer diagonalization failed to converge");
  EigenSystem out;
  out.values = solver.eigenvalues();
  out.right = solver.eigenvectors();
  Eigen::FullPivLU<MatrixXcd> lu(out.right);
  if (!lu.isInvertible())
    throw DegenerateMatch("eigenvector matrix is singular; transfer spectrum too degenerate");
  out.left = lu.inverse();
  return out;
}

}  // namespace

cplx bilinear(const VectorXcd& left, const MatrixXcd& op, const VectorXcd& right) {
  return (left.transpose() * op * right).value();
}

namespace {

cplx bilinear_pair(const VectorXcd& left, const VectorXcd& right) {
  return (left.transpose() * right).value();
}

}  // namespace

MatchedState match_state(const Monodromy& mono, const BetheState& state,
                         const SectorBasis& sector, std::vector<cplx> probes) {
  if (!state.on_shell) throw Error("match_state requires an on-shell state");
  if (static_cast<int>(state.a()) != sector.a() || static_cast<int>(state.b()) != sector.b())
    throw SizeMismatch("state cardinalities do not match the sector");
  if (probes.empty()) throw Error("match_state needs at least one probe point");

  const ModelSpec& model = mono.model();
  const EigenSystem sys = diagonalize(sector_transfer(mono, probes[0], state.twist, sector));
  const auto n = sys.values.size();

  auto tau_at = [&](cplx w) { return tau(w, state.u, state.v, model, state.twist); };
  auto matches_all = [&](Eigen::Index i) {
    for (const auto& w : probes) {
      const cplx expected = tau_at(w);
      const double tol = 1e-8 * (1.0 + std::abs(expected));
      cplx observed;
      if (w == probes[0]) {
        observed = sys.values(i);
      } else {
        const MatrixXcd tm = sector_transfer(mono, w, state.twist, sector);
        observed = bilinear(sys.left.row(i).transpose(), tm, sys.right.col(i));
      }
      if (std::abs(observed - expected) > tol) return false;
    }
    return true;
  };

  std::vector<Eigen::Index> candidates;
  for (Eigen::Index i = 0; i < n; ++i)
    if (matches_all(i)) candidates.push_back(i);

  // Ambiguity is resolved by extending the probe list.
  Rng extra_rng(0x9e3779b97f4a7c15ull);
  while (candidates.size() > 1 && probes.size() < 8) {
    auto more = default_probes(model, extra_rng.bits(), 1);
    probes.push_back(more[0]);
    std::vector<Eigen::Index> filtered;
    for (auto i : candidates)
      if (matches_all(i)) filtered.push_back(i);
    candidates = std::move(filtered);
  }

  if (candidates.empty())
    throw NoMatch("no transfer eigenvalue matches the state at every probe point");
  if (candidates.size() > 1)
    throw DegenerateMatch("several transfer eigenvalues match at every probe point");

  MatchedState out;
  out.index = static_cast<int>(candidates[0]);
  out.right = sys.right.col(candidates[0]);
  out.left = sys.left.row(candidates[0]).transpose();
  out.eigenvalue = sys.values(candidates[0]);
  out.probes = std::move(probes);
  return out;
}

cplx ratio_diag(int s, cplx z, const Monodromy& mono, const MatchedState& matched,
                const SectorBasis& sector) {
  if (s < 1 || s > 3) throw Error("operator index s must be in 1..3");
  const cplx l2 = mono.model().lambda(2, z);
  if (std::abs(l2) <= mono.model().coupling().pole_eps())
    throw PoleError("ratio_diag: lambda_2 vanishes at z");
  const MatrixXcd op = sector.restrict_full(mono.entry(s, s, z)) / l2;
  return bilinear(matched.left, op, matched.right) / bilinear_pair(matched.left, matched.right);
}

cplx ratio_offdiag(int s, int sp, cplx z, cplx zp, const Monodromy& mono,
                   const MatchedState& mc, const MatchedState& mb, const SectorBasis& sector) {
  if (s < 1 || s > 3 || sp < 1 || sp > 3) throw Error("operator indices must be in 1..3");
  const auto& model = mono.model();
  const cplx l2z = model.lambda(2, z);
  const cplx l2zp = model.lambda(2, zp);
  if (std::abs(l2z) <= model.coupling().pole_eps() ||
      std::abs(l2zp) <= model.coupling().pole_eps())
    throw PoleError("ratio_offdiag: lambda_2 vanishes at an evaluation point");
  const MatrixXcd op1 = sector.restrict_full(mono.entry(s, s, z)) / l2z;
  const MatrixXcd op2 = sector.restrict_full(mono.entry(sp, sp, zp)) / l2zp;
  const cplx num = bilinear(mc.left, op1, mb.right) * bilinear(mb.left, op2, mc.right);
  const cplx den = bilinear_pair(mc.left, mc.right) * bilinear_pair(mb.left, mb.right);
  return num / den;
}

MatrixXcd local_op(int s, int m, const SectorBasis& sector) {
  if (s < 1 || s > 3) throw Error("symbol index s must be in 1..3");
  if (m < 1 || m > sector.length()) {
    std::ostringstream os;
    os << "site index " << m << " outside 1.." << sector.length();
    throw SiteOutOfRange(os.str());
  }
  const auto n = static_cast<Eigen::Index>(sector.dim());
  MatrixXcd out = MatrixXcd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    if (sector.symbol_at(static_cast<std::size_t>(i), m) == s) out(i, i) = 1.0;
  return out;
}

cplx local_ratio_diag(int s, int m, const MatchedState& matched, const SectorBasis& sector) {
  const MatrixXcd op = local_op(s, m, sector);
  return bilinear(matched.left, op, matched.right) / bilinear_pair(matched.left, matched.right);
}

cplx local_ratio_offdiag(int s, int sp, int m, int mp, const MatchedState& mc,
                         const MatchedState& mb, const SectorBasis& sector) {
  const MatrixXcd op1 = local_op(s, m, sector);
  const MatrixXcd op2 = local_op(sp, mp, sector);
  const cplx num = bilinear(mc.left, op1, mb.right) * bilinear(mb.left, op2, mc.right);
  const cplx den = bilinear_pair(mc.left, mc.right) * bilinear_pair(mb.left, mb.right);
  return num / den;
}

}  // namespace su3ff
