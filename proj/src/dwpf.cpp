#include "su3ff/dwpf.hpp"

#include <sstream>

#include "su3ff/kernel.hpp"

namespace su3ff {

DetResult dwpf_cond(const VarSet& xs, const VarSet& ys, const Coupling& c) {
  if (xs.size() != ys.size()) {
    std::ostringstream os;
    os << "dwpf: #x = " << xs.size() << " but #y = " << ys.size();
    throw SizeMismatch(os.str());
  }
  const auto n = static_cast<Eigen::Index>(xs.size());
  if (n == 0) return DetResult{};

  require_distinct(xs, c, "dwpf x-set");
  require_distinct(ys, c, "dwpf y-set");

  MatrixXcd tmat(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index k = 0; k < n; ++k)
      tmat(j, k) = kernel::t(xs[static_cast<std::size_t>(j)], ys[static_cast<std::size_t>(k)], c);

  DetResult det = det_lu(tmat);
  const cplx prefactor = delta_prod(DeltaKind::primed, xs, c) *
                         delta_prod(DeltaKind::plain, ys, c) * kernel::h(xs, ys, c);
  det.value *= prefactor;
  return det;
}

cplx dwpf(const VarSet& xs, const VarSet& ys, const Coupling& c) {
  return dwpf_cond(xs, ys, c).value;
}

}  // namespace su3ff
