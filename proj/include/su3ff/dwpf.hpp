#pragma once

#include "su3ff/linalg.hpp"
#include "su3ff/types.hpp"

namespace su3ff {

// Domain-wall partition function K_n(x̄|ȳ) via its n x n determinant
// representation
//   K_n = Δ'_n(x̄) Δ_n(ȳ) h(x̄,ȳ) det[t(x_j, y_k)].
// Requires #x̄ = #ȳ; K_0 = 1. Throws PoleError if any pair (x_j, y_k) has
// x_j - y_k within the pole guard of 0 or -c.
DetResult dwpf_cond(const VarSet& xs, const VarSet& ys, const Coupling& c);
cplx dwpf(const VarSet& xs, const VarSet& ys, const Coupling& c);

}  // namespace su3ff
