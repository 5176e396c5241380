#pragma once

#include "su3ff/types.hpp"

namespace su3ff {

enum class KernelFn { g, f, h, t };
enum class DeltaKind { plain, primed };

namespace kernel {

// The four rational building blocks:
//   g(x,y) = c/(x-y)
//   f(x,y) = 1 + g(x,y) = (x-y+c)/(x-y)
//   h(x,y) = f/g = (x-y+c)/c
//   t(x,y) = g/h = c^2 / ((x-y)(x-y+c))
// g, f, t are pole-checked; h is a polynomial in x-y and never throws.
cplx g(cplx x, cplx y, const Coupling& c);
cplx f(cplx x, cplx y, const Coupling& c);
cplx h(cplx x, cplx y, const Coupling& c);
cplx t(cplx x, cplx y, const Coupling& c);

// Set-product conventions: a bar argument means the product over the set,
// empty sets give 1.
cplx g(const VarSet& xs, const VarSet& ys, const Coupling& c);
cplx f(const VarSet& xs, const VarSet& ys, const Coupling& c);
cplx h(const VarSet& xs, const VarSet& ys, const Coupling& c);
cplx t(const VarSet& xs, const VarSet& ys, const Coupling& c);

cplx g(cplx x, const VarSet& ys, const Coupling& c);
cplx f(cplx x, const VarSet& ys, const Coupling& c);
cplx h(cplx x, const VarSet& ys, const Coupling& c);
cplx t(cplx x, const VarSet& ys, const Coupling& c);

cplx g(const VarSet& xs, cplx y, const Coupling& c);
cplx f(const VarSet& xs, cplx y, const Coupling& c);
cplx h(const VarSet& xs, cplx y, const Coupling& c);
cplx t(const VarSet& xs, cplx y, const Coupling& c);

// Sum of principal logs of the f factors, log f(x, y_k) summed over the set.
cplx logf_sum(cplx x, const VarSet& ys, const Coupling& c);
cplx logf_sum(const VarSet& xs, cplx y, const Coupling& c);

// d/dx log f(x,y) = 1/(x-y+c) - 1/(x-y).
cplx dlogf(cplx x, cplx y, const Coupling& c);

// 1/g = (x-y)/c, polynomial, and its set products.
cplx ginv(cplx x, cplx y, const Coupling& c);
cplx ginv(cplx x, const VarSet& ys, const Coupling& c);
cplx ginv(const VarSet& xs, cplx y, const Coupling& c);

// Principal-branch complex power base^expo; sets *note when the branch
// choice is nontrivial (base off the positive real axis).
cplx pow_principal(cplx base, cplx expo, bool* note = nullptr);

}  // namespace kernel

// Dispatch forms of the operations above.
cplx eval_kernel(KernelFn fn, cplx x, cplx y, const Coupling& c);
cplx prod_kernel(KernelFn fn, const VarSet& xs, const VarSet& ys, const Coupling& c);

// Vandermonde-type prefactors:
//   primed: prod_{j>k} g(x_j, x_k)
//   plain:  prod_{j<k} g(x_j, x_k)
cplx delta_prod(DeltaKind kind, const VarSet& xs, const Coupling& c);

}  // namespace su3ff
