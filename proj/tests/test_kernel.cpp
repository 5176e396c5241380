#include <doctest.h>

#include "su3ff/kernel.hpp"
#include "su3ff/rng.hpp"

using namespace su3ff;

namespace {

const Coupling kC1{cplx(1.0)};
const Coupling kC2{cplx(2.0)};

double rel_err(cplx got, cplx want) {
  const double scale = std::max(1.0, std::abs(want));
  return std::abs(got - want) / scale;
}

}  // namespace

TEST_CASE("kernel point values") {
  // g(3,1) with c=2: 2/2 = 1
  CHECK(rel_err(eval_kernel(KernelFn::g, 3.0, 1.0, kC2), cplx(1.0)) < 1e-15);
  // h(x,x) = 1 for any c
  CHECK(rel_err(eval_kernel(KernelFn::h, cplx(0.7, -0.3), cplx(0.7, -0.3), kC2), cplx(1.0)) <
        1e-15);
  CHECK(rel_err(kernel::f(cplx(2.0), cplx(1.0), kC1), cplx(2.0)) < 1e-15);
}

TEST_CASE("kernel poles") {
  CHECK_THROWS_AS(eval_kernel(KernelFn::g, 1.0, 1.0, kC1), PoleError);
  CHECK_THROWS_AS(eval_kernel(KernelFn::f, 1.0, 1.0, kC1), PoleError);
  // t(x,y) with x-y = -c hits the second denominator
  CHECK_THROWS_AS(eval_kernel(KernelFn::t, cplx(0.0), cplx(2.0), kC2), PoleError);
  // h has no poles there
  CHECK_NOTHROW(eval_kernel(KernelFn::h, cplx(0.0), cplx(2.0), kC2));
}

TEST_CASE("kernel identities at random points") {
  Rng rng(42);
  const Coupling c{cplx(0.8, 0.6)};
  for (int i = 0; i < 200; ++i) {
    const cplx x = 2.0 * rng.complex_normal();
    const cplx y = 2.0 * rng.complex_normal();
    if (std::abs(x - y) < 1e-3 || std::abs(x - y + c.value()) < 1e-3) continue;
    const cplx g = kernel::g(x, y, c);
    const cplx f = kernel::f(x, y, c);
    const cplx h = kernel::h(x, y, c);
    const cplx t = kernel::t(x, y, c);
    CHECK(std::abs(f - g - 1.0) < 1e-13);
    CHECK(rel_err(g * h, f) < 1e-13);
    CHECK(rel_err(t * h, g) < 1e-13);
    // antisymmetry of g and the f(x,y) f(y,x) identity
    CHECK(rel_err(kernel::g(y, x, c), -g) < 1e-14);
    CHECK(rel_err(f * kernel::f(y, x, c), 1.0 - g * g) < 1e-12);
  }
}

TEST_CASE("set products") {
  // empty set on either side gives 1
  CHECK(prod_kernel(KernelFn::f, VarSet{}, VarSet{{cplx(1.0), cplx(2.0)}}, kC1) == cplx(1.0));
  // singleton product equals the point evaluation
  CHECK(rel_err(prod_kernel(KernelFn::f, VarSet{cplx(2.0)}, VarSet{cplx(1.0)}, kC1), cplx(2.0)) <
        1e-15);
  // f({2,4},{1}) with c=1: 2 * 4/3 = 8/3
  CHECK(rel_err(prod_kernel(KernelFn::f, VarSet{cplx(2.0), cplx(4.0)}, VarSet{cplx(1.0)}, kC1),
                cplx(8.0 / 3.0)) < 1e-15);
}

TEST_CASE("set products are permutation invariant") {
  Rng rng(7);
  const Coupling c{cplx(1.3, -0.4)};
  const VarSet xs{rng.complex_normal(), rng.complex_normal(), rng.complex_normal()};
  const VarSet ys{rng.complex_normal(), rng.complex_normal()};
  const VarSet xs_perm{xs[2], xs[0], xs[1]};
  const VarSet ys_perm{ys[1], ys[0]};
  for (auto fn : {KernelFn::g, KernelFn::f, KernelFn::h, KernelFn::t}) {
    const cplx a = prod_kernel(fn, xs, ys, c);
    const cplx b = prod_kernel(fn, xs_perm, ys_perm, c);
    CHECK(rel_err(a, b) < 1e-13);
  }
}

TEST_CASE("delta prefactors") {
  // n = 1: empty product
  CHECK(delta_prod(DeltaKind::primed, VarSet{cplx(0.4)}, kC1) == cplx(1.0));
  // primed, (0,2), c=1: g(2,0) = 1/2
  CHECK(rel_err(delta_prod(DeltaKind::primed, VarSet{cplx(0.0), cplx(2.0)}, kC1), cplx(0.5)) <
        1e-15);
  // primed * plain = product over all ordered pairs j != k
  const VarSet xs{cplx(0.0), cplx(1.0), cplx(3.0)};
  cplx all(1.0);
  for (std::size_t j = 0; j < 3; ++j)
    for (std::size_t k = 0; k < 3; ++k)
      if (j != k) all *= kernel::g(xs[j], xs[k], kC1);
  CHECK(rel_err(delta_prod(DeltaKind::primed, xs, kC1) * delta_prod(DeltaKind::plain, xs, kC1),
                all) < 1e-14);
  CHECK_THROWS_AS(delta_prod(DeltaKind::plain, VarSet{cplx(1.0), cplx(1.0)}, kC1), PoleError);
}

TEST_CASE("dlogf matches finite differences") {
  Rng rng(3);
  const Coupling c{cplx(1.0, 0.5)};
  for (int i = 0; i < 50; ++i) {
    const cplx x = rng.complex_normal();
    const cplx y = 2.0 + rng.complex_normal();
    const double eps = 1e-6;
    const cplx fd =
        (std::log(kernel::f(x + eps, y, c)) - std::log(kernel::f(x - eps, y, c))) / (2 * eps);
    CHECK(std::abs(kernel::dlogf(x, y, c) - fd) < 1e-8);
  }
}
