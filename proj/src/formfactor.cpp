#include "su3ff/formfactor.hpp"

#include <cmath>
#include <sstream>

#include "su3ff/kernel.hpp"

namespace su3ff {

namespace {

using kernel::dlogf;
using kernel::ginv;

void require_on_shell(const BetheState& state, const char* what, bool identity_twist = true) {
  if (!state.on_shell) throw Error(std::string(what) + ": state is not on shell");
  if (identity_twist && !state.twist.is_identity(1e-14))
    throw Error(std::string(what) + ": state must be on shell at the identity twist");
}

void require_same_sector(const BetheState& c_state, const BetheState& b_state, const char* what) {
  if (c_state.a() != b_state.a() || c_state.b() != b_state.b()) {
    std::ostringstream os;
    os << what << ": sector mismatch, (" << c_state.a() << "," << c_state.b() << ") vs ("
       << b_state.a() << "," << b_state.b() << ")";
    throw SizeMismatch(os.str());
  }
}

double delta(int s, int k) { return s == k ? 1.0 : 0.0; }

// Pole-cancelled entries of the scalar-product/form-factor matrix. The raw
// definition multiplies tau derivatives (with poles at the merged column
// arguments) by vanishing g^{-1} products; here the cancellation is done
// analytically so every entry is regular:
//   g^{-1}(w,u) f(u,w) = -h(u,w),   g^{-1}(w,u) f(w,u) = h(w,u),
//   g^{-1}(v,w) f(v,w) =  h(v,w),   g^{-1}(v,w) f(w,v) = -h(w,v).
struct EntryBuilder {
  const ModelSpec& model;
  const BetheState& sc;  // C state (rows 0..a-1 differentiate tau in u^C)
  const BetheState& sb;  // B state (rows a..a+b-1 differentiate tau in v^B)
  Twist row_twist_c;     // twist entering the C rows
  Twist row_twist_b;     // twist entering the B rows

  cplx column_arg(std::size_t k) const {
    return k < sb.a() ? sb.u[k] : sc.v[k - sb.a()];
  }

  cplx entry(std::size_t j, cplx w) const {
    const auto& c = model.coupling();
    const std::size_t a = sc.a();
    if (j < a) {
      const double sign_a = (a % 2 == 0) ? 1.0 : -1.0;
      const cplx term1 = row_twist_c.k1() * model.r(1, w) * sign_a * kernel::h(sc.u, w, c) *
                         ginv(sc.v, w, c) * dlogf(sc.u[j], w, c);
      const cplx term2 = row_twist_c.k2() * kernel::h(w, sc.u, c) * kernel::h(sc.v, w, c) *
                         dlogf(w, sc.u[j], c);
      return c.value() * (term1 - term2);
    }
    const std::size_t jb = j - a;
    const double sign_b = (sb.b() % 2 == 0) ? 1.0 : -1.0;
    const cplx term1 = row_twist_b.k2() * kernel::h(w, sb.u, c) * kernel::h(sb.v, w, c) *
                       dlogf(sb.v[jb], w, c);
    const cplx term2 = row_twist_b.k3() * model.r(3, w) * sign_b * kernel::h(w, sb.v, c) *
                       ginv(w, sb.u, c) * dlogf(w, sb.v[jb], c);
    return -c.value() * (term1 - term2);
  }
};

cplx y_component(int s, std::size_t k, const ModelSpec& model, const BetheState& sc,
                 const BetheState& sb) {
  const auto& c = model.coupling();
  const std::size_t a = sc.a();
  if (k < a) {
    const cplx ub = sb.u[k];
    const cplx ratio = kernel::f(sb.v, ub, c) / kernel::f(sc.v, ub, c);
    return c.value() * (delta(s, 1) - delta(s, 2)) +
           (delta(s, 1) - delta(s, 3)) * ub * (1.0 - ratio);
  }
  const cplx vc = sc.v[k - a];
  const cplx ratio = kernel::f(vc, sc.u, c) / kernel::f(vc, sb.u, c);
  return c.value() * (delta(s, 3) - delta(s, 2)) +
         (delta(s, 1) - delta(s, 3)) * (vc + c.value()) * (1.0 - ratio);
}

// Common Vandermonde/kernel prefactor of the off-diagonal representation and
// the scalar product (they coincide because swapping which v-set carries the
// prime flips both sign factors at once).
cplx offdiag_prefactor(const ModelSpec& model, const BetheState& sc, const BetheState& sb) {
  const auto& c = model.coupling();
  return kernel::t(sc.v, sb.u, c) * delta_prod(DeltaKind::primed, sc.u, c) *
         delta_prod(DeltaKind::plain, sb.u, c) * delta_prod(DeltaKind::primed, sc.v, c) *
         delta_prod(DeltaKind::plain, sb.v, c);
}

}  // namespace

cplx tau(cplx z, const VarSet& u, const VarSet& v, const ModelSpec& model, const Twist& twist) {
  const auto& c = model.coupling();
  return twist.k1() * model.r(1, z) * kernel::f(u, z, c) +
         twist.k2() * kernel::f(z, u, c) * kernel::f(v, z, c) +
         twist.k3() * model.r(3, z) * kernel::f(z, v, c);
}

cplx tau_du(cplx z, const VarSet& u, const VarSet& v, std::size_t k, const ModelSpec& model,
            const Twist& twist) {
  const auto& c = model.coupling();
  return twist.k1() * model.r(1, z) * kernel::f(u, z, c) * dlogf(u[k], z, c) -
         twist.k2() * kernel::f(z, u, c) * kernel::f(v, z, c) * dlogf(z, u[k], c);
}

cplx tau_dv(cplx z, const VarSet& u, const VarSet& v, std::size_t k, const ModelSpec& model,
            const Twist& twist) {
  const auto& c = model.coupling();
  return twist.k2() * kernel::f(z, u, c) * kernel::f(v, z, c) * dlogf(v[k], z, c) -
         twist.k3() * model.r(3, z) * kernel::f(z, v, c) * dlogf(z, v[k], c);
}

cplx hab(const VarSet& u, const VarSet& v, const Coupling& c) {
  const std::size_t a = u.size();
  const std::size_t b = v.size();
  cplx result = (a % 2 == 0) ? cplx(1.0) : cplx(-1.0);
  for (std::size_t i = 0; i < a + b; ++i) result *= c.value();
  result *= kernel::f(v, u, c);
  for (std::size_t j = 0; j < a; ++j)
    for (std::size_t k = 0; k < a; ++k)
      if (j != k) result *= kernel::f(u[j], u[k], c);
  for (std::size_t j = 0; j < b; ++j)
    for (std::size_t k = 0; k < b; ++k)
      if (j != k) result *= kernel::f(v[j], v[k], c);
  return result;
}

MatrixXcd theta_ext(int s, cplx z, const ModelSpec& model, const BetheState& state) {
  if (s < 1 || s > 3) throw Error("operator index s must be in 1..3");
  require_on_shell(state, "theta_ext");
  const auto& c = model.coupling();
  const std::size_t a = state.a();
  const std::size_t b = state.b();
  const auto n = static_cast<Eigen::Index>(a + b);

  MatrixXcd out(n + 1, n + 1);
  out.topLeftCorner(n, n) = jacobian_theta(model, state);
  for (std::size_t k = 0; k < a; ++k)
    out(n, static_cast<Eigen::Index>(k)) = tau_du(z, state.u, state.v, k, model);
  for (std::size_t k = 0; k < b; ++k)
    out(n, static_cast<Eigen::Index>(a + k)) = tau_dv(z, state.u, state.v, k, model);
  for (std::size_t j = 0; j < a; ++j)
    out(static_cast<Eigen::Index>(j), n) = delta(s, 1) - delta(s, 2);
  for (std::size_t j = 0; j < b; ++j)
    out(static_cast<Eigen::Index>(a + j), n) = delta(s, 3) - delta(s, 2);
  switch (s) {
    case 1:
      out(n, n) = model.r(1, z) * kernel::f(state.u, z, c);
      break;
    case 2:
      out(n, n) = kernel::f(z, state.u, c) * kernel::f(state.v, z, c);
      break;
    default:
      out(n, n) = model.r(3, z) * kernel::f(z, state.v, c);
  }
  return out;
}

DetResult norm_squared_cond(const ModelSpec& model, const BetheState& state) {
  require_on_shell(state, "norm_squared");
  DetResult det = det_lu(jacobian_theta(model, state));
  det.value *= hab(state.u, state.v, model.coupling());
  return det;
}

cplx norm_squared(const ModelSpec& model, const BetheState& state) {
  return norm_squared_cond(model, state).value;
}

FormFactorResult ff_diagonal(int s, cplx z, const ModelSpec& model, const BetheState& state) {
  const DetResult det = det_lu(theta_ext(s, z, model, state));
  FormFactorResult out;
  out.value = hab(state.u, state.v, model.coupling()) * det.value;
  out.s = s;
  out.z = z;
  out.a = static_cast<int>(state.a());
  out.b = static_cast<int>(state.b());
  out.cond = det.cond;
  return out;
}

OmegaResult omega(const BetheState& state_c, const BetheState& state_b, const Coupling& c) {
  require_same_sector(state_c, state_b, "omega");
  require_distinct(state_c.u, c, "omega u^C");
  require_distinct(state_b.v, c, "omega v^B");
  const std::size_t a = state_c.a();
  const std::size_t b = state_c.b();
  VectorXcd values(static_cast<Eigen::Index>(a + b));
  for (std::size_t k = 0; k < a; ++k) {
    cplx num(1.0), den(1.0);
    for (std::size_t l = 0; l < a; ++l) {
      num *= state_c.u[k] - state_b.u[l];
      if (l != k) den *= state_c.u[k] - state_c.u[l];
    }
    values(static_cast<Eigen::Index>(k)) = num / den;
  }
  for (std::size_t k = 0; k < b; ++k) {
    cplx num(1.0), den(1.0);
    for (std::size_t m = 0; m < b; ++m) {
      num *= state_b.v[k] - state_c.v[m];
      if (m != k) den *= state_b.v[k] - state_b.v[m];
    }
    values(static_cast<Eigen::Index>(a + k)) = num / den;
  }
  int p = 0;
  double best = -1.0;
  for (Eigen::Index i = 0; i < values.size(); ++i)
    if (std::abs(values(i)) > best) {
      best = std::abs(values(i));
      p = static_cast<int>(i);
    }
  if (values.size() == 0 || best < c.dist_eps())
    throw AllZero("omega: the states share all roots; the off-diagonal formula does not apply");
  return OmegaResult{std::move(values), p};
}

MatrixXcd n_matrix_offdiag(int s, const ModelSpec& model, const BetheState& state_c,
                           const BetheState& state_b, int p) {
  if (s < 1 || s > 3) throw Error("operator index s must be in 1..3");
  require_same_sector(state_c, state_b, "n_matrix_offdiag");
  const auto& c = model.coupling();
  const std::size_t n = state_c.a() + state_c.b();
  if (p < 0 || static_cast<std::size_t>(p) >= n) throw Error("row index p out of range");

  EntryBuilder rows{model, state_c, state_b, Twist::identity(), Twist::identity()};
  MatrixXcd out(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t k = 0; k < n; ++k) {
    const cplx w = rows.column_arg(k);
    for (std::size_t j = 0; j < n; ++j) {
      if (static_cast<int>(j) == p)
        out(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) =
            kernel::h(state_c.v, w, c) * kernel::h(w, state_b.u, c) *
            y_component(s, k, model, state_c, state_b);
      else
        out(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) = rows.entry(j, w);
    }
  }
  return out;
}

FormFactorResult ff_offdiagonal_row(int s, cplx z, const ModelSpec& model,
                                    const BetheState& state_c, const BetheState& state_b, int p) {
  require_on_shell(state_c, "ff_offdiagonal");
  require_on_shell(state_b, "ff_offdiagonal");
  const auto& c = model.coupling();
  const OmegaResult om = omega(state_c, state_b, c);
  const cplx omega_p = om.values(p);
  if (std::abs(omega_p) < c.dist_eps())
    throw AllZero("ff_offdiagonal: chosen row has a vanishing omega component");

  const DetResult det = det_lu(n_matrix_offdiag(s, model, state_c, state_b, p));
  const cplx dtau = tau(z, state_c.u, state_c.v, model) - tau(z, state_b.u, state_b.v, model);

  FormFactorResult out;
  out.value = dtau / omega_p * offdiag_prefactor(model, state_c, state_b) * det.value;
  out.s = s;
  out.z = z;
  out.a = static_cast<int>(state_c.a());
  out.b = static_cast<int>(state_c.b());
  out.cond = det.cond;
  out.p = p + 1;
  return out;
}

FormFactorResult ff_offdiagonal(int s, cplx z, const ModelSpec& model, const BetheState& state_c,
                                const BetheState& state_b) {
  const OmegaResult om = omega(state_c, state_b, model.coupling());
  return ff_offdiagonal_row(s, z, model, state_c, state_b, om.p);
}

MatrixXcd scalar_product_matrix(const ModelSpec& model, const BetheState& state_c,
                                const BetheState& state_b, const Twist& kappa) {
  require_same_sector(state_c, state_b, "scalar_product");
  const auto& c = model.coupling();
  const std::size_t a = state_c.a();
  const std::size_t n = a + state_c.b();

  EntryBuilder rows{model, state_c, state_b, kappa, Twist::identity()};
  const cplx zeta = kappa.k3() / kappa.k1();
  MatrixXcd out(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t k = 0; k < n; ++k) {
    const cplx w = rows.column_arg(k);
    for (std::size_t j = 0; j < n; ++j) {
      cplx value = rows.entry(j, w);
      // Twist powers in the off-diagonal blocks.
      if (j < a && k >= a)
        value *= kernel::pow_principal(zeta, state_c.v[k - a] / c.value());
      else if (j >= a && k < a)
        value *= kernel::pow_principal(zeta, -state_b.u[k] / c.value());
      out(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) = value;
    }
  }
  return out;
}

ScalarProductResult scalar_product_twisted(const ModelSpec& model, const BetheState& state_c,
                                           const BetheState& state_b, const Twist& kappa) {
  require_on_shell(state_b, "scalar_product (standard state)");
  if (!state_c.on_shell) throw Error("scalar_product: twisted state is not on shell");
  if (!(state_c.twist == kappa))
    throw Error("scalar_product: twisted state was solved at a different twist");

  const MatrixXcd m = scalar_product_matrix(model, state_c, state_b, kappa);
  const DetResult det = det_lu(m);
  const cplx prefactor = offdiag_prefactor(model, state_c, state_b);

  ScalarProductResult out;
  out.value = prefactor * det.value;
  out.cond = det.cond;
  double hadamard = 1.0;
  for (Eigen::Index k = 0; k < m.cols(); ++k)
    hadamard *= (m.rows() > 0) ? m.col(k).cwiseAbs().maxCoeff() : 1.0;
  out.scale = std::abs(prefactor) * hadamard;
  bool branch = false;
  kernel::pow_principal(kappa.k3() / kappa.k1(), cplx(1.0), &branch);
  if (branch && !kappa.is_identity(0.0))
    out.note = "principal branch used for twist powers";
  return out;
}

VectorXcd modified_row_p(const ModelSpec& model, const BetheState& state_c,
                         const BetheState& state_b, const Twist& kappa, int p) {
  require_same_sector(state_c, state_b, "modified_row_p");
  const auto& c = model.coupling();
  const std::size_t a = state_c.a();
  const std::size_t b = state_c.b();
  const OmegaResult om = omega(state_c, state_b, c);
  const cplx omega_p_inv = 1.0 / om.values(p);

  const cplx k21 = kappa.k2() / kappa.k1();
  const cplx k23 = kappa.k2() / kappa.k3();
  VectorXcd out(static_cast<Eigen::Index>(a + b));
  for (std::size_t k = 0; k < a; ++k) {
    const cplx ub = state_b.u[k];
    const cplx rho = kernel::pow_principal(kappa.k1() / kappa.k3(), ub / c.value());
    const cplx fr = kernel::f(state_b.v, ub, c) / kernel::f(state_c.v, ub, c);
    out(static_cast<Eigen::Index>(k)) = c.value() * omega_p_inv * kernel::h(state_c.v, ub, c) *
                                        kernel::h(ub, state_b.u, c) *
                                        (fr * (1.0 - rho) + rho - k21);
  }
  for (std::size_t k = 0; k < b; ++k) {
    const cplx vc = state_c.v[k];
    const cplx sigma = kernel::pow_principal(kappa.k3() / kappa.k1(), vc / c.value());
    const cplx fr = kernel::f(vc, state_c.u, c) / kernel::f(vc, state_b.u, c);
    out(static_cast<Eigen::Index>(a + k)) =
        c.value() * omega_p_inv * kernel::h(state_c.v, vc, c) * kernel::h(vc, state_b.u, c) *
        (fr * (k21 * sigma - k23) + 1.0 - k21 * sigma);
  }
  return out;
}

cplx tau_kappa_total_derivative(int s, cplx z, const ModelSpec& model, const BetheState& state) {
  if (s < 1 || s > 3) throw Error("operator index s must be in 1..3");
  require_on_shell(state, "tau_kappa_total_derivative");
  const auto& c = model.coupling();

  cplx explicit_part;
  switch (s) {
    case 1:
      explicit_part = model.r(1, z) * kernel::f(state.u, z, c);
      break;
    case 2:
      explicit_part = kernel::f(z, state.u, c) * kernel::f(state.v, z, c);
      break;
    default:
      explicit_part = model.r(3, z) * kernel::f(z, state.v, c);
  }

  const MatrixXcd droots = root_derivatives_dkappa(model, state);
  cplx motion(0.0);
  for (std::size_t l = 0; l < state.a(); ++l)
    motion += tau_du(z, state.u, state.v, l, model) *
              droots(static_cast<Eigen::Index>(l), s - 1);
  for (std::size_t m = 0; m < state.b(); ++m)
    motion += tau_dv(z, state.u, state.v, m, model) *
              droots(static_cast<Eigen::Index>(state.a() + m), s - 1);
  return explicit_part + motion;
}

cplx transfer_eigenvalue_unnormalized(cplx w, const VarSet& u, const VarSet& v,
                                      const ModelSpec& model) {
  const auto& c = model.coupling();
  return model.lambda(1, w) * kernel::f(u, w, c) +
         model.lambda(2, w) * kernel::f(w, u, c) * kernel::f(v, w, c) +
         model.lambda(3, w) * kernel::f(w, v, c);
}

namespace {

// Derivatives of the un-normalized eigenvalue; regular at the inhomogeneity
// points where lambda_2 vanishes.
cplx lambda_tau_du(cplx w, const VarSet& u, const VarSet& v, std::size_t k,
                   const ModelSpec& model) {
  const auto& c = model.coupling();
  return model.lambda(1, w) * kernel::f(u, w, c) * dlogf(u[k], w, c) -
         model.lambda(2, w) * kernel::f(w, u, c) * kernel::f(v, w, c) * dlogf(w, u[k], c);
}

cplx lambda_tau_dv(cplx w, const VarSet& u, const VarSet& v, std::size_t k,
                   const ModelSpec& model) {
  const auto& c = model.coupling();
  return model.lambda(2, w) * kernel::f(w, u, c) * kernel::f(v, w, c) * dlogf(v[k], w, c) -
         model.lambda(3, w) * kernel::f(w, v, c) * dlogf(w, v[k], c);
}

cplx lambda_corner(int s, cplx w, const VarSet& u, const VarSet& v, const ModelSpec& model) {
  const auto& c = model.coupling();
  switch (s) {
    case 1:
      return model.lambda(1, w) * kernel::f(u, w, c);
    case 2:
      return model.lambda(2, w) * kernel::f(w, u, c) * kernel::f(v, w, c);
    default:
      return model.lambda(3, w) * kernel::f(w, v, c);
  }
}

}  // namespace

FormFactorResult ff_local(int s, int m, const ModelSpec& model, const BetheState& state_c,
                          const BetheState& state_b) {
  if (s < 1 || s > 3) throw Error("operator index s must be in 1..3");
  if (!model.is_chain()) throw Error("ff_local requires the lattice chain model");
  const auto& chain = model.chain();
  if (m < 1 || m > chain.length) {
    std::ostringstream os;
    os << "site index " << m << " outside 1.." << chain.length;
    throw SiteOutOfRange(os.str());
  }
  require_on_shell(state_c, "ff_local");
  require_on_shell(state_b, "ff_local");
  const auto& c = model.coupling();
  const cplx xi_m = chain.xi[static_cast<std::size_t>(m - 1)];

  FormFactorResult out;
  out.s = s;
  out.z = xi_m;
  out.a = static_cast<int>(state_c.a());
  out.b = static_cast<int>(state_c.b());

  // Weight selection rule: the one-site projector preserves the sector.
  if (state_c.a() != state_b.a() || state_c.b() != state_b.b()) {
    out.note = "different weight sectors; matrix element vanishes identically";
    return out;
  }

  auto eigenvalue = [&](const BetheState& st, cplx w) {
    return transfer_eigenvalue_unnormalized(w, st.u, st.v, model);
  };
  const cplx lam_b_m = eigenvalue(state_b, xi_m);
  if (std::abs(lam_b_m) <= c.pole_eps())
    throw PoleError("ff_local: transfer eigenvalue vanishes at the site inhomogeneity");

  cplx prefix(1.0);
  for (int k = 0; k < m - 1; ++k) {
    const cplx xi_k = chain.xi[static_cast<std::size_t>(k)];
    const cplx lam_b = eigenvalue(state_b, xi_k);
    if (std::abs(lam_b) <= c.pole_eps())
      throw PoleError("ff_local: transfer eigenvalue vanishes at a prefix inhomogeneity");
    prefix *= eigenvalue(state_c, xi_k) / lam_b;
  }

  const bool same_state = same_multiset(state_c.u, state_b.u, 1e-8) &&
                          same_multiset(state_c.v, state_b.v, 1e-8);
  if (same_state) {
    // Bordered Jacobian with the last row and corner rebuilt from the
    // un-normalized eigenvalue, which stays regular at w = xi_m.
    const std::size_t a = state_c.a();
    const std::size_t b = state_c.b();
    const auto n = static_cast<Eigen::Index>(a + b);
    MatrixXcd ext(n + 1, n + 1);
    ext.topLeftCorner(n, n) = jacobian_theta(model, state_c);
    for (std::size_t k = 0; k < a; ++k)
      ext(n, static_cast<Eigen::Index>(k)) =
          lambda_tau_du(xi_m, state_c.u, state_c.v, k, model);
    for (std::size_t k = 0; k < b; ++k)
      ext(n, static_cast<Eigen::Index>(a + k)) =
          lambda_tau_dv(xi_m, state_c.u, state_c.v, k, model);
    for (std::size_t j = 0; j < a; ++j)
      ext(static_cast<Eigen::Index>(j), n) = delta(s, 1) - delta(s, 2);
    for (std::size_t j = 0; j < b; ++j)
      ext(static_cast<Eigen::Index>(a + j), n) = delta(s, 3) - delta(s, 2);
    ext(n, n) = lambda_corner(s, xi_m, state_c.u, state_c.v, model);

    const DetResult det = det_lu(ext);
    out.value = prefix * hab(state_c.u, state_c.v, c) * det.value / lam_b_m;
    out.cond = det.cond;
    return out;
  }

  const OmegaResult om = omega(state_c, state_b, c);
  const DetResult det = det_lu(n_matrix_offdiag(s, model, state_c, state_b, om.p));
  const cplx lam_c_m = eigenvalue(state_c, xi_m);
  out.value = prefix * (lam_c_m - lam_b_m) / om.values(om.p) *
              offdiag_prefactor(model, state_c, state_b) * det.value / lam_b_m;
  out.cond = det.cond;
  out.p = om.p + 1;
  return out;
}

}  // namespace su3ff
