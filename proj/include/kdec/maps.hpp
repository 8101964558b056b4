#pragma once

#include <string>
#include <utility>
#include <vector>

#include "bilinear.hpp"
#include "errors.hpp"
#include "hermitian_space.hpp"
#include "rational.hpp"
#include "tensor4.hpp"

namespace kdec {

// ---- contractions ----------------------------------------------------------

// rho(A)(x, y) = sum_i A(b_i, x, y, b_i).
inline Bilinear ricci(const Tensor4& A) {
  const int m = A.m;
  Bilinear r(m);
  for (int j = 0; j < m; ++j)
    for (int k = 0; k < m; ++k) {
      Rational s;
      for (int i = 0; i < m; ++i) s += A.at(i, j, k, i);
      r.at(j, k) = std::move(s);
    }
  return r;
}

// rho_13(A)(x, y) = sum_i A(b_i, x, b_i, y).
inline Bilinear ricci13(const Tensor4& A) {
  const int m = A.m;
  Bilinear r(m);
  for (int j = 0; j < m; ++j)
    for (int l = 0; l < m; ++l) {
      Rational s;
      for (int i = 0; i < m; ++i) s += A.at(i, j, i, l);
      r.at(j, l) = std::move(s);
    }
  return r;
}

struct Traces {
  Rational tau;
  Rational tau_j;
};

// tau = sum_{ij} A(b_i, b_j, b_j, b_i) = tr rho(A);
// tau_J = sum_{ij} A(b_i, J b_j, b_j, b_i).
inline Traces traces(const Tensor4& A) {
  const int m = A.m;
  Traces t;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      t.tau += A.at(i, j, j, i);
      t.tau_j += Rational(jsg(j)) * A.at(i, jdx(j), j, i);
    }
  return t;
}

// ---- splitting maps --------------------------------------------------------

// sigma_k(phi)(x, y) z, lowered. The four variants share the block
//   phi(x, z) y - phi(y, z) x - phi(x, Jz) Jy + phi(y, Jz) Jx
// and differ by the extra terms +2 phi(x, y) z (k = 3, 4) and
// -2 phi(x, Jy) Jz (k = 1, 4). Domains: S2+, S2-, L2+, L2- for k = 1..4.
inline Tensor4 sigma(int k, const Bilinear& phi) {
  if (k < 1 || k > 4) throw DomainViolation("sigma index must be in 1..4");
  const bool want_symmetric = (k == 1 || k == 2);
  const int want_parity = (k == 1 || k == 3) ? 1 : -1;
  if (want_symmetric ? !is_symmetric(phi) : !is_alternating(phi))
    throw WrongParity("sigma_" + std::to_string(k) +
                      (want_symmetric ? " requires a symmetric form"
                                      : " requires an alternating form"));
  if (!has_j_parity(phi, want_parity))
    throw WrongParity("sigma_" + std::to_string(k) + " requires J-parity " +
                      (want_parity > 0 ? "+1" : "-1"));
  const bool with_z_term = (k == 3 || k == 4);
  const bool with_jz_term = (k == 1 || k == 4);
  const int m = phi.m;
  Tensor4 r(m);
  const Rational two(2);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k3 = 0; k3 < m; ++k3) {
        r.at(i, j, k3, j) += phi.at(i, k3);
        r.at(i, j, k3, i) -= phi.at(j, k3);
        r.at(i, j, k3, jdx(j)) -=
            Rational(jsg(k3) * jsg(j)) * phi.at(i, jdx(k3));
        r.at(i, j, k3, jdx(i)) +=
            Rational(jsg(k3) * jsg(i)) * phi.at(j, jdx(k3));
        if (with_z_term) r.at(i, j, k3, k3) += two * phi.at(i, j);
        if (with_jz_term)
          r.at(i, j, k3, jdx(k3)) -=
              two * Rational(jsg(j) * jsg(k3)) * phi.at(i, jdx(j));
      }
  return r;
}

// theta(phi)(x, y, z, w) = phi(x, w)<y, z> - phi(y, w)<x, z>
//   + phi(x, Jw)<y, Jz> - phi(y, Jw)<x, Jz> - 2 phi(z, Jw)<x, Jy>.
// Domain: J-invariant forms whose symmetric part is trace-free and whose
// alternating part is orthogonal to the fundamental form.
inline Tensor4 theta(const Bilinear& phi) {
  if (!has_j_parity(phi, 1))
    throw WrongParity("theta requires a J-invariant form");
  if (trace_bilinear(phi) != 0)
    throw WrongParity("theta requires a trace-free form");
  if (inner_product(phi, omega_bilinear(phi.m)) != 0)
    throw WrongParity(
        "theta requires the alternating part orthogonal to the fundamental "
        "form");
  const int m = phi.m;
  Tensor4 r(m);
  const Rational two(2);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int l = 0; l < m; ++l) {
        r.at(i, j, j, l) += phi.at(i, l);
        r.at(i, j, i, l) -= phi.at(j, l);
        r.at(i, j, jdx(j), l) +=
            Rational(jsg(l) * jsg(jdx(j))) * phi.at(i, jdx(l));
        r.at(i, j, jdx(i), l) -=
            Rational(jsg(l) * jsg(jdx(i))) * phi.at(j, jdx(l));
      }
  for (int j = 0; j < m; ++j)
    for (int k = 0; k < m; ++k)
      for (int l = 0; l < m; ++l)
        r.at(jdx(j), j, k, l) -=
            two * Rational(jsg(l) * jsg(j)) * phi.at(k, jdx(l));
  return r;
}

// ---- conjugate operator ----------------------------------------------------

// T(A)(x, y, z, w) = A(x, y, z, Jw); T^2 = -id.
inline Tensor4 conjugate(const Tensor4& A) {
  const int m = A.m;
  Tensor4 r(m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k)
        for (int l = 0; l < m; ++l)
          r.at(i, j, k, l) = Rational(jsg(l)) * A.at(i, j, k, jdx(l));
  return r;
}

// ---- projectors on the Ricci-flat parity-plus part -------------------------

inline bool is_kaehler_plus(const Tensor4& A) {
  return is_kaehler_curvature(A) && has_first_pair_parity(A, 1);
}

inline bool is_kaehler_minus(const Tensor4& A) {
  return is_kaehler_curvature(A) && has_first_pair_parity(A, -1);
}

namespace detail {

inline void require_plus_ricci_flat(const Tensor4& A, const char* op) {
  if (!is_kaehler_plus(A))
    throw DomainViolation(std::string(op) +
                          " requires a parity-plus Kaehler curvature tensor");
  if (!ricci(A).is_zero())
    throw DomainViolation(std::string(op) + " requires a Ricci-flat tensor");
}

// Symmetric trace-free piece of rho_13(A).
inline Bilinear contraction13_symmetric_part(const Tensor4& A) {
  const int m = A.m;
  Bilinear b = ricci13(A);
  Bilinear s(m);
  const Rational half(1, 2);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      s.at(i, j) = (b.at(i, j) + b.at(j, i)) * half;
  const Rational c = trace_bilinear(s) / m;
  return s - metric_bilinear(m) * c;
}

// Alternating piece of rho_13(A), made orthogonal to the fundamental form.
inline Bilinear contraction13_alternating_part(const Tensor4& A) {
  const int m = A.m;
  Bilinear b = ricci13(A);
  Bilinear s(m);
  const Rational half(1, 2);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      s.at(i, j) = (b.at(i, j) - b.at(j, i)) * half;
  const Bilinear om = omega_bilinear(m);
  const Rational c = inner_product(s, om) / m;
  return s - om * c;
}

// Quarter average over the pair symmetries
// {id, (swap both pairs), (exchange pairs), (exchange and swap)}: fixes the
// last-pair-antisymmetric Ricci-flat tensors and annihilates the
// complementary pieces on its validity domain.
inline Tensor4 quarter_symmetrization(const Tensor4& A) {
  const int m = A.m;
  Tensor4 r(m);
  const Rational quarter(1, 4);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k)
        for (int l = 0; l < m; ++l)
          r.at(i, j, k, l) = (A.at(i, j, k, l) + A.at(j, i, l, k) +
                              A.at(k, l, i, j) + A.at(l, k, j, i)) *
                             quarter;
  return r;
}

}  // namespace detail

inline Tensor4 pi7(const Tensor4& A) {
  detail::require_plus_ricci_flat(A, "pi7");
  const int m = A.m;
  const Bilinear phi = detail::contraction13_symmetric_part(A);
  const Rational scale(-1, static_cast<long long>(m) * (m + 4));
  return (sigma(1, phi) * Rational(2) + theta(phi) * Rational(m + 2)) * scale;
}

inline Tensor4 pi8(const Tensor4& A) {
  detail::require_plus_ricci_flat(A, "pi8");
  const int m = A.m;
  const Bilinear psi = detail::contraction13_alternating_part(A);
  const Rational scale(-1, static_cast<long long>(m) * (m + 4));
  return (sigma(3, psi) * Rational(-2) + theta(psi) * Rational(m + 2)) * scale;
}

namespace detail {

// Removes the pieces recovered from rho_13 so the closed pair-symmetry
// formulas below apply on what is left.
inline Tensor4 contraction13_free_part(const Tensor4& A) {
  return A - pi7(A) - pi8(A);
}

inline Tensor4 pair_exchange_antisym_part(const Tensor4& R) {
  return quarter_symmetrization(R);
}

inline Tensor4 pair_exchange_sym_part(const Tensor4& R) {
  return -conjugate(quarter_symmetrization(conjugate(R)));
}

}  // namespace detail

inline Tensor4 pi9(const Tensor4& A) {
  detail::require_plus_ricci_flat(A, "pi9");
  return detail::pair_exchange_antisym_part(detail::contraction13_free_part(A));
}

inline Tensor4 pi10(const Tensor4& A) {
  detail::require_plus_ricci_flat(A, "pi10");
  return detail::pair_exchange_sym_part(detail::contraction13_free_part(A));
}

inline Tensor4 pi11(const Tensor4& A) {
  detail::require_plus_ricci_flat(A, "pi11");
  const Tensor4 r = detail::contraction13_free_part(A);
  return r - detail::pair_exchange_antisym_part(r) -
         detail::pair_exchange_sym_part(r);
}

// ---- Ricci splitting -------------------------------------------------------

// Splits A in one parity class of the Kaehler space as
//   A = (parts recovered from rho(A) through the sigma maps) + remainder,
// with rho(remainder) = 0. For parity +1 the recovered parts are the metric
// trace line, the fundamental-form line, and the trace-free symmetric /
// alternating pieces; for parity -1 the symmetric and alternating pieces.
struct RicciSplit {
  int parity = 1;
  Rational trace_coefficient;
  Rational omega_coefficient;
  Bilinear symmetric_part;
  Bilinear alternating_part;
  Tensor4 trace_component;
  Tensor4 omega_component;
  Tensor4 symmetric_component;
  Tensor4 alternating_component;
  Tensor4 remainder;
};

inline RicciSplit split_ricci(const Tensor4& A) {
  if (!is_kaehler_curvature(A))
    throw DomainViolation("split_ricci requires a Kaehler curvature tensor");
  const int m = A.m;
  RicciSplit out;
  if (has_first_pair_parity(A, 1))
    out.parity = 1;
  else if (has_first_pair_parity(A, -1))
    out.parity = -1;
  else
    throw DomainViolation(
        "split_ricci requires a definite first-pair parity");
  const Bilinear rho = ricci(A);
  const BilinearSplit parts = split_bilinear(rho);
  if (out.parity == 1) {
    const Bilinear g = metric_bilinear(m);
    const Bilinear om = omega_bilinear(m);
    out.trace_coefficient = trace_bilinear(rho) / m;
    out.omega_coefficient = inner_product(rho, om) / m;
    out.symmetric_part = parts.s_plus - g * out.trace_coefficient;
    out.alternating_part = parts.l_plus - om * out.omega_coefficient;
    const Rational scale(-1, m + 2);
    out.trace_component = sigma(1, g * out.trace_coefficient) * scale;
    out.omega_component = sigma(3, om * out.omega_coefficient) * scale;
    out.symmetric_component = sigma(1, out.symmetric_part) * scale;
    out.alternating_component = sigma(3, out.alternating_part) * scale;
  } else {
    if (m == 2)
      throw DegenerateDimension(
          "the sigma_2 rescaling 1/(2-m) is singular at m = 2");
    out.symmetric_part = parts.s_minus;
    out.alternating_part = parts.l_minus;
    out.trace_component = Tensor4(m);
    out.omega_component = Tensor4(m);
    out.symmetric_component =
        sigma(2, out.symmetric_part) * Rational(-1, m - 2);
    out.alternating_component =
        sigma(4, out.alternating_part) * Rational(-1, 2 + m);
  }
  out.remainder = A - out.trace_component - out.omega_component -
                  out.symmetric_component - out.alternating_component;
  return out;
}

// ---- full decomposition ----------------------------------------------------

enum class ComponentLabel : int {
  RTrace = 0,
  ChiTrace,
  S20PlusViaRho,
  L20PlusViaRho,
  W7,
  W8,
  W9,
  W10,
  W11,
  L2MinusViaRho,
  S2MinusViaRho,
  W12,
};

inline constexpr int kComponentCount = 12;

inline const char* component_label_name(ComponentLabel label) {
  switch (label) {
    case ComponentLabel::RTrace: return "r_trace";
    case ComponentLabel::ChiTrace: return "chi_trace";
    case ComponentLabel::S20PlusViaRho: return "s2_0_plus_via_rho";
    case ComponentLabel::L20PlusViaRho: return "l2_0_plus_via_rho";
    case ComponentLabel::W7: return "w7";
    case ComponentLabel::W8: return "w8";
    case ComponentLabel::W9: return "w9";
    case ComponentLabel::W10: return "w10";
    case ComponentLabel::W11: return "w11";
    case ComponentLabel::L2MinusViaRho: return "l2_minus_via_rho";
    case ComponentLabel::S2MinusViaRho: return "s2_minus_via_rho";
    case ComponentLabel::W12: return "w12";
  }
  throw DomainViolation("unknown component label");
}

struct LabeledComponent {
  ComponentLabel label;
  Tensor4 tensor;
};

struct Decomposition {
  Tensor4 input;
  std::vector<LabeledComponent> components;
  Tensor4 residual;
};

inline Decomposition decompose(const Tensor4& A) {
  if (auto v = first_kaehler_violation(A))
    throw NotKaehler("tensor is not a Kaehler curvature tensor: " +
                     v->constraint + " fails at (" +
                     std::to_string(v->indices[0]) + "," +
                     std::to_string(v->indices[1]) + "," +
                     std::to_string(v->indices[2]) + "," +
                     std::to_string(v->indices[3]) + ")");
  if (A.m < 4) throw DomainViolation("decompose requires m >= 4");
  const auto [plus, minus] = parity_split_tensor(A);
  const RicciSplit sp = split_ricci(plus);
  const RicciSplit sm = split_ricci(minus);

  const Tensor4 w7 = pi7(sp.remainder);
  const Tensor4 w8 = pi8(sp.remainder);
  const Tensor4 rest = sp.remainder - w7 - w8;
  const Tensor4 w9 = detail::pair_exchange_antisym_part(rest);
  const Tensor4 w10 = detail::pair_exchange_sym_part(rest);
  const Tensor4 w11 = rest - w9 - w10;

  Decomposition d;
  d.input = A;
  d.components = {
      {ComponentLabel::RTrace, sp.trace_component},
      {ComponentLabel::ChiTrace, sp.omega_component},
      {ComponentLabel::S20PlusViaRho, sp.symmetric_component},
      {ComponentLabel::L20PlusViaRho, sp.alternating_component},
      {ComponentLabel::W7, w7},
      {ComponentLabel::W8, w8},
      {ComponentLabel::W9, w9},
      {ComponentLabel::W10, w10},
      {ComponentLabel::W11, w11},
      {ComponentLabel::L2MinusViaRho, sm.alternating_component},
      {ComponentLabel::S2MinusViaRho, sm.symmetric_component},
      {ComponentLabel::W12, sm.remainder},
  };
  d.residual = A;
  for (const auto& c : d.components) d.residual = d.residual - c.tensor;
  return d;
}

// Formula-level membership test for each summand of the decomposition.
inline bool is_component_member(ComponentLabel label, const Tensor4& C) {
  const int m = C.m;
  const auto recovered_via = [&](int k, const Rational& scale) {
    return C == sigma(k, ricci(C)) * scale;
  };
  switch (label) {
    case ComponentLabel::RTrace: {
      const Bilinear rho = ricci(C);
      const Bilinear g = metric_bilinear(m);
      if (rho != g * (trace_bilinear(rho) / m)) return false;
      return recovered_via(1, Rational(-1, m + 2));
    }
    case ComponentLabel::ChiTrace: {
      const Bilinear rho = ricci(C);
      const Bilinear om = omega_bilinear(m);
      if (rho != om * (inner_product(rho, om) / m)) return false;
      return recovered_via(3, Rational(-1, m + 2));
    }
    case ComponentLabel::S20PlusViaRho: {
      const Bilinear rho = ricci(C);
      if (!is_symmetric(rho) || !has_j_parity(rho, 1) ||
          trace_bilinear(rho) != 0)
        return false;
      return recovered_via(1, Rational(-1, m + 2));
    }
    case ComponentLabel::L20PlusViaRho: {
      const Bilinear rho = ricci(C);
      if (!is_alternating(rho) || !has_j_parity(rho, 1) ||
          inner_product(rho, omega_bilinear(m)) != 0)
        return false;
      return recovered_via(3, Rational(-1, m + 2));
    }
    case ComponentLabel::S2MinusViaRho: {
      const Bilinear rho = ricci(C);
      if (!is_symmetric(rho) || !has_j_parity(rho, -1)) return false;
      if (m == 2) return C.is_zero();
      return recovered_via(2, Rational(-1, m - 2));
    }
    case ComponentLabel::L2MinusViaRho: {
      const Bilinear rho = ricci(C);
      if (!is_alternating(rho) || !has_j_parity(rho, -1)) return false;
      return recovered_via(4, Rational(-1, 2 + m));
    }
    case ComponentLabel::W7: {
      if (!is_kaehler_plus(C) || !ricci(C).is_zero()) return false;
      const Bilinear b = ricci13(C);
      if (!is_symmetric(b) || trace_bilinear(b) != 0) return false;
      return C == pi7(C);
    }
    case ComponentLabel::W8: {
      if (!is_kaehler_plus(C) || !ricci(C).is_zero()) return false;
      const Bilinear b = ricci13(C);
      if (!is_alternating(b) ||
          inner_product(b, omega_bilinear(m)) != 0)
        return false;
      return C == pi8(C);
    }
    case ComponentLabel::W9:
      return is_kaehler_plus(C) && ricci(C).is_zero() &&
             has_last_pair_symmetry(C, -1);
    case ComponentLabel::W10:
      return is_kaehler_plus(C) && ricci(C).is_zero() &&
             has_last_pair_symmetry(C, 1);
    case ComponentLabel::W11:
      return is_kaehler_plus(C) && ricci(C).is_zero() &&
             ricci13(C).is_zero() &&
             detail::pair_exchange_antisym_part(C).is_zero() &&
             detail::pair_exchange_sym_part(C).is_zero();
    case ComponentLabel::W12:
      return is_kaehler_minus(C) && ricci(C).is_zero();
  }
  throw DomainViolation("unknown component label");
}

}  // namespace kdec
