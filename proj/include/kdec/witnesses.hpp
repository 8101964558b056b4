#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "kdec/maps.hpp"
#include "kdec/spaces.hpp"

// Explicit irreducibility witnesses: distinguished tensors with known
// component tables, one- and two-parameter families of group elements,
// exact Laurent-coefficient extraction for their pullbacks, and scripted
// replays (sections 5.1 through 5.5) that confirm every stated component
// value by exact rational comparison.

namespace kdec {

namespace detail {

inline std::string basis_label(int i) {
  return (i % 2 == 0 ? "e" : "f") + std::to_string(i / 2 + 1);
}

inline std::string spot_name(const std::string& tensor, int i, int j, int k,
                             int l) {
  return tensor + "(" + basis_label(i) + "," + basis_label(j) + "," +
         basis_label(k) + "," + basis_label(l) + ")";
}

inline std::string spot_name(const std::string& bilinear, int i, int j) {
  return bilinear + "(" + basis_label(i) + "," + basis_label(j) + ")";
}

struct TableRow {
  int i, j, k, l;
  Rational value;
};

// Expands a component table by first-pair antisymmetry: each listed row
// (i, j, k, l, v) also fixes (j, i, k, l) = -v.
inline Tensor4 tensor_from_table(int m, const std::vector<TableRow>& rows) {
  Tensor4 t(m);
  for (const auto& r : rows) {
    t.at(r.i, r.j, r.k, r.l) = r.value;
    t.at(r.j, r.i, r.k, r.l) = -r.value;
  }
  return t;
}

inline Rational rational_pow(const Rational& base, int e) {
  if (e < 0) return Rational(1) / rational_pow(base, -e);
  Rational out(1);
  for (int q = 0; q < e; ++q) out *= base;
  return out;
}

// Group elements with small integer entries, used for the swap/rotation
// arguments and for orbit generation where exact arithmetic must stay cheap.

inline GroupElement pair_swap_element(int m, int a, int b) {
  Matrix P = Matrix::identity(m);
  const int ra = 2 * a, rb = 2 * b;
  P.at(ra, ra) = Rational(0);
  P.at(ra + 1, ra + 1) = Rational(0);
  P.at(rb, rb) = Rational(0);
  P.at(rb + 1, rb + 1) = Rational(0);
  P.at(rb, ra) = Rational(1);
  P.at(rb + 1, ra + 1) = Rational(1);
  P.at(ra, rb) = Rational(1);
  P.at(ra + 1, rb + 1) = Rational(1);
  return make_group_element(P);
}

inline GroupElement pair_sign_element(int m, int p) {
  Matrix F = Matrix::identity(m);
  F.at(2 * p, 2 * p) = Rational(-1);
  F.at(2 * p + 1, 2 * p + 1) = Rational(-1);
  return make_group_element(F);
}

inline GroupElement pair_rotation_element(int m, int p) {
  Matrix R = Matrix::identity(m);
  R.at(2 * p, 2 * p) = Rational(0);
  R.at(2 * p + 1, 2 * p + 1) = Rational(0);
  R.at(2 * p + 1, 2 * p) = Rational(1);
  R.at(2 * p, 2 * p + 1) = Rational(-1);
  return make_group_element(R);
}

inline GroupElement pair_shear_element(int m, int from, int to) {
  Matrix S = Matrix::identity(m);
  S.at(2 * to, 2 * from) = Rational(1);
  S.at(2 * to + 1, 2 * from + 1) = Rational(1);
  return make_group_element(S);
}

inline GroupElement pair_scale_element(int m, int p, const Rational& c) {
  Matrix D = Matrix::identity(m);
  D.at(2 * p, 2 * p) = c;
  D.at(2 * p + 1, 2 * p + 1) = c;
  return make_group_element(D);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Polynomial families of group elements

// g(eps) = G0 + eps G1 + ... + eps^d Gd with g(eps) invertible away from the
// roots of det g. The determinant is interpolated exactly at construction;
// when it is a monomial c eps^s, the Laurent window of any pullback component
// is provably [-s, 3d + (m-1)d - s] and coefficient extraction can certify
// its own degree bound.
class PolynomialFamily {
 public:
  explicit PolynomialFamily(std::vector<Matrix> coefficients)
      : coeffs_(std::move(coefficients)) {
    if (coeffs_.empty()) throw DomainViolation("family needs coefficients");
    m_ = static_cast<int>(coeffs_[0].rows());
    if (m_ < 2 || m_ % 2 != 0)
      throw DomainViolation("family matrices must act on an even dimension");
    for (const auto& G : coeffs_)
      if (G.rows() != static_cast<std::size_t>(m_) ||
          G.cols() != static_cast<std::size_t>(m_))
        throw SpaceMismatch("family coefficient shape mismatch");
    while (coeffs_.size() > 1 && coeffs_.back().is_zero()) coeffs_.pop_back();
    interpolate_determinant();
    classify_diagonal();
    probe_chi();
  }

  int space_dim() const { return m_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  int chi() const { return chi_; }
  const std::vector<Matrix>& coefficients() const { return coeffs_; }
  bool determinant_is_monomial() const { return det_monomial_; }
  const Rational& determinant_scale() const { return det_scale_; }
  int determinant_power() const { return det_power_; }
  bool monomial_diagonal() const { return diagonal_; }

  int diagonal_weight(int i) const {
    require_diagonal();
    return weights_[static_cast<std::size_t>(i)];
  }
  const Rational& diagonal_scale(int i) const {
    require_diagonal();
    return scales_[static_cast<std::size_t>(i)];
  }

  Matrix matrix_at(const Rational& eps) const {
    Matrix g(coeffs_[0].rows(), coeffs_[0].cols());
    Rational p(1);
    for (const auto& G : coeffs_) {
      if (!G.is_zero() && !p.is_zero()) g = g + G * p;
      p *= eps;
    }
    return g;
  }

  bool valid_at(const Rational& eps) const {
    return !matrix_at(eps).determinant().is_zero();
  }

  GroupElement element_at(const Rational& eps) const {
    return make_group_element(matrix_at(eps));
  }

 private:
  void interpolate_determinant() {
    const int bound = m_ * degree();
    const int npts = bound + 1;
    std::vector<Rational> pts, vals;
    for (int q = 0; static_cast<int>(pts.size()) < npts; ++q) {
      Rational eps = sample_point(q);
      pts.push_back(eps);
      vals.push_back(matrix_at(eps).determinant());
    }
    Matrix vand(npts, npts);
    for (int r = 0; r < npts; ++r) {
      Rational p(1);
      for (int c = 0; c < npts; ++c) {
        vand.at(r, c) = p;
        p *= pts[static_cast<std::size_t>(r)];
      }
    }
    Matrix rhs(npts, 1);
    for (int r = 0; r < npts; ++r) rhs.at(r, 0) = vals[static_cast<std::size_t>(r)];
    Matrix det_coeffs = vand.solve(rhs);
    int nonzero = 0;
    for (int k = 0; k < npts; ++k) {
      if (det_coeffs.at(k, 0).is_zero()) continue;
      ++nonzero;
      det_power_ = k;
      det_scale_ = det_coeffs.at(k, 0);
    }
    if (nonzero == 0)
      throw NotInvertible("family is singular at every parameter value");
    det_monomial_ = (nonzero == 1);
    if (!det_monomial_) {
      det_power_ = 0;
      det_scale_ = Rational(0);
    }
  }

  void classify_diagonal() {
    diagonal_ = true;
    weights_.assign(static_cast<std::size_t>(m_), 0);
    scales_.assign(static_cast<std::size_t>(m_), Rational(0));
    for (std::size_t k = 0; k < coeffs_.size() && diagonal_; ++k)
      for (int i = 0; i < m_ && diagonal_; ++i)
        for (int j = 0; j < m_; ++j)
          if (i != j && !coeffs_[k].at(i, j).is_zero()) {
            diagonal_ = false;
            break;
          }
    if (!diagonal_) return;
    for (int i = 0; i < m_; ++i) {
      int hits = 0;
      for (std::size_t k = 0; k < coeffs_.size(); ++k) {
        if (coeffs_[k].at(i, i).is_zero()) continue;
        ++hits;
        weights_[static_cast<std::size_t>(i)] = static_cast<int>(k);
        scales_[static_cast<std::size_t>(i)] = coeffs_[k].at(i, i);
      }
      if (hits != 1) {
        diagonal_ = false;
        return;
      }
    }
  }

  void probe_chi() {
    int seen = 0;
    for (int q = 0; q < 64 && seen < 2; ++q) {
      Rational eps = sample_point(q);
      if (!valid_at(eps)) continue;
      const GroupElement g = element_at(eps);
      if (seen == 0)
        chi_ = g.chi;
      else if (g.chi != chi_)
        throw DomainViolation("family chi is not constant");
      ++seen;
    }
    if (seen == 0)
      throw NotInvertible("family is singular at every sampled parameter");
  }

  void require_diagonal() const {
    if (!diagonal_)
      throw DomainViolation("family is not diagonal with monomial entries");
  }

  static Rational sample_point(int q) {
    // 1, -1, 2, -2, 3, -3, ...
    const int step = q / 2 + 1;
    return Rational(q % 2 == 0 ? step : -step);
  }

  int m_ = 0;
  std::vector<Matrix> coeffs_;
  int chi_ = 1;
  bool det_monomial_ = false;
  Rational det_scale_;
  int det_power_ = 0;
  bool diagonal_ = false;
  std::vector<int> weights_;
  std::vector<Rational> scales_;
};

// Scales the basis pair (e_p, f_p) by eps and fixes the rest; p is 1-based.
inline PolynomialFamily family_scale_pair(const HermitianSpace& V, int p) {
  if (p < 1 || p > V.n)
    throw DomainViolation("family_scale_pair: pair index out of range");
  Matrix G0 = Matrix::identity(V.m);
  Matrix G1(V.m, V.m);
  const int r = 2 * (p - 1);
  G0.at(r, r) = Rational(0);
  G0.at(r + 1, r + 1) = Rational(0);
  G1.at(r, r) = Rational(1);
  G1.at(r + 1, r + 1) = Rational(1);
  return PolynomialFamily({std::move(G0), std::move(G1)});
}

// e_1 scaled by eps along with f_1; duals pick up 1/eps.
inline PolynomialFamily family_g1(const HermitianSpace& V) {
  if (V.m < 4) throw DimensionTooSmall("family_g1 needs m >= 4");
  return family_scale_pair(V, 1);
}

// Unipotent shear e_1 -> e_1 - eps e_3, f_1 -> f_1 - eps f_3 (equivalently
// e^3 -> e^3 + eps e^1 and f^3 -> f^3 + eps f^1 on duals). This is the
// orientation that reproduces the stated first-derivative component table.
inline PolynomialFamily family_g2(const HermitianSpace& V) {
  if (V.m < 6) throw DimensionTooSmall("family_g2 needs m >= 6");
  Matrix G0 = Matrix::identity(V.m);
  Matrix G1(V.m, V.m);
  G1.at(4, 0) = Rational(-1);
  G1.at(5, 1) = Rational(-1);
  return PolynomialFamily({std::move(G0), std::move(G1)});
}

// Scales the third pair (e_3, f_3) by eps.
inline PolynomialFamily family_g_eps3(const HermitianSpace& V) {
  if (V.m < 6) throw DimensionTooSmall("family_g_eps3 needs m >= 6");
  return family_scale_pair(V, 3);
}

// ---------------------------------------------------------------------------
// Laurent-coefficient extraction

// Full expansion of g(eps)* A as a finite Laurent polynomial: exponent ->
// coefficient tensor, zero coefficients omitted. Diagonal monomial families
// use exact weight filtering; general families interpolate on a certified
// window and re-check the result at two extra parameter values.
inline std::map<int, Tensor4> laurent_expansion(const PolynomialFamily& family,
                                                const Tensor4& A) {
  const int m = A.m;
  if (family.space_dim() != m)
    throw SpaceMismatch("family and tensor live on different spaces");
  std::map<int, Tensor4> out;
  if (family.monomial_diagonal()) {
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        for (int k = 0; k < m; ++k)
          for (int l = 0; l < m; ++l) {
            const Rational& v = A.at(i, j, k, l);
            if (v.is_zero()) continue;
            const int w = family.diagonal_weight(i) + family.diagonal_weight(j) +
                          family.diagonal_weight(k) - family.diagonal_weight(l);
            const Rational scale = family.diagonal_scale(i) *
                                   family.diagonal_scale(j) *
                                   family.diagonal_scale(k) /
                                   family.diagonal_scale(l);
            auto it = out.try_emplace(w, Tensor4(m)).first;
            it->second.at(i, j, k, l) = v * scale;
          }
    return out;
  }
  if (!family.determinant_is_monomial())
    throw DegreeBoundExceeded(
        "family determinant is not a monomial; Laurent window cannot be "
        "certified");
  const int d = family.degree();
  const int s = family.determinant_power();
  const int lo = -s;
  const int hi = 3 * d + (m - 1) * d - s;
  const int npts = hi - lo + 1;
  std::vector<Rational> pts;
  std::vector<Tensor4> samples;
  for (int q = 0; static_cast<int>(pts.size()) < npts + 2; ++q) {
    const int step = q / 2 + 1;
    Rational eps(q % 2 == 0 ? step : -step);
    if (!family.valid_at(eps)) continue;
    pts.push_back(eps);
    samples.push_back(pullback_tensor(family.element_at(eps), A));
  }
  Matrix vand(npts, npts);
  for (int r = 0; r < npts; ++r) {
    Rational p(1);
    for (int c = 0; c < npts; ++c) {
      vand.at(r, c) = p;
      p *= pts[static_cast<std::size_t>(r)];
    }
  }
  const Matrix vinv = vand.inverse();
  std::vector<Tensor4> coeffs(static_cast<std::size_t>(npts), Tensor4(m));
  for (int t = 0; t < npts; ++t) {
    const Rational shift =
        detail::rational_pow(pts[static_cast<std::size_t>(t)], -lo);
    const Tensor4 rhs = samples[static_cast<std::size_t>(t)] * shift;
    for (int q = 0; q < npts; ++q) {
      const Rational& w = vinv.at(q, t);
      if (w.is_zero()) continue;
      coeffs[static_cast<std::size_t>(q)] =
          coeffs[static_cast<std::size_t>(q)] + rhs * w;
    }
  }
  for (int extra = npts; extra < npts + 2; ++extra) {
    const Rational& eps = pts[static_cast<std::size_t>(extra)];
    Tensor4 rebuilt(m);
    for (int q = 0; q < npts; ++q) {
      if (coeffs[static_cast<std::size_t>(q)].is_zero()) continue;
      rebuilt = rebuilt + coeffs[static_cast<std::size_t>(q)] *
                              detail::rational_pow(eps, lo + q);
    }
    if (rebuilt != samples[static_cast<std::size_t>(extra)])
      throw DegreeBoundExceeded(
          "interpolated pullback disagrees at a verification point");
  }
  for (int q = 0; q < npts; ++q)
    if (!coeffs[static_cast<std::size_t>(q)].is_zero())
      out.emplace(lo + q, std::move(coeffs[static_cast<std::size_t>(q)]));
  return out;
}

// Coefficient of eps^k in g(eps)* A; exponents outside the expansion are zero.
inline Tensor4 laurent_coefficient(const PolynomialFamily& family,
                                   const Tensor4& A, int k) {
  std::map<int, Tensor4> expansion = laurent_expansion(family, A);
  const auto it = expansion.find(k);
  if (it == expansion.end()) return Tensor4(A.m);
  return std::move(it->second);
}

// Coefficient of eps_a^{ka} eps_b^{kb} in (g_a(eps_a) g_b(eps_b))* A for two
// commuting families. Both parameters are eliminated by weight filtering when
// the families are diagonal; otherwise the outer parameter is interpolated
// and the inner extraction runs per sample.
inline Tensor4 laurent_coefficient2(const PolynomialFamily& family_a,
                                    const PolynomialFamily& family_b,
                                    const Tensor4& A, int ka, int kb) {
  const int m = A.m;
  if (family_a.space_dim() != m || family_b.space_dim() != m)
    throw SpaceMismatch("family and tensor live on different spaces");
  if (family_a.monomial_diagonal() && family_b.monomial_diagonal()) {
    Tensor4 out(m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        for (int k = 0; k < m; ++k)
          for (int l = 0; l < m; ++l) {
            const Rational& v = A.at(i, j, k, l);
            if (v.is_zero()) continue;
            const int wa = family_a.diagonal_weight(i) +
                           family_a.diagonal_weight(j) +
                           family_a.diagonal_weight(k) -
                           family_a.diagonal_weight(l);
            if (wa != ka) continue;
            const int wb = family_b.diagonal_weight(i) +
                           family_b.diagonal_weight(j) +
                           family_b.diagonal_weight(k) -
                           family_b.diagonal_weight(l);
            if (wb != kb) continue;
            const Rational scale_a = family_a.diagonal_scale(i) *
                                     family_a.diagonal_scale(j) *
                                     family_a.diagonal_scale(k) /
                                     family_a.diagonal_scale(l);
            const Rational scale_b = family_b.diagonal_scale(i) *
                                     family_b.diagonal_scale(j) *
                                     family_b.diagonal_scale(k) /
                                     family_b.diagonal_scale(l);
            out.at(i, j, k, l) = v * scale_a * scale_b;
          }
    return out;
  }
  if (!family_a.determinant_is_monomial())
    throw DegreeBoundExceeded(
        "outer family determinant is not a monomial; Laurent window cannot "
        "be certified");
  const int d = family_a.degree();
  const int s = family_a.determinant_power();
  const int lo = -s;
  const int hi = 3 * d + (m - 1) * d - s;
  const int npts = hi - lo + 1;
  std::vector<Rational> pts;
  std::vector<Tensor4> inner;
  for (int q = 0; static_cast<int>(pts.size()) < npts + 2; ++q) {
    const int step = q / 2 + 1;
    Rational eps(q % 2 == 0 ? step : -step);
    if (!family_a.valid_at(eps)) continue;
    pts.push_back(eps);
    inner.push_back(laurent_coefficient(
        family_b, pullback_tensor(family_a.element_at(eps), A), kb));
  }
  Matrix vand(npts, npts);
  for (int r = 0; r < npts; ++r) {
    Rational p(1);
    for (int c = 0; c < npts; ++c) {
      vand.at(r, c) = p;
      p *= pts[static_cast<std::size_t>(r)];
    }
  }
  const Matrix vinv = vand.inverse();
  std::vector<Tensor4> coeffs(static_cast<std::size_t>(npts), Tensor4(m));
  for (int t = 0; t < npts; ++t) {
    const Rational shift =
        detail::rational_pow(pts[static_cast<std::size_t>(t)], -lo);
    const Tensor4 rhs = inner[static_cast<std::size_t>(t)] * shift;
    for (int q = 0; q < npts; ++q) {
      const Rational& w = vinv.at(q, t);
      if (w.is_zero()) continue;
      coeffs[static_cast<std::size_t>(q)] =
          coeffs[static_cast<std::size_t>(q)] + rhs * w;
    }
  }
  for (int extra = npts; extra < npts + 2; ++extra) {
    const Rational& eps = pts[static_cast<std::size_t>(extra)];
    Tensor4 rebuilt(m);
    for (int q = 0; q < npts; ++q) {
      if (coeffs[static_cast<std::size_t>(q)].is_zero()) continue;
      rebuilt = rebuilt + coeffs[static_cast<std::size_t>(q)] *
                              detail::rational_pow(eps, lo + q);
    }
    if (rebuilt != inner[static_cast<std::size_t>(extra)])
      throw DegreeBoundExceeded(
          "interpolated pullback disagrees at a verification point");
  }
  if (ka < lo || ka > hi) return Tensor4(m);
  return coeffs[static_cast<std::size_t>(ka - lo)];
}

// ---------------------------------------------------------------------------
// Witness tensors

namespace detail {

inline std::vector<TableRow> w9_table_rows() {
  return {{0, 1, 0, 3, Rational(-1)}, {0, 1, 1, 2, Rational(1)},
          {0, 1, 2, 1, Rational(-1)}, {0, 1, 3, 0, Rational(1)},
          {0, 3, 0, 1, Rational(-1)}, {0, 3, 1, 0, Rational(1)},
          {0, 3, 2, 3, Rational(1)},  {0, 3, 3, 2, Rational(-1)},
          {1, 2, 0, 1, Rational(1)},  {1, 2, 1, 0, Rational(-1)},
          {1, 2, 2, 3, Rational(-1)}, {1, 2, 3, 2, Rational(1)},
          {2, 3, 0, 3, Rational(1)},  {2, 3, 1, 2, Rational(-1)},
          {2, 3, 2, 1, Rational(1)},  {2, 3, 3, 0, Rational(-1)}};
}

inline std::vector<TableRow> w11_table_rows() {
  return {{0, 2, 0, 4, Rational(1)},  {0, 2, 1, 5, Rational(1)},
          {0, 3, 0, 5, Rational(-1)}, {0, 3, 1, 4, Rational(1)},
          {0, 4, 0, 2, Rational(-1)}, {0, 4, 1, 3, Rational(-1)},
          {0, 5, 0, 3, Rational(1)},  {0, 5, 1, 2, Rational(-1)},
          {1, 2, 0, 5, Rational(1)},  {1, 2, 1, 4, Rational(-1)},
          {1, 3, 0, 4, Rational(1)},  {1, 3, 1, 5, Rational(1)},
          {1, 4, 0, 3, Rational(-1)}, {1, 4, 1, 2, Rational(1)},
          {1, 5, 0, 2, Rational(-1)}, {1, 5, 1, 3, Rational(-1)}};
}

inline std::vector<TableRow> w11_dual_table_rows() {
  return {{0, 2, 0, 5, Rational(-1)}, {0, 2, 1, 4, Rational(1)},
          {0, 3, 0, 4, Rational(-1)}, {0, 3, 1, 5, Rational(-1)},
          {0, 4, 0, 3, Rational(1)},  {0, 4, 1, 2, Rational(-1)},
          {0, 5, 0, 2, Rational(1)},  {0, 5, 1, 3, Rational(1)},
          {1, 2, 0, 4, Rational(1)},  {1, 2, 1, 5, Rational(1)},
          {1, 3, 0, 5, Rational(-1)}, {1, 3, 1, 4, Rational(1)},
          {1, 4, 0, 2, Rational(-1)}, {1, 4, 1, 3, Rational(-1)},
          {1, 5, 0, 3, Rational(1)},  {1, 5, 1, 2, Rational(-1)}};
}

inline std::vector<TableRow> derivative_table_rows() {
  return {{0, 1, 2, 5, Rational(-1)}, {0, 1, 3, 4, Rational(1)},
          {0, 3, 0, 5, Rational(-1)}, {0, 3, 1, 4, Rational(1)},
          {1, 2, 0, 5, Rational(1)},  {1, 2, 1, 4, Rational(-1)},
          {2, 3, 2, 5, Rational(1)},  {2, 3, 3, 4, Rational(-1)}};
}

inline std::vector<TableRow> limit_table_rows_53() {
  return {{0, 2, 0, 4, Rational(1)},  {0, 2, 1, 5, Rational(1)},
          {0, 3, 0, 5, Rational(-1)}, {0, 3, 1, 4, Rational(1)},
          {1, 2, 0, 5, Rational(1)},  {1, 2, 1, 4, Rational(-1)},
          {1, 3, 0, 4, Rational(1)},  {1, 3, 1, 5, Rational(1)}};
}

}  // namespace detail

// The 16-entry generator of W9 (32 stored components after first-pair
// antisymmetry). Membership is re-checked at construction.
inline Tensor4 witness_w9(const HermitianSpace& V) {
  if (V.m < 4) throw DimensionTooSmall("witness_w9 needs m >= 4");
  Tensor4 A = detail::tensor_from_table(V.m, detail::w9_table_rows());
  if (!is_component_member(ComponentLabel::W9, A))
    throw DomainViolation("witness_w9 table violates the W9 predicates");
  return A;
}

// The 16-entry generator of W11; lives in the joint kernel of both
// contractions with vanishing pair-exchange parts.
inline Tensor4 witness_w11(const HermitianSpace& V) {
  if (V.m < 6) throw DimensionTooSmall("witness_w11 needs m >= 6");
  Tensor4 A = detail::tensor_from_table(V.m, detail::w11_table_rows());
  if (!is_component_member(ComponentLabel::W11, A))
    throw DomainViolation("witness_w11 table violates the W11 predicates");
  return A;
}

// ---------------------------------------------------------------------------
// Replay reports

struct WitnessCheck {
  std::string name;
  bool passed = false;
  std::string expected;
  std::string actual;
};

struct WitnessReport {
  std::string section;
  int m = 0;
  std::vector<WitnessCheck> checks;

  bool all_passed() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return true;
  }
};

namespace detail {

inline void check_bool(WitnessReport& rep, std::string name, bool ok) {
  rep.checks.push_back(
      {std::move(name), ok, "true", ok ? "true" : "false"});
}

inline void check_value(WitnessReport& rep, std::string name,
                        const Rational& got, const Rational& want) {
  rep.checks.push_back({std::move(name), got == want, format_rational(want),
                        format_rational(got)});
}

inline void check_abs_at_most(WitnessReport& rep, std::string name,
                              const Rational& got, const Rational& bound) {
  const bool ok = got <= bound && got >= -bound;
  rep.checks.push_back({std::move(name), ok, "|.| <= " + format_rational(bound),
                        format_rational(got)});
}

inline void check_abs_at_least(WitnessReport& rep, std::string name,
                               const Rational& got, const Rational& bound) {
  const bool ok = got >= bound || got <= -bound;
  rep.checks.push_back({std::move(name), ok, "|.| >= " + format_rational(bound),
                        format_rational(got)});
}

inline void check_tensor(WitnessReport& rep, std::string name,
                         const Tensor4& got, const Tensor4& want) {
  const bool ok = got == want;
  rep.checks.push_back({std::move(name), ok, "componentwise equality",
                        ok ? "equal" : "differs"});
}

inline void check_bilinear(WitnessReport& rep, std::string name,
                           const Bilinear& got, const Bilinear& want) {
  const bool ok = got == want;
  rep.checks.push_back({std::move(name), ok, "componentwise equality",
                        ok ? "equal" : "differs"});
}

// Shared 5.1 material: the W9 witness and its scaling-limit descendants.
struct Section51Data {
  Tensor4 A;
  Tensor4 B1, B2;
  Tensor4 B1s_plus_B2s;
  bool has_B3 = false;
  Tensor4 B3;
};

inline Section51Data section51_data(const HermitianSpace& V) {
  Section51Data data{Tensor4(V.m), Tensor4(V.m), Tensor4(V.m), Tensor4(V.m),
                     false, Tensor4(V.m)};
  data.A = witness_w9(V);
  data.B1 = laurent_coefficient(family_g1(V), data.A, -1);
  data.B2 = pullback_tensor(pair_swap_element(V.m, 0, 1), data.B1);
  data.B1s_plus_B2s = conjugate(data.B1) + conjugate(data.B2);
  if (V.m >= 6) {
    data.has_B3 = true;
    data.B3 = laurent_coefficient(family_g2(V), data.A, 1);
  }
  return data;
}

inline WitnessReport replay_51(const HermitianSpace& V) {
  WitnessReport rep{"5.1", V.m, {}};
  const Section51Data data = section51_data(V);
  const Tensor4& A = data.A;
  check_bool(rep, "A lies in W9", is_component_member(ComponentLabel::W9, A));

  const std::map<int, Tensor4> exp1 = laurent_expansion(family_g1(V), A);
  check_bool(rep, "g1 pullback has no exponent below eps^-1",
             exp1.empty() || exp1.begin()->first >= -1);
  const Tensor4& B1 = data.B1;
  check_value(rep, spot_name("B1", 2, 3, 2, 1), B1.at(2, 3, 2, 1), Rational(1));
  check_value(rep, spot_name("B1", 2, 3, 3, 0), B1.at(2, 3, 3, 0),
              Rational(-1));
  check_tensor(rep, "B1 support matches its stated table", B1,
               tensor_from_table(V.m, {{2, 3, 2, 1, Rational(1)},
                                       {2, 3, 3, 0, Rational(-1)}}));
  const Bilinear r13_B1 = ricci13(B1);
  check_value(rep, spot_name("rho13(B1)", 2, 0), r13_B1.at(2, 0), Rational(1));
  check_value(rep, spot_name("rho13(B1)", 3, 1), r13_B1.at(3, 1), Rational(1));
  {
    Bilinear expected(V.m);
    expected.at(2, 0) = Rational(1);
    expected.at(3, 1) = Rational(1);
    check_bilinear(rep, "rho13(B1) support matches its stated table", r13_B1,
                   expected);
  }

  const Tensor4& B2 = data.B2;
  check_value(rep, spot_name("B2", 0, 1, 0, 3), B2.at(0, 1, 0, 3), Rational(1));
  check_value(rep, spot_name("B2", 0, 1, 1, 2), B2.at(0, 1, 1, 2),
              Rational(-1));
  const Bilinear r13_B2 = ricci13(B2);
  check_value(rep, spot_name("rho13(B2)", 0, 2), r13_B2.at(0, 2), Rational(1));
  check_value(rep, spot_name("rho13(B2)", 1, 3), r13_B2.at(1, 3), Rational(1));

  check_bool(rep, "pi7(B1 + B2) is nonzero", !pi7(B1 + B2).is_zero());
  check_bool(rep, "pi8(B1 - B2) is nonzero", !pi8(B1 - B2).is_zero());

  const Tensor4& Bs = data.B1s_plus_B2s;
  check_value(rep, spot_name("B1* + B2*", 0, 1, 0, 2), Bs.at(0, 1, 0, 2),
              Rational(1));
  check_value(rep, spot_name("B1* + B2*", 0, 1, 1, 3), Bs.at(0, 1, 1, 3),
              Rational(1));
  check_value(rep, spot_name("B1* + B2*", 2, 3, 2, 0), Bs.at(2, 3, 2, 0),
              Rational(1));
  check_value(rep, spot_name("B1* + B2*", 2, 3, 3, 1), Bs.at(2, 3, 3, 1),
              Rational(1));
  const Bilinear r13_Bs = ricci13(Bs);
  check_value(rep, spot_name("rho13(B1* + B2*)", 1, 2), r13_Bs.at(1, 2),
              Rational(1));
  check_value(rep, spot_name("rho13(B1* + B2*)", 2, 1), r13_Bs.at(2, 1),
              Rational(-1));
  check_value(rep, spot_name("rho13(B1* + B2*)", 3, 0), r13_Bs.at(3, 0),
              Rational(1));
  check_value(rep, spot_name("rho13(B1* + B2*)", 0, 3), r13_Bs.at(0, 3),
              Rational(-1));
  check_bool(rep, "rho13(B1* + B2*) is alternating", is_alternating(r13_Bs));
  check_value(rep, "pi9(B1* + B2*)" + spot_name("", 0, 1, 0, 2),
              pi9(Bs).at(0, 1, 0, 2), Rational(1, 4));
  check_bool(rep, "pi10(B1 + B2) is nonzero", !pi10(B1 + B2).is_zero());

  if (!data.has_B3) {
    check_bool(rep, "B3 branch skipped (needs m >= 6)", true);
    return rep;
  }
  const std::map<int, Tensor4> exp2 = laurent_expansion(family_g2(V), A);
  check_bool(rep, "g2 pullback has no negative exponents",
             exp2.empty() || exp2.begin()->first >= 0);
  const auto zeroth = exp2.find(0);
  check_bool(rep, "g2 pullback at eps = 0 recovers A",
             zeroth != exp2.end() && zeroth->second == A);
  const Tensor4& B3 = data.B3;
  for (const TableRow& row : derivative_table_rows())
    check_value(rep, spot_name("B3", row.i, row.j, row.k, row.l),
                B3.at(row.i, row.j, row.k, row.l), row.value);
  check_tensor(rep, "B3 support matches its stated table", B3,
               tensor_from_table(V.m, derivative_table_rows()));
  check_bool(rep, "B3 lies in K+ with vanishing ricci",
             is_kaehler_plus(B3) && ricci(B3).is_zero());
  check_bool(rep, "B3 lies in ker rho13", ricci13(B3).is_zero());
  check_abs_at_most(rep, "pi9(B3)" + spot_name("", 0, 1, 2, 5),
                    pi9(B3).at(0, 1, 2, 5), Rational(1, 4));
  check_abs_at_most(rep, "pi10(B3)" + spot_name("", 0, 1, 2, 5),
                    pi10(B3).at(0, 1, 2, 5), Rational(1, 4));
  check_abs_at_least(rep, "pi11(B3)" + spot_name("", 0, 1, 2, 5),
                     pi11(B3).at(0, 1, 2, 5), Rational(1, 2));
  check_value(rep,
              "pi11(B3)" + spot_name("", 0, 1, 2, 4) +
                  " (the lower bound is attained at " +
                  spot_name("B3", 0, 1, 2, 5) + " instead)",
              pi11(B3).at(0, 1, 2, 4), Rational(0));
  return rep;
}

inline WitnessReport replay_52(const HermitianSpace& V) {
  WitnessReport rep{"5.2", V.m, {}};
  const int m = V.m;
  Bilinear phi(m);
  phi.at(0, 2) = Rational(1);
  phi.at(2, 0) = Rational(1);
  phi.at(1, 3) = Rational(1);
  phi.at(3, 1) = Rational(1);
  check_bool(rep, "phi lies in S2_{0,+}",
             basis_bilinear_family(V, BilinearFamily::S20Plus).contains(phi));

  const Tensor4 A = (sigma(1, phi) * Rational(2) + theta(phi) * Rational(m + 2)) *
                    Rational(-1, m * (m + 4));
  check_bilinear(rep, "rho13(A) recovers phi", ricci13(A), phi);
  check_bool(rep, "A lies in W7", is_component_member(ComponentLabel::W7, A));

  check_value(rep, "sigma1(phi)" + spot_name("", 2, 3, 2, 0),
              sigma(1, phi).at(2, 3, 2, 0), Rational(0));
  check_value(rep, "sigma1(phi)" + spot_name("", 2, 3, 2, 1),
              sigma(1, phi).at(2, 3, 2, 1), Rational(0));
  check_value(rep, "theta(phi)" + spot_name("", 2, 3, 2, 0),
              theta(phi).at(2, 3, 2, 0), Rational(0));
  check_value(rep, "theta(phi)" + spot_name("", 2, 3, 2, 1),
              theta(phi).at(2, 3, 2, 1), Rational(-4));

  const Rational c1 = A.at(2, 3, 2, 0);
  const Rational c2 = A.at(2, 3, 2, 1);
  check_value(rep, "c1 = " + spot_name("A", 2, 3, 2, 0), c1, Rational(0));
  check_bool(rep, "c2 = " + spot_name("A", 2, 3, 2, 1) + " is nonzero",
             !c2.is_zero());
  check_value(rep, "c2 agrees with 4(m+2)/(m(m+4))", c2,
              Rational(4 * (m + 2)) / Rational(m * (m + 4)));

  const GroupElement Phi = pair_sign_element(m, 0);
  check_bool(rep, "Phi is unitary", Phi.unitary);
  check_bool(rep, "Phi pullback negates phi",
             pullback_bilinear(Phi, phi) == -phi);
  check_bool(rep, "Phi pullback negates A", pullback_tensor(Phi, A) == -A);

  const Tensor4 B = laurent_coefficient2(family_scale_pair(V, 1),
                                         family_scale_pair(V, 2), A, -1, 3);
  check_value(rep, spot_name("B", 2, 3, 2, 0), B.at(2, 3, 2, 0), Rational(0));
  check_value(rep, spot_name("B", 2, 3, 2, 1), B.at(2, 3, 2, 1), c2);
  check_value(rep, spot_name("B", 2, 3, 3, 0), B.at(2, 3, 3, 0), -c2);
  check_value(rep, spot_name("B", 2, 3, 3, 1), B.at(2, 3, 3, 1), Rational(0));
  check_tensor(rep, "B support matches its stated table", B,
               tensor_from_table(m, {{2, 3, 2, 1, c2}, {2, 3, 3, 0, -c2}}));
  const Bilinear r13_B = ricci13(B);
  check_value(rep, spot_name("rho13(B)", 2, 0), r13_B.at(2, 0), c2);
  check_value(rep, spot_name("rho13(B)", 3, 1), r13_B.at(3, 1), c2);

  const GroupElement u = pair_swap_element(m, 0, 1);
  check_bool(rep, "index swap preserves phi", pullback_bilinear(u, phi) == phi);
  const Tensor4 Bt = pullback_tensor(u, B);
  check_value(rep, spot_name("B~", 0, 1, 1, 2), Bt.at(0, 1, 1, 2), -c2);
  check_value(rep, spot_name("B~", 0, 1, 0, 3), Bt.at(0, 1, 0, 3), c2);
  const Bilinear r13_Bt = ricci13(Bt);
  check_value(rep, spot_name("rho13(B~)", 0, 2), r13_Bt.at(0, 2), c2);
  check_value(rep, spot_name("rho13(B~)", 1, 3), r13_Bt.at(1, 3), c2);

  const Tensor4 D = B - Bt;
  check_bool(rep, "rho13(B - B~) is alternating", is_alternating(ricci13(D)));
  check_value(rep, "pi9(B - B~)" + spot_name("", 2, 3, 2, 1),
              pi9(D).at(2, 3, 2, 1), c2 / Rational(4));
  return rep;
}

inline WitnessReport replay_53(const HermitianSpace& V) {
  WitnessReport rep{"5.3", V.m, {}};
  const int m = V.m;
  const Tensor4 A = witness_w11(V);
  check_bool(rep, "A lies in K+ with vanishing ricci and ricci13",
             is_kaehler_plus(A) && ricci(A).is_zero() && ricci13(A).is_zero());
  check_bool(rep, "pi9(A) vanishes", pi9(A).is_zero());
  check_bool(rep, "pi10(A) vanishes", pi10(A).is_zero());
  check_bool(rep, "A lies in W11", is_component_member(ComponentLabel::W11, A));
  check_tensor(rep, "A* matches its stated 16-entry table", conjugate(A),
               tensor_from_table(m, w11_dual_table_rows()));

  const std::map<int, Tensor4> exp = laurent_expansion(family_g_eps3(V), A);
  check_bool(rep, "g pullback has no exponent below eps^-1",
             exp.empty() || exp.begin()->first >= -1);
  const Tensor4 B = laurent_coefficient(family_g_eps3(V), A, -1);
  check_tensor(rep, "B matches its stated 8-entry table", B,
               tensor_from_table(m, limit_table_rows_53()));
  check_bool(rep, "rho(B) vanishes", ricci(B).is_zero());
  check_bool(rep, "rho13(B) vanishes", ricci13(B).is_zero());
  check_value(rep, "pi9(B)" + spot_name("", 0, 2, 0, 4), pi9(B).at(0, 2, 0, 4),
              Rational(1, 4));
  check_value(rep, "pi10(B)" + spot_name("", 0, 2, 0, 4),
              pi10(B).at(0, 2, 0, 4), Rational(1, 4));
  return rep;
}

inline WitnessReport replay_54(const HermitianSpace& V) {
  WitnessReport rep{"5.4", V.m, {}};
  const Subspace w9 = w_space(V, 9);
  const Subspace w10 = w_space(V, 10);
  bool w10_into_w9 = true;
  for (const Tensor4& b : w10.tensor_basis())
    if (!w9.contains(conjugate(b))) {
      w10_into_w9 = false;
      break;
    }
  check_bool(rep, "duality maps W10 into W9", w10_into_w9);
  bool w9_into_w10 = true;
  for (const Tensor4& b : w9.tensor_basis())
    if (!w10.contains(conjugate(b))) {
      w9_into_w10 = false;
      break;
    }
  check_bool(rep, "duality maps W9 into W10", w9_into_w10);
  check_bool(rep, "dim W9 equals dim W10", w9.dim() == w10.dim());
  std::vector<Tensor4> images;
  for (const Tensor4& b : w10.tensor_basis()) images.push_back(conjugate(b));
  check_bool(rep, "duality carries W10 onto W9",
             Subspace::span(V.m, images) == w9);
  return rep;
}

inline WitnessReport replay_55(const HermitianSpace& V) {
  WitnessReport rep{"5.5", V.m, {}};
  const Subspace w7 = w_space(V, 7);
  const Subspace w8 = w_space(V, 8);
  bool w8_into_w7 = true;
  for (const Tensor4& b : w8.tensor_basis())
    if (!w7.contains(conjugate(b))) {
      w8_into_w7 = false;
      break;
    }
  check_bool(rep, "duality maps W8 into W7", w8_into_w7);
  bool w7_into_w8 = true;
  for (const Tensor4& b : w7.tensor_basis())
    if (!w8.contains(conjugate(b))) {
      w7_into_w8 = false;
      break;
    }
  check_bool(rep, "duality maps W7 into W8", w7_into_w8);
  check_bool(rep, "dim W7 equals dim W8", w7.dim() == w8.dim());
  std::vector<Tensor4> images;
  for (const Tensor4& b : w8.tensor_basis()) images.push_back(conjugate(b));
  check_bool(rep, "duality carries W8 onto W7",
             Subspace::span(V.m, images) == w7);
  return rep;
}

}  // namespace detail

// Runs one scripted section end to end. Failing checks are reported in the
// result, never thrown; only precondition violations raise.
inline WitnessReport replay_section(const std::string& label,
                                    const HermitianSpace& V) {
  if (V.m < 4) throw DimensionTooSmall("replay_section needs m >= 4");
  if (label == "5.1") return detail::replay_51(V);
  if (label == "5.2") return detail::replay_52(V);
  if (label == "5.3") {
    if (V.m < 6) throw DimensionTooSmall("section 5.3 needs m >= 6");
    return detail::replay_53(V);
  }
  if (label == "5.4") return detail::replay_54(V);
  if (label == "5.5") return detail::replay_55(V);
  throw DomainViolation("unknown section label '" + label + "'");
}

// ---------------------------------------------------------------------------
// Orbit span checks

struct OrbitSpanResult {
  bool spans = false;
  int achieved_dim = 0;
  int target_dim = 0;
  // W indices (7..11) whose subspace is not contained in the achieved span;
  // filled only when the span falls short.
  std::vector<int> missed_w;

  explicit operator bool() const { return spans; }
};

// The W9 witness together with its scaling-limit descendants; the seeds whose
// translates are expected to fill K+ \cap ker rho.
inline std::vector<Tensor4> section5_seed_tensors(const HermitianSpace& V) {
  const detail::Section51Data data = detail::section51_data(V);
  std::vector<Tensor4> seeds = {data.A, data.B1, data.B2, data.B1s_plus_B2s};
  if (data.has_B3) seeds.push_back(data.B3);
  return seeds;
}

// Small integer group elements (swaps, rotations, shears, scalings, and the
// conjugation element) whose pullbacks keep orbit arithmetic cheap and exact.
inline std::vector<GroupElement> section5_group_sample(const HermitianSpace& V) {
  std::vector<GroupElement> out;
  out.push_back(detail::pair_swap_element(V.m, 0, 1));
  if (V.n >= 3) out.push_back(detail::pair_swap_element(V.m, 1, 2));
  out.push_back(detail::pair_rotation_element(V.m, 0));
  out.push_back(detail::pair_shear_element(V.m, 0, 1));
  out.push_back(detail::pair_sign_element(V.m, 0));
  out.push_back(detail::pair_scale_element(V.m, 0, Rational(2)));
  out.push_back(conjugation_element(V));
  return out;
}

// Exact span-closure check: grows span(seeds) by pulling the current basis
// back under every supplied element until the dimension stabilizes, then
// compares with the target subspace.
inline OrbitSpanResult orbit_span_check(const std::vector<Tensor4>& seeds,
                                        const std::vector<GroupElement>& elements,
                                        const Subspace& target,
                                        int max_rounds = 16) {
  if (target.kind() != ElementKind::Tensor4Kind)
    throw KindMismatch("orbit_span_check requires a tensor subspace target");
  const int m = target.base_dim();
  for (const Tensor4& s : seeds)
    if (s.m != m) throw SpaceMismatch("seed tensor on a different space");
  for (const GroupElement& g : elements)
    if (g.matrix.rows() != static_cast<std::size_t>(m))
      throw SpaceMismatch("group element on a different space");

  Subspace span_now = Subspace::span(m, seeds);
  for (int round = 0; round < max_rounds; ++round) {
    const std::vector<Tensor4> basis = span_now.tensor_basis();
    std::vector<Tensor4> pool = basis;
    pool.reserve(basis.size() * (elements.size() + 1));
    for (const Tensor4& b : basis)
      for (const GroupElement& g : elements)
        pool.push_back(pullback_tensor(g, b));
    Subspace grown = Subspace::span(m, pool);
    const bool stable = grown.dim() == span_now.dim();
    span_now = std::move(grown);
    if (stable || span_now.dim() >= target.dim()) break;
  }

  OrbitSpanResult result;
  result.achieved_dim = static_cast<int>(span_now.dim());
  result.target_dim = static_cast<int>(target.dim());
  result.spans = (span_now == target);
  if (!result.spans && m >= 4) {
    const HermitianSpace V = make_space(m / 2);
    for (int w = 7; w <= 11; ++w) {
      const Subspace ws = w_space(V, w);
      bool inside = true;
      for (const Tensor4& b : ws.tensor_basis())
        if (!span_now.contains(b)) {
          inside = false;
          break;
        }
      if (!inside) result.missed_w.push_back(w);
    }
  }
  return result;
}

}  // namespace kdec
