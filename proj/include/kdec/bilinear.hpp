#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "hermitian_space.hpp"
#include "matrix.hpp"
#include "rational.hpp"

namespace kdec {

// Bilinear form phi on the 2n-dimensional space, stored as the full m x m
// coefficient array phi_{ij} = phi(b_i, b_j). The ambient space is determined
// by m alone, so tensors carry just the dimension.
struct Bilinear {
  int m = 0;
  std::vector<Rational> a;

  Bilinear() = default;
  explicit Bilinear(int dim) : m(dim), a(static_cast<std::size_t>(dim) * dim) {}
  explicit Bilinear(const HermitianSpace& V) : Bilinear(V.m) {}

  Rational& at(int i, int j) { return a[static_cast<std::size_t>(i) * m + j]; }
  const Rational& at(int i, int j) const {
    return a[static_cast<std::size_t>(i) * m + j];
  }

  bool operator==(const Bilinear& o) const { return m == o.m && a == o.a; }
  bool operator!=(const Bilinear& o) const { return !(*this == o); }

  bool is_zero() const {
    for (const auto& v : a)
      if (v != 0) return false;
    return true;
  }

  Bilinear operator+(const Bilinear& o) const {
    require_same_space(o);
    Bilinear r(m);
    for (std::size_t q = 0; q < a.size(); ++q) r.a[q] = a[q] + o.a[q];
    return r;
  }

  Bilinear operator-(const Bilinear& o) const {
    require_same_space(o);
    Bilinear r(m);
    for (std::size_t q = 0; q < a.size(); ++q) r.a[q] = a[q] - o.a[q];
    return r;
  }

  Bilinear operator-() const {
    Bilinear r(m);
    for (std::size_t q = 0; q < a.size(); ++q) r.a[q] = -a[q];
    return r;
  }

  Bilinear operator*(const Rational& c) const {
    Bilinear r(m);
    for (std::size_t q = 0; q < a.size(); ++q) r.a[q] = a[q] * c;
    return r;
  }

  void require_same_space(const Bilinear& o) const {
    if (m != o.m) throw SpaceMismatch("bilinear forms on different spaces");
  }
};

inline Bilinear metric_bilinear(int m) {
  Bilinear g(m);
  for (int i = 0; i < m; ++i) g.at(i, i) = 1;
  return g;
}
inline Bilinear metric_bilinear(const HermitianSpace& V) {
  return metric_bilinear(V.m);
}

inline Bilinear omega_bilinear(int m) {
  Bilinear w(m);
  for (int j = 0; j < m; ++j) w.at(jdx(j), j) = jsg(j);
  return w;
}
inline Bilinear omega_bilinear(const HermitianSpace& V) {
  return omega_bilinear(V.m);
}

inline Rational inner_product(const Bilinear& p, const Bilinear& q) {
  p.require_same_space(q);
  Rational s;
  for (std::size_t t = 0; t < p.a.size(); ++t) {
    if (p.a[t] == 0 || q.a[t] == 0) continue;
    s += p.a[t] * q.a[t];
  }
  return s;
}

inline bool is_symmetric(const Bilinear& p) {
  for (int i = 0; i < p.m; ++i)
    for (int j = i + 1; j < p.m; ++j)
      if (p.at(i, j) != p.at(j, i)) return false;
  return true;
}

inline bool is_alternating(const Bilinear& p) {
  for (int i = 0; i < p.m; ++i)
    for (int j = i; j < p.m; ++j)
      if (p.at(i, j) != -p.at(j, i)) return false;
  return true;
}

// phi(Jx, Jy) = sign * phi(x, y) on all basis pairs.
inline bool has_j_parity(const Bilinear& p, int sign) {
  for (int i = 0; i < p.m; ++i)
    for (int j = 0; j < p.m; ++j)
      if (Rational(jsg(i) * jsg(j)) * p.at(jdx(i), jdx(j)) !=
          Rational(sign) * p.at(i, j))
        return false;
  return true;
}

inline Rational trace_bilinear(const Bilinear& p) {
  Rational s;
  for (int i = 0; i < p.m; ++i) s += p.at(i, i);
  return s;
}

// (Xi . phi)(x, y) = phi(Xi x, Xi y), i.e. Xi^T Phi Xi.
inline Bilinear pullback_bilinear(const GroupElement& g, const Bilinear& p) {
  if (static_cast<int>(g.matrix.rows()) != p.m)
    throw SpaceMismatch("group element and bilinear dimensions differ");
  const int m = p.m;
  Bilinear r(m);
  // Two slot contractions, each O(m^3).
  std::vector<Rational> tmp(static_cast<std::size_t>(m) * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      Rational s;
      for (int q = 0; q < m; ++q) {
        if (g.matrix.at(q, i) == 0) continue;
        s += g.matrix.at(q, i) * p.at(q, j);
      }
      tmp[static_cast<std::size_t>(i) * m + j] = std::move(s);
    }
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      Rational s;
      for (int q = 0; q < m; ++q) {
        if (g.matrix.at(q, j) == 0) continue;
        s += tmp[static_cast<std::size_t>(i) * m + q] * g.matrix.at(q, j);
      }
      r.at(i, j) = std::move(s);
    }
  return r;
}

// Conjugate form phi*(x, y) = phi(x, Jy).
inline Bilinear conjugate_bilinear(const Bilinear& p) {
  Bilinear r(p.m);
  for (int i = 0; i < p.m; ++i)
    for (int j = 0; j < p.m; ++j)
      r.at(i, j) = Rational(jsg(j)) * p.at(i, jdx(j));
  return r;
}

struct BilinearSplit {
  Bilinear s_plus;   // symmetric, J-invariant
  Bilinear s_minus;  // symmetric, J-anti-invariant
  Bilinear l_plus;   // alternating, J-invariant
  Bilinear l_minus;  // alternating, J-anti-invariant
};

// Symmetrize/antisymmetrize, then split each part by the sign of
// phi(Jx, Jy) = +/- phi(x, y). The four parts sum to phi and are pairwise
// orthogonal.
inline BilinearSplit split_bilinear(const Bilinear& p) {
  const int m = p.m;
  Bilinear sym(m), alt(m);
  const Rational half(1, 2);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      sym.at(i, j) = (p.at(i, j) + p.at(j, i)) * half;
      alt.at(i, j) = (p.at(i, j) - p.at(j, i)) * half;
    }
  BilinearSplit out{Bilinear(m), Bilinear(m), Bilinear(m), Bilinear(m)};
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      const Rational js =
          Rational(jsg(i) * jsg(j));
      const Rational sym_j = js * sym.at(jdx(i), jdx(j));
      const Rational alt_j = js * alt.at(jdx(i), jdx(j));
      out.s_plus.at(i, j) = (sym.at(i, j) + sym_j) * half;
      out.s_minus.at(i, j) = (sym.at(i, j) - sym_j) * half;
      out.l_plus.at(i, j) = (alt.at(i, j) + alt_j) * half;
      out.l_minus.at(i, j) = (alt.at(i, j) - alt_j) * half;
    }
  return out;
}

}  // namespace kdec
