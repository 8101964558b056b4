#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bilinear.hpp"
#include "errors.hpp"
#include "hermitian_space.hpp"
#include "matrix.hpp"
#include "rational.hpp"

namespace kdec {

// Rank-4 curvature-type tensor in lowered form,
// A_{ijkl} = <A(b_i, b_j) b_k, b_l>, stored densely over all m^4 index
// tuples.
struct Tensor4 {
  int m = 0;
  std::vector<Rational> a;

  Tensor4() = default;
  explicit Tensor4(int dim)
      : m(dim),
        a(static_cast<std::size_t>(dim) * dim * dim * dim) {}
  explicit Tensor4(const HermitianSpace& V) : Tensor4(V.m) {}

  std::size_t idx(int i, int j, int k, int l) const {
    return ((static_cast<std::size_t>(i) * m + j) * m + k) * m + l;
  }
  Rational& at(int i, int j, int k, int l) { return a[idx(i, j, k, l)]; }
  const Rational& at(int i, int j, int k, int l) const {
    return a[idx(i, j, k, l)];
  }

  bool operator==(const Tensor4& o) const { return m == o.m && a == o.a; }
  bool operator!=(const Tensor4& o) const { return !(*this == o); }

  bool is_zero() const {
    for (const auto& v : a)
      if (v != 0) return false;
    return true;
  }

  Tensor4 operator+(const Tensor4& o) const {
    require_same_space(o);
    Tensor4 r(m);
    for (std::size_t q = 0; q < a.size(); ++q) r.a[q] = a[q] + o.a[q];
    return r;
  }

  Tensor4 operator-(const Tensor4& o) const {
    require_same_space(o);
    Tensor4 r(m);
    for (std::size_t q = 0; q < a.size(); ++q) r.a[q] = a[q] - o.a[q];
    return r;
  }

  Tensor4 operator-() const {
    Tensor4 r(m);
    for (std::size_t q = 0; q < a.size(); ++q) r.a[q] = -a[q];
    return r;
  }

  Tensor4 operator*(const Rational& c) const {
    Tensor4 r(m);
    for (std::size_t q = 0; q < a.size(); ++q) r.a[q] = a[q] * c;
    return r;
  }

  void require_same_space(const Tensor4& o) const {
    if (m != o.m) throw SpaceMismatch("tensors on different spaces");
  }
};

inline Rational inner_product(const Tensor4& A, const Tensor4& B) {
  A.require_same_space(B);
  Rational s;
  for (std::size_t q = 0; q < A.a.size(); ++q) {
    if (A.a[q] == 0 || B.a[q] == 0) continue;
    s += A.a[q] * B.a[q];
  }
  return s;
}

// ---- membership predicates -------------------------------------------------

inline bool is_antisymmetric12(const Tensor4& A) {
  const int m = A.m;
  for (int i = 0; i < m; ++i)
    for (int j = i; j < m; ++j)
      for (int k = 0; k < m; ++k)
        for (int l = 0; l < m; ++l)
          if (A.at(i, j, k, l) != -A.at(j, i, k, l)) return false;
  return true;
}

inline bool satisfies_bianchi(const Tensor4& A) {
  const int m = A.m;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      for (int k = j + 1; k < m; ++k)
        for (int l = 0; l < m; ++l)
          if (A.at(i, j, k, l) + A.at(j, k, i, l) + A.at(k, i, j, l) != 0)
            return false;
  // With first-pair antisymmetry the cyclic sum is alternating in (i, j, k),
  // so distinct ascending triples suffice; without it, check every triple.
  if (!is_antisymmetric12(A)) {
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        for (int k = 0; k < m; ++k)
          for (int l = 0; l < m; ++l)
            if (A.at(i, j, k, l) + A.at(j, k, i, l) + A.at(k, i, j, l) != 0)
              return false;
  }
  return true;
}

// Lowered Kaehler identity A(x, y, z, w) = A(x, y, Jz, Jw).
inline bool is_kaehler34(const Tensor4& A) {
  const int m = A.m;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k)
        for (int l = 0; l < m; ++l)
          if (A.at(i, j, k, l) != Rational(jsg(k) * jsg(l)) *
                                      A.at(i, j, jdx(k), jdx(l)))
            return false;
  return true;
}

// A(Jx, Jy, z, w) = sign * A(x, y, z, w).
inline bool has_first_pair_parity(const Tensor4& A, int sign) {
  const int m = A.m;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k)
        for (int l = 0; l < m; ++l)
          if (Rational(jsg(i) * jsg(j)) * A.at(jdx(i), jdx(j), k, l) !=
              Rational(sign) * A.at(i, j, k, l))
            return false;
  return true;
}

// A(x, y, z, w) = sign * A(x, y, w, z).
inline bool has_last_pair_symmetry(const Tensor4& A, int sign) {
  const int m = A.m;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k)
        for (int l = k; l < m; ++l)
          if (A.at(i, j, k, l) != Rational(sign) * A.at(i, j, l, k))
            return false;
  return true;
}

inline bool is_affine_curvature(const Tensor4& A) {
  return is_antisymmetric12(A) && satisfies_bianchi(A);
}

inline bool is_kaehler_curvature(const Tensor4& A) {
  return is_affine_curvature(A) && is_kaehler34(A);
}

// First violated constraint among the three defining the Kaehler curvature
// space, with the witnessing index tuple; nullopt when A is a member.
struct KaehlerViolation {
  std::string constraint;
  std::array<int, 4> indices;
};

inline std::optional<KaehlerViolation> first_kaehler_violation(
    const Tensor4& A) {
  const int m = A.m;
  for (int i = 0; i < m; ++i)
    for (int j = i; j < m; ++j)
      for (int k = 0; k < m; ++k)
        for (int l = 0; l < m; ++l)
          if (A.at(i, j, k, l) != -A.at(j, i, k, l))
            return KaehlerViolation{"first-pair antisymmetry",
                                    {i, j, k, l}};
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      for (int k = j + 1; k < m; ++k)
        for (int l = 0; l < m; ++l)
          if (A.at(i, j, k, l) + A.at(j, k, i, l) + A.at(k, i, j, l) != 0)
            return KaehlerViolation{"first Bianchi identity", {i, j, k, l}};
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k)
        for (int l = 0; l < m; ++l)
          if (A.at(i, j, k, l) != Rational(jsg(k) * jsg(l)) *
                                      A.at(i, j, jdx(k), jdx(l)))
            return KaehlerViolation{"last-pair J-invariance", {i, j, k, l}};
  return std::nullopt;
}

// ---- pullback --------------------------------------------------------------

namespace detail {

// Clears denominators of an m x m rational matrix: M = num / den entrywise.
struct IntegerMatrix {
  int m = 0;
  std::vector<BigInt> num;
  BigInt den = 1;

  const BigInt& at(int i, int j) const {
    return num[static_cast<std::size_t>(i) * m + j];
  }
};

inline IntegerMatrix clear_denominators(const Matrix& M) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::lcm;
  using boost::multiprecision::numerator;
  IntegerMatrix out;
  out.m = static_cast<int>(M.rows());
  out.num.resize(static_cast<std::size_t>(out.m) * out.m);
  for (std::size_t i = 0; i < M.rows(); ++i)
    for (std::size_t j = 0; j < M.cols(); ++j)
      out.den = lcm(out.den, denominator(M.at(i, j)));
  for (int i = 0; i < out.m; ++i)
    for (int j = 0; j < out.m; ++j) {
      const Rational& v = M.at(static_cast<std::size_t>(i),
                               static_cast<std::size_t>(j));
      out.num[static_cast<std::size_t>(i) * out.m + j] =
          numerator(v) * (out.den / denominator(v));
    }
  return out;
}

// Contracts one tensor slot with an integer matrix: slot index p of the input
// is replaced by sum_p M(p, new) * T(..., p, ...). Working over cleared
// integers avoids per-operation gcd normalization in the hot loop.
inline void contract_slot(std::vector<BigInt>& data, int m, int slot,
                          const IntegerMatrix& M) {
  const std::size_t n4 = data.size();
  std::vector<BigInt> out(n4);
  std::size_t stride = 1;
  for (int s = 3; s > slot; --s) stride *= static_cast<std::size_t>(m);
  const std::size_t block = stride * static_cast<std::size_t>(m);
  for (std::size_t base = 0; base < n4; base += block)
    for (std::size_t off = 0; off < stride; ++off) {
      for (int t = 0; t < m; ++t) {
        BigInt s;
        for (int p = 0; p < m; ++p) {
          const BigInt& c = M.at(p, t);
          if (c == 0) continue;
          s += c * data[base + static_cast<std::size_t>(p) * stride + off];
        }
        out[base + static_cast<std::size_t>(t) * stride + off] = std::move(s);
      }
    }
  data = std::move(out);
}

}  // namespace detail

// Pullback on the operator form, (Xi . A)(x, y) z = Xi^{-1}(A(Xi x, Xi y)
// (Xi z)), re-lowered with the identity metric: the first three slots
// contract with Xi and the fourth with the inverse transpose. This is a right
// action: Xi2 . (Xi1 . A) = (Xi1 Xi2) . A.
inline Tensor4 pullback_tensor(const GroupElement& g, const Tensor4& A) {
  if (static_cast<int>(g.matrix.rows()) != A.m)
    throw SpaceMismatch("group element and tensor dimensions differ");
  using boost::multiprecision::denominator;
  using boost::multiprecision::lcm;
  using boost::multiprecision::numerator;
  const int m = A.m;

  BigInt aden = 1;
  for (const auto& v : A.a) aden = lcm(aden, denominator(v));
  std::vector<BigInt> data(A.a.size());
  for (std::size_t q = 0; q < A.a.size(); ++q)
    data[q] = numerator(A.a[q]) * (aden / denominator(A.a[q]));

  const detail::IntegerMatrix xi = detail::clear_denominators(g.matrix);
  const detail::IntegerMatrix xit =
      detail::clear_denominators(g.inverse_transpose);
  detail::contract_slot(data, m, 0, xi);
  detail::contract_slot(data, m, 1, xi);
  detail::contract_slot(data, m, 2, xi);
  detail::contract_slot(data, m, 3, xit);

  Tensor4 r(m);
  const BigInt total_den = aden * xi.den * xi.den * xi.den * xit.den;
  for (std::size_t q = 0; q < data.size(); ++q)
    r.a[q] = Rational(data[q], total_den);
  return r;
}

// ---- parity splitting ------------------------------------------------------

// A+-(x, y, z, w) = (A(x, y, z, w) +- A(Jx, Jy, z, w)) / 2. Requires the
// Kaehler predicate; the parts land in the +-1 eigenspaces of the first-pair
// J action and stay in the Kaehler space.
inline std::pair<Tensor4, Tensor4> parity_split_tensor(const Tensor4& A) {
  if (auto v = first_kaehler_violation(A))
    throw NotKaehler("tensor is not a Kaehler curvature tensor: " +
                     v->constraint + " fails at (" +
                     std::to_string(v->indices[0]) + "," +
                     std::to_string(v->indices[1]) + "," +
                     std::to_string(v->indices[2]) + "," +
                     std::to_string(v->indices[3]) + ")");
  const int m = A.m;
  Tensor4 plus(m), minus(m);
  const Rational half(1, 2);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k)
        for (int l = 0; l < m; ++l) {
          const Rational twisted = Rational(jsg(i) * jsg(j)) *
                                   A.at(jdx(i), jdx(j), k, l);
          plus.at(i, j, k, l) = (A.at(i, j, k, l) + twisted) * half;
          minus.at(i, j, k, l) = (A.at(i, j, k, l) - twisted) * half;
        }
  return {std::move(plus), std::move(minus)};
}

}  // namespace kdec
