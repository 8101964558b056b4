#pragma once

#include <cstdint>
#include <random>

#include "errors.hpp"
#include "matrix.hpp"
#include "rational.hpp"

namespace kdec {

// Basis order is e1, f1, e2, f2, ..., e_n, f_n with J e_i = f_i and
// J f_i = -e_i. On flat indices: J b_i = jsg(i) * b_{jdx(i)}.
inline int jdx(int i) { return i ^ 1; }
inline int jsg(int i) { return (i & 1) ? -1 : 1; }

// 2n-dimensional real vector space with orthonormal basis, complex structure
// J, identity metric and fundamental two-form omega(x, y) = <x, Jy>. The
// space is fully determined by n, so dimension equality is identity.
struct HermitianSpace {
  int n = 0;
  int m = 0;
  Matrix J;
  Matrix metric;
  Matrix omega;
};

inline HermitianSpace make_space(int n) {
  if (n < 1) throw DomainViolation("complex dimension must be at least 1");
  HermitianSpace V;
  V.n = n;
  V.m = 2 * n;
  V.J = Matrix(V.m, V.m);
  V.metric = Matrix::identity(V.m);
  V.omega = Matrix(V.m, V.m);
  for (int i = 0; i < V.m; ++i) {
    // Column i of J holds J b_i.
    V.J.at(jdx(i), i) = jsg(i);
    // omega(b_i, b_j) = <b_i, J b_j> = jsg(j) delta(i, jdx(j)).
    V.omega.at(jdx(i), i) = jsg(i);
  }
  return V;
}

// Invertible matrix commuting or anticommuting with J; chi records which.
// The inverse transpose is cached because the fourth tensor slot transforms
// contravariantly under pullback.
struct GroupElement {
  Matrix matrix;
  int chi = 1;
  bool unitary = false;
  Matrix inverse_transpose;
};

inline GroupElement make_group_element(const Matrix& matrix) {
  if (matrix.rows() != matrix.cols())
    throw NotInGroup("group element matrix must be square");
  const int m = static_cast<int>(matrix.rows());
  if (m == 0 || m % 2 != 0)
    throw NotInGroup("group element dimension must be even and positive");

  GroupElement g;
  g.matrix = matrix;
  try {
    g.inverse_transpose = matrix.inverse().transpose();
  } catch (const NotInvertible&) {
    throw NotInvertible("group element matrix is singular");
  }

  // (J Xi)(i, j) = jsg(j') style index juggling is avoided here: build the
  // commutator and anticommutator against the canonical J directly.
  const Matrix J = make_space(m / 2).J;
  const Matrix XJ = matrix * J;
  const Matrix JX = J * matrix;
  if (XJ == JX) {
    g.chi = 1;
  } else if ((XJ + JX).is_zero()) {
    g.chi = -1;
  } else {
    throw NotInGroup("matrix neither commutes nor anticommutes with J");
  }

  g.unitary = (matrix.transpose() * matrix) == Matrix::identity(m);
  return g;
}

inline GroupElement group_product(const GroupElement& a,
                                  const GroupElement& b) {
  return make_group_element(a.matrix * b.matrix);
}

// Conjugation e_i -> e_i, f_i -> -f_i: the fixed unitary representative of
// the chi = -1 component.
inline GroupElement conjugation_element(const HermitianSpace& V) {
  Matrix c(V.m, V.m);
  for (int i = 0; i < V.m; ++i) c.at(i, i) = jsg(i);
  return make_group_element(c);
}

namespace detail {

// Deterministic integer sampling on top of the fixed mt19937_64 stream;
// std::uniform_int_distribution is implementation-defined, so rejection
// sampling keeps results identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }

  int rand_int(int lo, int hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % span);
    std::uint64_t r = eng_();
    while (r >= limit) r = eng_();
    return lo + static_cast<int>(r % span);
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace detail

// Random exact element of the unitary subgroup, Cayley transform
// (I - S)(I + S)^{-1} of a random antisymmetric S commuting with J. Such S
// decompose into 2x2 blocks a*I + b*J2 with block(q, p) = -block(p, q)^T,
// which forces the diagonal blocks to be multiples of J2. chi = -1 requests
// composition with the fixed conjugation.
inline GroupElement random_unitary_star(std::uint64_t seed,
                                        const HermitianSpace& V,
                                        int chi = 1) {
  if (chi != 1 && chi != -1)
    throw DomainViolation("chi must be +1 or -1");
  detail::Rng rng(seed);
  for (;;) {
    Matrix S(V.m, V.m);
    for (int p = 0; p < V.n; ++p) {
      const int bp = rng.rand_int(-2, 2);
      S.at(2 * p, 2 * p + 1) = -bp;
      S.at(2 * p + 1, 2 * p) = bp;
      for (int q = p + 1; q < V.n; ++q) {
        const int a = rng.rand_int(-2, 2);
        const int b = rng.rand_int(-2, 2);
        S.at(2 * p, 2 * q) = a;
        S.at(2 * p, 2 * q + 1) = -b;
        S.at(2 * p + 1, 2 * q) = b;
        S.at(2 * p + 1, 2 * q + 1) = a;
        S.at(2 * q, 2 * p) = -a;
        S.at(2 * q, 2 * p + 1) = -b;
        S.at(2 * q + 1, 2 * p) = b;
        S.at(2 * q + 1, 2 * p + 1) = -a;
      }
    }
    const Matrix I = Matrix::identity(V.m);
    Matrix cayley;
    try {
      cayley = (I + S).solve(I - S);
    } catch (const NotInvertible&) {
      continue;  // I + S singular for this draw; take the next one
    }
    GroupElement g = make_group_element(cayley);
    if (chi == -1) g = group_product(g, conjugation_element(V));
    return g;
  }
}

// Random element of the full group: an invertible J-commuting matrix built
// from 2x2 blocks a*I + b*J2 (no orthogonality), optionally composed with the
// conjugation for chi = -1. Useful for exhibiting non-unitary behavior.
inline GroupElement random_gl_star(std::uint64_t seed, const HermitianSpace& V,
                                   int chi = 1) {
  if (chi != 1 && chi != -1)
    throw DomainViolation("chi must be +1 or -1");
  detail::Rng rng(seed);
  for (;;) {
    Matrix X(V.m, V.m);
    for (int p = 0; p < V.n; ++p)
      for (int q = 0; q < V.n; ++q) {
        const int a = rng.rand_int(-2, 2);
        const int b = rng.rand_int(-2, 2);
        X.at(2 * p, 2 * q) = a;
        X.at(2 * p, 2 * q + 1) = -b;
        X.at(2 * p + 1, 2 * q) = b;
        X.at(2 * p + 1, 2 * q + 1) = a;
      }
    try {
      GroupElement g = make_group_element(X);
      if (chi == -1) g = group_product(g, conjugation_element(V));
      return g;
    } catch (const NotInvertible&) {
      continue;
    }
  }
}

}  // namespace kdec
