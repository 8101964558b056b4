#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "bilinear.hpp"
#include "errors.hpp"
#include "hermitian_space.hpp"
#include "maps.hpp"
#include "matrix.hpp"
#include "subspace.hpp"
#include "tensor4.hpp"

namespace kdec {

namespace detail {

// Union-find over coordinates identified up to sign: value[a] = s * value[b].
// A class whose relations force value = -value is marked zero.
class SignedUnionFind {
 public:
  explicit SignedUnionFind(std::size_t n)
      : parent_(n), sign_(n, 1), zero_(n, 0) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  std::pair<std::size_t, int> find(std::size_t x) {
    if (parent_[x] == x) return {x, 1};
    auto [root, s] = find(parent_[x]);
    parent_[x] = root;
    sign_[x] = static_cast<std::int8_t>(sign_[x] * s);
    return {root, sign_[x]};
  }

  void relate(std::size_t a, std::size_t b, int s) {
    auto [ra, sa] = find(a);
    auto [rb, sb] = find(b);
    if (ra == rb) {
      if (sa != s * sb) zero_[ra] = 1;
      return;
    }
    parent_[ra] = rb;
    sign_[ra] = static_cast<std::int8_t>(sa * s * sb);
    if (zero_[ra]) zero_[rb] = 1;
  }

  bool is_zero(std::size_t x) {
    auto [root, s] = find(x);
    (void)s;
    return zero_[root] != 0;
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::int8_t> sign_;
  std::vector<char> zero_;
};

}  // namespace detail

// Defining constraints of a tensor subspace, applied as exact linear
// conditions on the m^4 coordinates.
struct TensorConstraints {
  bool antisym12 = false;
  bool bianchi = false;
  bool kaehler34 = false;
  int first_pair_parity = 0;  // 0 none, +1 or -1
  int last_pair_symmetry = 0; // 0 none, +1 symmetric, -1 antisymmetric
  bool ker_ricci = false;
  bool ker_ricci13 = false;
};

namespace detail {

// Coordinate classes after identifying indices along the sign relations of
// the two-index symmetries. Remaining constraints (Bianchi, contractions)
// are handled as rows over class representatives.
struct OrbitReduction {
  std::size_t klass_count = 0;
  std::vector<std::size_t> klass;   // coordinate -> class id, or npos if zero
  std::vector<int> rel_sign;        // coordinate value = rel_sign * rep value
  std::vector<std::size_t> rep;     // class id -> representative coordinate
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
};

inline OrbitReduction reduce_orbits(int m, const TensorConstraints& c) {
  const std::size_t n4 = static_cast<std::size_t>(m) * m * m * m;
  const auto idx = [m](int i, int j, int k, int l) {
    return ((static_cast<std::size_t>(i) * m + j) * m + k) * m + l;
  };
  SignedUnionFind uf(n4);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k)
        for (int l = 0; l < m; ++l) {
          const std::size_t x = idx(i, j, k, l);
          if (c.antisym12) uf.relate(x, idx(j, i, k, l), -1);
          if (c.kaehler34)
            uf.relate(x, idx(i, j, jdx(k), jdx(l)), jsg(k) * jsg(l));
          if (c.first_pair_parity != 0)
            uf.relate(x, idx(jdx(i), jdx(j), k, l),
                      c.first_pair_parity * jsg(i) * jsg(j));
          if (c.last_pair_symmetry != 0)
            uf.relate(x, idx(i, j, l, k), c.last_pair_symmetry);
        }
  OrbitReduction out;
  out.klass.assign(n4, OrbitReduction::npos);
  out.rel_sign.assign(n4, 0);
  std::vector<std::size_t> class_of_root(n4, OrbitReduction::npos);
  std::vector<int> root_to_rep_sign(n4, 1);
  for (std::size_t x = 0; x < n4; ++x) {
    if (uf.is_zero(x)) continue;
    auto [root, s] = uf.find(x);
    if (class_of_root[root] == OrbitReduction::npos) {
      class_of_root[root] = out.klass_count++;
      out.rep.push_back(x);
      root_to_rep_sign[root] = s;  // value[x] = s * value[root], x is the rep
    }
    out.klass[x] = class_of_root[root];
    // value[x] = s * value[root]; value[rep] = rep_sign * value[root]
    out.rel_sign[x] = s * root_to_rep_sign[root];
  }
  return out;
}

// Constraint rows over class representatives: Bianchi sums and the two
// contraction kernels. Rows that collapse to zero are dropped.
inline std::vector<std::vector<std::pair<std::size_t, Rational>>>
constraint_rows(int m, const TensorConstraints& c, const OrbitReduction& orb) {
  const auto idx = [m](int i, int j, int k, int l) {
    return ((static_cast<std::size_t>(i) * m + j) * m + k) * m + l;
  };
  std::vector<std::vector<std::pair<std::size_t, Rational>>> rows;
  std::vector<Rational> acc(orb.klass_count);
  std::vector<std::size_t> touched;
  const auto add_term = [&](std::size_t coord, int coeff) {
    const std::size_t k = orb.klass[coord];
    if (k == OrbitReduction::npos) return;
    if (acc[k] == 0) touched.push_back(k);
    acc[k] += coeff * orb.rel_sign[coord];
  };
  const auto flush_row = [&]() {
    std::vector<std::pair<std::size_t, Rational>> row;
    for (std::size_t k : touched)
      if (acc[k] != 0) row.push_back({k, acc[k]});
    for (std::size_t k : touched) acc[k] = 0;
    touched.clear();
    if (!row.empty()) {
      std::sort(row.begin(), row.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
      rows.push_back(std::move(row));
    }
  };
  if (c.bianchi) {
    if (c.antisym12) {
      // With first-pair antisymmetry the cyclic sum is alternating in
      // (i, j, k): distinct ascending triples generate all conditions.
      for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
          for (int k = j + 1; k < m; ++k)
            for (int l = 0; l < m; ++l) {
              add_term(idx(i, j, k, l), 1);
              add_term(idx(j, k, i, l), 1);
              add_term(idx(k, i, j, l), 1);
              flush_row();
            }
    } else {
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
          for (int k = 0; k < m; ++k)
            for (int l = 0; l < m; ++l) {
              add_term(idx(i, j, k, l), 1);
              add_term(idx(j, k, i, l), 1);
              add_term(idx(k, i, j, l), 1);
              flush_row();
            }
    }
  }
  if (c.ker_ricci) {
    for (int x = 0; x < m; ++x)
      for (int y = 0; y < m; ++y) {
        for (int i = 0; i < m; ++i) add_term(idx(i, x, y, i), 1);
        flush_row();
      }
  }
  if (c.ker_ricci13) {
    for (int x = 0; x < m; ++x)
      for (int y = 0; y < m; ++y) {
        for (int i = 0; i < m; ++i) add_term(idx(i, x, i, y), 1);
        flush_row();
      }
  }
  return rows;
}

}  // namespace detail

// Exact basis of the constrained tensor space, canonical echelon form.
inline Subspace build_tensor_space(int m, const TensorConstraints& c) {
  const detail::OrbitReduction orb = detail::reduce_orbits(m, c);
  const auto rows = detail::constraint_rows(m, c, orb);
  Matrix system(rows.size(), orb.klass_count);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (const auto& [k, v] : rows[r]) system.at(r, k) = v;
  const Matrix null = system.null_space();
  const std::size_t n4 = static_cast<std::size_t>(m) * m * m * m;
  Matrix basis(null.rows(), n4);
  for (std::size_t r = 0; r < null.rows(); ++r)
    for (std::size_t x = 0; x < n4; ++x) {
      const std::size_t k = orb.klass[x];
      if (k == detail::OrbitReduction::npos) continue;
      if (null.at(r, k) == 0) continue;
      basis.at(r, x) = Rational(orb.rel_sign[x]) * null.at(r, k);
    }
  return Subspace(m, ElementKind::Tensor4Kind, std::move(basis));
}

// Dimension only, via a sparse rank pass over the class representatives.
// Avoids materializing the null-space basis for large m.
inline std::size_t dim_tensor_space(int m, const TensorConstraints& c) {
  const detail::OrbitReduction orb = detail::reduce_orbits(m, c);
  const auto rows = detail::constraint_rows(m, c, orb);
  SparseEchelon ech;
  for (const auto& row : rows) ech.add_row(row);
  return orb.klass_count - ech.rank();
}

// ---- named spaces ----------------------------------------------------------

inline TensorConstraints affine_constraints() {
  TensorConstraints c;
  c.antisym12 = true;
  c.bianchi = true;
  return c;
}

inline TensorConstraints kahler_constraints(int parity = 0) {
  TensorConstraints c = affine_constraints();
  c.kaehler34 = true;
  c.first_pair_parity = parity;
  return c;
}

inline Subspace basis_affine(const HermitianSpace& V) {
  return build_tensor_space(V.m, affine_constraints());
}

inline Subspace basis_kahler(const HermitianSpace& V) {
  return build_tensor_space(V.m, kahler_constraints());
}

inline Subspace basis_kahler_pm(const HermitianSpace& V, int sign) {
  if (sign != 1 && sign != -1)
    throw DomainViolation("parity sign must be +1 or -1");
  return build_tensor_space(V.m, kahler_constraints(sign));
}

inline Subspace basis_kahler_pm_ker_ricci(const HermitianSpace& V, int sign) {
  if (sign != 1 && sign != -1)
    throw DomainViolation("parity sign must be +1 or -1");
  TensorConstraints c = kahler_constraints(sign);
  c.ker_ricci = true;
  return build_tensor_space(V.m, c);
}

inline Subspace basis_kahler_plus_fully_traceless(const HermitianSpace& V) {
  TensorConstraints c = kahler_constraints(1);
  c.ker_ricci = true;
  c.ker_ricci13 = true;
  return build_tensor_space(V.m, c);
}

// ---- bilinear families -----------------------------------------------------

enum class BilinearFamily {
  S2Plus,
  S2Minus,
  L2Plus,
  L2Minus,
  S20Plus,
  L20Plus,
};

inline const char* bilinear_family_name(BilinearFamily f) {
  switch (f) {
    case BilinearFamily::S2Plus: return "s2_plus";
    case BilinearFamily::S2Minus: return "s2_minus";
    case BilinearFamily::L2Plus: return "l2_plus";
    case BilinearFamily::L2Minus: return "l2_minus";
    case BilinearFamily::S20Plus: return "s2_0_plus";
    case BilinearFamily::L20Plus: return "l2_0_plus";
  }
  throw UnknownFamily("unknown bilinear family");
}

inline Subspace basis_bilinear_family(const HermitianSpace& V,
                                      BilinearFamily which) {
  const int m = V.m;
  bool symmetric;
  int parity;
  bool trace_free = false;
  switch (which) {
    case BilinearFamily::S2Plus: symmetric = true; parity = 1; break;
    case BilinearFamily::S2Minus: symmetric = true; parity = -1; break;
    case BilinearFamily::L2Plus: symmetric = false; parity = 1; break;
    case BilinearFamily::L2Minus: symmetric = false; parity = -1; break;
    case BilinearFamily::S20Plus:
      symmetric = true; parity = 1; trace_free = true; break;
    case BilinearFamily::L20Plus:
      symmetric = false; parity = 1; trace_free = true; break;
    default:
      throw UnknownFamily("unknown bilinear family");
  }
  const std::size_t n2 = static_cast<std::size_t>(m) * m;
  const auto idx = [m](int i, int j) {
    return static_cast<std::size_t>(i) * m + j;
  };
  std::vector<std::vector<std::pair<std::size_t, Rational>>> rows;
  for (int i = 0; i < m; ++i)
    for (int j = i; j < m; ++j) {
      // phi(i, j) -+ phi(j, i) = 0
      std::vector<std::pair<std::size_t, Rational>> row;
      if (i == j) {
        if (!symmetric) row.push_back({idx(i, i), Rational(1)});
      } else {
        row.push_back({idx(i, j), Rational(1)});
        row.push_back({idx(j, i), Rational(symmetric ? -1 : 1)});
      }
      if (!row.empty()) rows.push_back(std::move(row));
    }
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      // phi(Ji, Jj) = parity * phi(i, j)
      std::vector<std::pair<std::size_t, Rational>> row;
      const std::size_t lhs = idx(jdx(i), jdx(j));
      const std::size_t rhs = idx(i, j);
      if (lhs == rhs) continue;
      row.push_back({lhs, Rational(jsg(i) * jsg(j))});
      row.push_back({rhs, Rational(-parity)});
      rows.push_back(std::move(row));
    }
  if (trace_free) {
    std::vector<std::pair<std::size_t, Rational>> row;
    if (symmetric) {
      for (int i = 0; i < m; ++i) row.push_back({idx(i, i), Rational(1)});
    } else {
      // <psi, Omega> = sum_j jsg(j) psi(jdx(j), j)
      for (int j = 0; j < m; ++j)
        row.push_back({idx(jdx(j), j), Rational(jsg(j))});
    }
    rows.push_back(std::move(row));
  }
  Matrix system(rows.size(), n2);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (const auto& [k, v] : rows[r]) system.at(r, k) += v;
  return Subspace(m, ElementKind::BilinearKind, system.null_space());
}

// ---- W spaces --------------------------------------------------------------

inline Subspace w_space(const HermitianSpace& V, int index) {
  if (V.m < 4)
    throw DimensionTooSmall("W spaces are defined for m >= 4");
  const int m = V.m;
  switch (index) {
    case 7:
    case 8: {
      const BilinearFamily fam =
          index == 7 ? BilinearFamily::S20Plus : BilinearFamily::L20Plus;
      const int sig = index == 7 ? 1 : 3;
      const int sig_coeff = index == 7 ? 2 : -2;
      std::vector<Tensor4> gens;
      for (const Bilinear& phi :
           basis_bilinear_family(V, fam).bilinear_basis())
        gens.push_back(sigma(sig, phi) * Rational(sig_coeff) +
                       theta(phi) * Rational(m + 2));
      return Subspace::span(m, gens);
    }
    case 9:
    case 10: {
      TensorConstraints c = kahler_constraints(1);
      c.last_pair_symmetry = index == 9 ? -1 : 1;
      c.ker_ricci = true;
      return build_tensor_space(m, c);
    }
    case 11: {
      const Subspace both = sum(w_space(V, 9), w_space(V, 10));
      return complement_within(both, basis_kahler_plus_fully_traceless(V));
    }
    case 12: {
      TensorConstraints c = kahler_constraints(-1);
      c.ker_ricci = true;
      return build_tensor_space(m, c);
    }
    default:
      throw DomainViolation("W index must be in 7..12");
  }
}

}  // namespace kdec
