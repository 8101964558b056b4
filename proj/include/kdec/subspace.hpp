#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "bilinear.hpp"
#include "errors.hpp"
#include "matrix.hpp"
#include "rational.hpp"
#include "tensor4.hpp"

namespace kdec {

enum class ElementKind { Tensor4Kind, BilinearKind };

// A linear subspace of the tensor or bilinear coordinate space on a fixed
// 2n-dimensional base. The basis is kept in reduced row echelon form, so two
// subspaces are equal iff their basis matrices are identical. The Gram matrix
// of the basis is computed once at construction for orthogonal projection.
class Subspace {
 public:
  Subspace(int m, ElementKind kind, Matrix rows)
      : m_(m), kind_(kind), coord_dim_(coordinate_dim(m, kind)) {
    if (rows.rows() > 0 && rows.cols() != coord_dim_)
      throw SpaceMismatch("generator width does not match the space");
    rows.rref();
    std::size_t keep = rows.rows();
    while (keep > 0) {
      bool zero = true;
      for (std::size_t c = 0; c < rows.cols(); ++c)
        if (rows.at(keep - 1, c) != 0) {
          zero = false;
          break;
        }
      if (!zero) break;
      --keep;
    }
    basis_ = Matrix(keep, coord_dim_);
    for (std::size_t r = 0; r < keep; ++r)
      for (std::size_t c = 0; c < coord_dim_; ++c)
        basis_.at(r, c) = rows.at(r, c);
    sparse_rows_.resize(keep);
    for (std::size_t r = 0; r < keep; ++r)
      for (std::size_t c = 0; c < coord_dim_; ++c)
        if (basis_.at(r, c) != 0) sparse_rows_[r].push_back({c, basis_.at(r, c)});
    pivots_.resize(keep);
    for (std::size_t r = 0; r < keep; ++r) pivots_[r] = sparse_rows_[r][0].first;
    gram_ = Matrix(keep, keep);
    for (std::size_t r = 0; r < keep; ++r)
      for (std::size_t s = r; s < keep; ++s) {
        Rational dot = sparse_dot(sparse_rows_[r], sparse_rows_[s]);
        gram_.at(r, s) = dot;
        gram_.at(s, r) = std::move(dot);
      }
  }

  static Subspace span(int m, const std::vector<Tensor4>& gens) {
    Matrix rows(gens.size(), coordinate_dim(m, ElementKind::Tensor4Kind));
    for (std::size_t r = 0; r < gens.size(); ++r) {
      if (gens[r].m != m) throw SpaceMismatch("generator on a different space");
      for (std::size_t c = 0; c < gens[r].a.size(); ++c)
        rows.at(r, c) = gens[r].a[c];
    }
    return Subspace(m, ElementKind::Tensor4Kind, std::move(rows));
  }

  static Subspace span(int m, const std::vector<Bilinear>& gens) {
    Matrix rows(gens.size(), coordinate_dim(m, ElementKind::BilinearKind));
    for (std::size_t r = 0; r < gens.size(); ++r) {
      if (gens[r].m != m) throw SpaceMismatch("generator on a different space");
      for (std::size_t c = 0; c < gens[r].a.size(); ++c)
        rows.at(r, c) = gens[r].a[c];
    }
    return Subspace(m, ElementKind::BilinearKind, std::move(rows));
  }

  int base_dim() const { return m_; }
  ElementKind kind() const { return kind_; }
  std::size_t dim() const { return basis_.rows(); }
  const Matrix& basis_rows() const { return basis_; }

  bool operator==(const Subspace& o) const {
    return m_ == o.m_ && kind_ == o.kind_ && basis_ == o.basis_;
  }
  bool operator!=(const Subspace& o) const { return !(*this == o); }

  std::vector<Tensor4> tensor_basis() const {
    require_kind(ElementKind::Tensor4Kind);
    std::vector<Tensor4> out(dim(), Tensor4(m_));
    for (std::size_t r = 0; r < dim(); ++r)
      for (std::size_t c = 0; c < coord_dim_; ++c)
        out[r].a[c] = basis_.at(r, c);
    return out;
  }

  std::vector<Bilinear> bilinear_basis() const {
    require_kind(ElementKind::BilinearKind);
    std::vector<Bilinear> out(dim(), Bilinear(m_));
    for (std::size_t r = 0; r < dim(); ++r)
      for (std::size_t c = 0; c < coord_dim_; ++c)
        out[r].a[c] = basis_.at(r, c);
    return out;
  }

  bool contains(const Tensor4& v) const {
    require_element(v.m, ElementKind::Tensor4Kind);
    return contains_coords(v.a);
  }
  bool contains(const Bilinear& v) const {
    require_element(v.m, ElementKind::BilinearKind);
    return contains_coords(v.a);
  }

  Tensor4 project(const Tensor4& v) const {
    require_element(v.m, ElementKind::Tensor4Kind);
    Tensor4 out(m_);
    out.a = project_coords(v.a);
    return out;
  }
  Bilinear project(const Bilinear& v) const {
    require_element(v.m, ElementKind::BilinearKind);
    Bilinear out(m_);
    out.a = project_coords(v.a);
    return out;
  }

  std::vector<Tensor4> project_batch(const std::vector<Tensor4>& vs) const {
    std::vector<Tensor4> out;
    out.reserve(vs.size());
    for (const auto& v : vs) out.push_back(project(v));
    return out;
  }

  // Coefficients in the RREF basis; throws if v is outside the span.
  std::vector<Rational> coordinates_of(const Tensor4& v) const {
    require_element(v.m, ElementKind::Tensor4Kind);
    return coordinates_of_coords(v.a);
  }

 private:
  static std::size_t coordinate_dim(int m, ElementKind kind) {
    const std::size_t mm = static_cast<std::size_t>(m);
    return kind == ElementKind::Tensor4Kind ? mm * mm * mm * mm : mm * mm;
  }

  static Rational sparse_dot(
      const std::vector<std::pair<std::size_t, Rational>>& a,
      const std::vector<std::pair<std::size_t, Rational>>& b) {
    Rational s;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
      if (a[i].first < b[j].first)
        ++i;
      else if (a[i].first > b[j].first)
        ++j;
      else {
        s += a[i].second * b[j].second;
        ++i;
        ++j;
      }
    }
    return s;
  }

  void require_kind(ElementKind k) const {
    if (kind_ != k) throw KindMismatch("subspace holds the other element kind");
  }
  void require_element(int m, ElementKind k) const {
    require_kind(k);
    if (m != m_) throw SpaceMismatch("element on a different space");
  }

  bool contains_coords(const std::vector<Rational>& v) const {
    std::vector<Rational> rem = v;
    reduce(rem);
    for (const auto& x : rem)
      if (x != 0) return false;
    return true;
  }

  void reduce(std::vector<Rational>& rem) const {
    for (std::size_t r = 0; r < dim(); ++r) {
      const Rational c = rem[pivots_[r]];
      if (c == 0) continue;
      for (const auto& [col, val] : sparse_rows_[r]) rem[col] -= c * val;
    }
  }

  std::vector<Rational> coordinates_of_coords(
      const std::vector<Rational>& v) const {
    std::vector<Rational> rem = v, coeff(dim());
    for (std::size_t r = 0; r < dim(); ++r) {
      const Rational c = rem[pivots_[r]];
      coeff[r] = c;
      if (c == 0) continue;
      for (const auto& [col, val] : sparse_rows_[r]) rem[col] -= c * val;
    }
    for (const auto& x : rem)
      if (x != 0)
        throw DomainViolation("element does not lie in the subspace");
    return coeff;
  }

  std::vector<Rational> project_coords(const std::vector<Rational>& v) const {
    std::vector<Rational> out(coord_dim_);
    if (dim() == 0) return out;
    Matrix rhs(dim(), 1);
    for (std::size_t r = 0; r < dim(); ++r) {
      Rational s;
      for (const auto& [col, val] : sparse_rows_[r]) s += val * v[col];
      rhs.at(r, 0) = std::move(s);
    }
    const Matrix coeff = gram_.solve(rhs);
    for (std::size_t r = 0; r < dim(); ++r) {
      const Rational& c = coeff.at(r, 0);
      if (c == 0) continue;
      for (const auto& [col, val] : sparse_rows_[r]) out[col] += c * val;
    }
    return out;
  }

  int m_;
  ElementKind kind_;
  std::size_t coord_dim_;
  Matrix basis_;
  std::vector<std::vector<std::pair<std::size_t, Rational>>> sparse_rows_;
  std::vector<std::size_t> pivots_;
  Matrix gram_;
};

inline Subspace sum(const Subspace& a, const Subspace& b) {
  if (a.base_dim() != b.base_dim())
    throw SpaceMismatch("subspaces on different spaces");
  if (a.kind() != b.kind()) throw KindMismatch("subspace kinds differ");
  Matrix rows(a.dim() + b.dim(), a.basis_rows().cols());
  for (std::size_t r = 0; r < a.dim(); ++r)
    for (std::size_t c = 0; c < rows.cols(); ++c)
      rows.at(r, c) = a.basis_rows().at(r, c);
  for (std::size_t r = 0; r < b.dim(); ++r)
    for (std::size_t c = 0; c < rows.cols(); ++c)
      rows.at(a.dim() + r, c) = b.basis_rows().at(r, c);
  return Subspace(a.base_dim(), a.kind(), std::move(rows));
}

// Solutions of x in span(a): x also in span(b), via the null space of the
// stacked coefficient system sum x_i a_i - sum y_j b_j = 0.
inline Subspace intersect(const Subspace& a, const Subspace& b) {
  if (a.base_dim() != b.base_dim())
    throw SpaceMismatch("subspaces on different spaces");
  if (a.kind() != b.kind()) throw KindMismatch("subspace kinds differ");
  const std::size_t cols = a.basis_rows().cols();
  Matrix system(cols, a.dim() + b.dim());
  for (std::size_t c = 0; c < cols; ++c) {
    for (std::size_t r = 0; r < a.dim(); ++r)
      system.at(c, r) = a.basis_rows().at(r, c);
    for (std::size_t r = 0; r < b.dim(); ++r)
      system.at(c, a.dim() + r) = -b.basis_rows().at(r, c);
  }
  const Matrix null = system.null_space();
  Matrix rows(null.rows(), cols);
  for (std::size_t k = 0; k < null.rows(); ++k)
    for (std::size_t r = 0; r < a.dim(); ++r) {
      const Rational& x = null.at(k, r);
      if (x == 0) continue;
      for (std::size_t c = 0; c < cols; ++c)
        rows.at(k, c) += x * a.basis_rows().at(r, c);
    }
  return Subspace(a.base_dim(), a.kind(), std::move(rows));
}

// Orthogonal complement of span(inner) taken inside span(outer), with respect
// to the coordinate inner product.
inline Subspace complement_within(const Subspace& inner,
                                  const Subspace& outer) {
  if (inner.base_dim() != outer.base_dim())
    throw SpaceMismatch("subspaces on different spaces");
  if (inner.kind() != outer.kind()) throw KindMismatch("subspace kinds differ");
  // rows: <outer_r, inner_s> as equations on outer coefficients.
  Matrix system(inner.dim(), outer.dim());
  for (std::size_t s = 0; s < inner.dim(); ++s)
    for (std::size_t r = 0; r < outer.dim(); ++r) {
      Rational dot;
      for (std::size_t c = 0; c < outer.basis_rows().cols(); ++c) {
        const Rational& x = outer.basis_rows().at(r, c);
        if (x == 0) continue;
        const Rational& y = inner.basis_rows().at(s, c);
        if (y == 0) continue;
        dot += x * y;
      }
      system.at(s, r) = std::move(dot);
    }
  const Matrix null = system.null_space();
  Matrix rows(null.rows(), outer.basis_rows().cols());
  for (std::size_t k = 0; k < null.rows(); ++k)
    for (std::size_t r = 0; r < outer.dim(); ++r) {
      const Rational& x = null.at(k, r);
      if (x == 0) continue;
      for (std::size_t c = 0; c < rows.cols(); ++c)
        rows.at(k, c) += x * outer.basis_rows().at(r, c);
    }
  return Subspace(outer.base_dim(), outer.kind(), std::move(rows));
}

// Kernel of a linear map restricted to the subspace. The map receives basis
// elements and must return values with a coordinate vector member `a`
// (Tensor4 or Bilinear).
template <typename MapFn>
Subspace kernel_within(const Subspace& space, MapFn&& map) {
  if (space.kind() != ElementKind::Tensor4Kind)
    throw KindMismatch("kernel_within expects a tensor subspace");
  const std::vector<Tensor4> basis = space.tensor_basis();
  if (basis.empty()) return space;
  const auto first = map(basis[0]);
  Matrix system(first.a.size(), basis.size());
  for (std::size_t r = 0; r < basis.size(); ++r) {
    const auto image = map(basis[r]);
    for (std::size_t c = 0; c < image.a.size(); ++c)
      system.at(c, r) = image.a[c];
  }
  const Matrix null = system.null_space();
  Matrix rows(null.rows(), space.basis_rows().cols());
  for (std::size_t k = 0; k < null.rows(); ++k)
    for (std::size_t r = 0; r < basis.size(); ++r) {
      const Rational& x = null.at(k, r);
      if (x == 0) continue;
      for (std::size_t c = 0; c < rows.cols(); ++c)
        rows.at(k, c) += x * space.basis_rows().at(r, c);
    }
  return Subspace(space.base_dim(), space.kind(), std::move(rows));
}

}  // namespace kdec
