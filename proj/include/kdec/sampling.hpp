#pragma once

#include "kdec/subspace.hpp"

// Deterministic random elements of a subspace: small integer combinations of
// the stored basis rows. Sampling draws only through detail::Rng so that a
// fixed seed yields the same element on every platform.

namespace kdec {

namespace detail {

inline std::vector<Rational> random_combination(const Subspace& space,
                                                Rng& rng, int lo, int hi) {
  const Matrix& rows = space.basis_rows();
  std::vector<Rational> out(rows.cols());
  if (space.dim() == 0) return out;
  for (int attempt = 0; attempt < 64; ++attempt) {
    bool nonzero = false;
    std::vector<int> coeff(space.dim());
    for (auto& c : coeff) {
      c = rng.rand_int(lo, hi);
      if (c != 0) nonzero = true;
    }
    if (!nonzero) continue;
    std::fill(out.begin(), out.end(), Rational(0));
    for (std::size_t r = 0; r < space.dim(); ++r) {
      if (coeff[r] == 0) continue;
      const Rational scale(coeff[r]);
      for (std::size_t c = 0; c < rows.cols(); ++c) {
        const Rational& entry = rows.at(r, c);
        if (!entry.is_zero()) out[c] += scale * entry;
      }
    }
    return out;
  }
  throw DomainViolation("random_combination failed to produce a nonzero element");
}

}  // namespace detail

// Random nonzero element of a tensor subspace; the zero subspace yields zero.
inline Tensor4 random_tensor_element(const Subspace& space, detail::Rng& rng,
                                     int lo = -3, int hi = 3) {
  if (space.kind() != ElementKind::Tensor4Kind)
    throw KindMismatch("random_tensor_element requires a tensor subspace");
  Tensor4 out(space.base_dim());
  out.a = detail::random_combination(space, rng, lo, hi);
  return out;
}

// Random nonzero element of a bilinear subspace; the zero subspace yields zero.
inline Bilinear random_bilinear_element(const Subspace& space, detail::Rng& rng,
                                        int lo = -3, int hi = 3) {
  if (space.kind() != ElementKind::BilinearKind)
    throw KindMismatch("random_bilinear_element requires a bilinear subspace");
  Bilinear out(space.base_dim());
  out.a = detail::random_combination(space, rng, lo, hi);
  return out;
}

}  // namespace kdec
