#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "kdec/sampling.hpp"
#include "kdec/witnesses.hpp"

// Scripted property suites behind the `verify` command: each draws a
// deterministic set of random samples from the relevant spaces and checks the
// defining identities by exact rational comparison. Reports are
// byte-deterministic functions of (suite, n, seed, samples).

namespace kdec {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;  // empty on pass; failure context otherwise
};

struct SuiteReport {
  std::string suite;
  int n = 0;
  std::uint64_t seed = 0;
  std::vector<CheckResult> checks;

  bool all_passed() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return true;
  }
};

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {
      "lemma2.2", "lemma3.1", "lemma3.2",  "lemma4.1",
      "lemma4.3", "theorem1.5", "section5"};
  return names;
}

namespace detail {

inline void add_check(SuiteReport& rep, std::string name, bool ok,
                      std::string fail_detail = "") {
  rep.checks.push_back({std::move(name), ok, ok ? "" : std::move(fail_detail)});
}

inline std::string sample_tag(int samples) {
  return " [" + std::to_string(samples) + " samples]";
}

// One aggregated check over `samples` draws; the predicate returns an empty
// string on success and a failure description otherwise.
template <typename Fn>
inline void sampled_check(SuiteReport& rep, const std::string& name,
                          int samples, Fn&& fn) {
  std::string fail;
  for (int s = 0; s < samples && fail.empty(); ++s) {
    std::string verdict = fn(s);
    if (!verdict.empty())
      fail = "sample " + std::to_string(s) + ": " + verdict;
  }
  add_check(rep, name + sample_tag(samples), fail.empty(), fail);
}

inline SuiteReport suite_eigenvalues(const HermitianSpace& V,
                                     std::uint64_t seed, int samples) {
  SuiteReport rep{"lemma2.2", V.n, seed, {}};
  const int m = V.m;
  struct Row {
    int k;
    BilinearFamily family;
    const char* family_name;
    int parity;  // expected Kaehler parity of sigma_k(phi)
    Rational eigenvalue;
  };
  const Row rows[] = {
      {1, BilinearFamily::S2Plus, "S2+", +1, Rational(-(m + 2))},
      {2, BilinearFamily::S2Minus, "S2-", -1, Rational(2 - m)},
      {3, BilinearFamily::L2Plus, "L2+", +1, Rational(-(m + 2))},
      {4, BilinearFamily::L2Minus, "L2-", -1, Rational(-(m + 2))},
  };
  for (const Row& row : rows) {
    const Subspace family = basis_bilinear_family(V, row.family);
    Rng rng(seed + static_cast<std::uint64_t>(row.k));
    const std::string head = "sigma" + std::to_string(row.k) + " on " +
                             row.family_name;
    sampled_check(rep,
                  head + (row.parity > 0 ? " lands in K+" : " lands in K-"),
                  samples, [&](int) -> std::string {
                    const Bilinear phi = random_bilinear_element(family, rng);
                    const Tensor4 img = sigma(row.k, phi);
                    const bool ok = row.parity > 0 ? is_kaehler_plus(img)
                                                   : is_kaehler_minus(img);
                    return ok ? "" : "image fails the parity predicates";
                  });
    Rng rng2(seed + 16 + static_cast<std::uint64_t>(row.k));
    sampled_check(rep,
                  "ricci . " + head + " acts by " +
                      format_rational(row.eigenvalue),
                  samples, [&](int) -> std::string {
                    const Bilinear phi = random_bilinear_element(family, rng2);
                    if (ricci(sigma(row.k, phi)) == phi * row.eigenvalue)
                      return "";
                    return "ricci of the image is not the stated multiple";
                  });
  }
  return rep;
}

inline SuiteReport suite_theta_traces(const HermitianSpace& V,
                                      std::uint64_t seed, int samples) {
  SuiteReport rep{"lemma3.1", V.n, seed, {}};
  const int m = V.m;
  const Subspace s2p = basis_bilinear_family(V, BilinearFamily::S20Plus);
  const Subspace l2p = basis_bilinear_family(V, BilinearFamily::L20Plus);
  struct Row {
    const Subspace* family;
    const char* family_name;
    Rational sigma_13_eigenvalue;
    int sigma_k;
    Rational theta_ricci_eigenvalue;
  };
  const Row rows[] = {
      {&s2p, "S2_0+", Rational(2), 1, Rational(2)},
      {&l2p, "L2_0+", Rational(-2), 3, Rational(-2)},
  };
  for (const Row& row : rows) {
    Rng rng(seed + static_cast<std::uint64_t>(row.sigma_k));
    sampled_check(rep, std::string("theta on ") + row.family_name +
                           " lands in K+",
                  samples, [&](int) -> std::string {
                    const Bilinear phi =
                        random_bilinear_element(*row.family, rng);
                    return is_kaehler_plus(theta(phi))
                               ? ""
                               : "image fails the parity predicates";
                  });
    Rng rng2(seed + 16 + static_cast<std::uint64_t>(row.sigma_k));
    sampled_check(rep,
                  "ricci13 . sigma" + std::to_string(row.sigma_k) + " on " +
                      row.family_name + " acts by " +
                      format_rational(row.sigma_13_eigenvalue),
                  samples, [&](int) -> std::string {
                    const Bilinear phi =
                        random_bilinear_element(*row.family, rng2);
                    if (ricci13(sigma(row.sigma_k, phi)) ==
                        phi * row.sigma_13_eigenvalue)
                      return "";
                    return "ricci13 of the image is not the stated multiple";
                  });
    Rng rng3(seed + 32 + static_cast<std::uint64_t>(row.sigma_k));
    sampled_check(rep,
                  std::string("ricci . theta on ") + row.family_name +
                      " acts by " + format_rational(row.theta_ricci_eigenvalue),
                  samples, [&](int) -> std::string {
                    const Bilinear phi =
                        random_bilinear_element(*row.family, rng3);
                    if (ricci(theta(phi)) == phi * row.theta_ricci_eigenvalue)
                      return "";
                    return "ricci of the image is not the stated multiple";
                  });
    Rng rng4(seed + 48 + static_cast<std::uint64_t>(row.sigma_k));
    sampled_check(rep,
                  std::string("ricci13 . theta on ") + row.family_name +
                      " acts by " + format_rational(Rational(-(m + 2))),
                  samples, [&](int) -> std::string {
                    const Bilinear phi =
                        random_bilinear_element(*row.family, rng4);
                    if (ricci13(theta(phi)) == phi * Rational(-(m + 2)))
                      return "";
                    return "ricci13 of the image is not the stated multiple";
                  });
  }
  return rep;
}

inline SuiteReport suite_pi7_pi8(const HermitianSpace& V, std::uint64_t seed,
                                 int samples) {
  SuiteReport rep{"lemma3.2", V.n, seed, {}};
  const int m = V.m;
  const Subspace dom = basis_kahler_pm_ker_ricci(V, +1);
  Rng rng(seed);
  sampled_check(rep, "pi7 and pi8 are annihilating idempotents on K+ ker rho",
                samples, [&](int) -> std::string {
                  const Tensor4 A = random_tensor_element(dom, rng);
                  const Tensor4 a7 = pi7(A), a8 = pi8(A);
                  if (pi7(a7) != a7) return "pi7 is not idempotent";
                  if (pi8(a8) != a8) return "pi8 is not idempotent";
                  if (!pi7(a8).is_zero()) return "pi7 . pi8 != 0";
                  if (!pi8(a7).is_zero()) return "pi8 . pi7 != 0";
                  return "";
                });
  Rng rng2(seed + 1);
  sampled_check(rep, "pi7 and pi8 images satisfy the W7 / W8 predicates",
                samples, [&](int) -> std::string {
                  const Tensor4 A = random_tensor_element(dom, rng2);
                  if (!is_component_member(ComponentLabel::W7, pi7(A)))
                    return "pi7 image fails the W7 predicates";
                  if (!is_component_member(ComponentLabel::W8, pi8(A)))
                    return "pi8 image fails the W8 predicates";
                  return "";
                });
  Rng rng3(seed + 2);
  sampled_check(rep, "A - pi7(A) - pi8(A) lies in ker ricci13", samples,
                [&](int) -> std::string {
                  const Tensor4 A = random_tensor_element(dom, rng3);
                  return ricci13(A - pi7(A) - pi8(A)).is_zero()
                             ? ""
                             : "the remainder has a nonzero ricci13";
                });
  const Rational scale(-1, m * (m + 4));
  const Subspace s20 = basis_bilinear_family(V, BilinearFamily::S20Plus);
  Rng rng4(seed + 3);
  sampled_check(rep,
                "the sigma1/theta combination inverts ricci13 onto W7",
                samples, [&](int) -> std::string {
                  const Bilinear phi = random_bilinear_element(s20, rng4);
                  const Tensor4 A =
                      (sigma(1, phi) * Rational(2) + theta(phi) * Rational(m + 2)) *
                      scale;
                  if (ricci13(A) != phi) return "ricci13 does not recover phi";
                  if (pi7(A) != A) return "pi7 does not fix the combination";
                  return "";
                });
  const Subspace l20 = basis_bilinear_family(V, BilinearFamily::L20Plus);
  Rng rng5(seed + 4);
  sampled_check(rep,
                "the sigma3/theta combination inverts ricci13 onto W8",
                samples, [&](int) -> std::string {
                  const Bilinear phi = random_bilinear_element(l20, rng5);
                  const Tensor4 A =
                      (sigma(3, phi) * Rational(-2) + theta(phi) * Rational(m + 2)) *
                      scale;
                  if (ricci13(A) != phi) return "ricci13 does not recover phi";
                  if (pi8(A) != A) return "pi8 does not fix the combination";
                  return "";
                });
  return rep;
}

inline SuiteReport suite_conjugate(const HermitianSpace& V, std::uint64_t seed,
                                   int samples) {
  SuiteReport rep{"lemma4.1", V.n, seed, {}};
  const Subspace K = basis_kahler(V);
  Rng rng(seed);
  sampled_check(rep, "conjugation squares to minus the identity on K", samples,
                [&](int) -> std::string {
                  const Tensor4 A = random_tensor_element(K, rng);
                  return conjugate(conjugate(A)) == -A ? ""
                                                       : "T^2(A) != -A";
                });
  Rng rng2(seed + 1);
  sampled_check(rep, "conjugation preserves the Kaehler space and parity",
                samples, [&](int) -> std::string {
                  const Tensor4 A = random_tensor_element(K, rng2);
                  if (!is_kaehler_curvature(conjugate(A)))
                    return "image is not a Kaehler curvature tensor";
                  const auto [p, q] = parity_split_tensor(A);
                  if (!is_kaehler_plus(conjugate(p)))
                    return "K+ part is not preserved";
                  if (!is_kaehler_minus(conjugate(q)))
                    return "K- part is not preserved";
                  return "";
                });
  Rng rng3(seed + 2);
  sampled_check(rep, "conjugation is an inner-product isometry", samples,
                [&](int) -> std::string {
                  const Tensor4 A = random_tensor_element(K, rng3);
                  const Tensor4 B = random_tensor_element(K, rng3);
                  return inner_product(conjugate(A), conjugate(B)) ==
                                 inner_product(A, B)
                             ? ""
                             : "<TA, TB> != <A, B>";
                });
  Rng rng4(seed + 3);
  sampled_check(rep,
                "conjugation twists pullbacks by the chi character", samples,
                [&](int s) -> std::string {
                  const Tensor4 A = random_tensor_element(K, rng4);
                  const int chi = (s % 2 == 0) ? 1 : -1;
                  const GroupElement g =
                      random_gl_star(seed * 977 + static_cast<std::uint64_t>(s),
                                     V, chi);
                  const Tensor4 lhs = conjugate(pullback_tensor(g, A));
                  const Tensor4 rhs =
                      pullback_tensor(g, conjugate(A)) * Rational(g.chi);
                  return lhs == rhs ? "" : "T(g.A) != chi(g) g.(TA)";
                });
  return rep;
}

inline SuiteReport suite_pi9_pi10_pi11(const HermitianSpace& V,
                                       std::uint64_t seed, int samples) {
  SuiteReport rep{"lemma4.3", V.n, seed, {}};
  const Subspace dom = basis_kahler_pm_ker_ricci(V, +1);
  Rng rng(seed);
  sampled_check(rep, "pi7..pi11 sum to the identity on K+ ker rho", samples,
                [&](int) -> std::string {
                  const Tensor4 A = random_tensor_element(dom, rng);
                  const Tensor4 total =
                      pi7(A) + pi8(A) + pi9(A) + pi10(A) + pi11(A);
                  return total == A ? "" : "the five projections do not sum";
                });
  Rng rng2(seed + 1);
  sampled_check(rep, "pi9, pi10, pi11 images satisfy their W predicates",
                samples, [&](int) -> std::string {
                  const Tensor4 A = random_tensor_element(dom, rng2);
                  if (!is_component_member(ComponentLabel::W9, pi9(A)))
                    return "pi9 image fails the W9 predicates";
                  if (!is_component_member(ComponentLabel::W10, pi10(A)))
                    return "pi10 image fails the W10 predicates";
                  if (!is_component_member(ComponentLabel::W11, pi11(A)))
                    return "pi11 image fails the W11 predicates";
                  return "";
                });
  Rng rng3(seed + 2);
  sampled_check(rep, "pi10 equals minus conjugation . pi9 . conjugation",
                samples, [&](int) -> std::string {
                  const Tensor4 A = random_tensor_element(dom, rng3);
                  return pi10(A) == -conjugate(pi9(conjugate(A)))
                             ? ""
                             : "the conjugation intertwining fails";
                });
  const Subspace w9 = w_space(V, 9);
  Rng rng4(seed + 3);
  sampled_check(rep,
                "the quarter symmetrization fixes W9 and matches pi9 there",
                samples, [&](int) -> std::string {
                  const Tensor4 w = random_tensor_element(w9, rng4);
                  if (pi9(w) != w) return "pi9 does not fix a W9 element";
                  if (quarter_symmetrization(w) != w)
                    return "the symmetrization does not fix a W9 element";
                  return "";
                });
  const Subspace traceless = basis_kahler_plus_fully_traceless(V);
  Rng rng5(seed + 4);
  sampled_check(rep,
                "the quarter symmetrization computes pi9 on the fully "
                "traceless part",
                samples, [&](int) -> std::string {
                  const Tensor4 B = random_tensor_element(traceless, rng5);
                  return quarter_symmetrization(B) == pi9(B)
                             ? ""
                             : "symmetrization and pi9 disagree";
                });
  return rep;
}

inline SuiteReport suite_decomposition(const HermitianSpace& V,
                                       std::uint64_t seed, int samples) {
  SuiteReport rep{"theorem1.5", V.n, seed, {}};
  const Subspace K = basis_kahler(V);
  Rng rng(seed);
  sampled_check(rep, "components sum to the input with zero residual", samples,
                [&](int) -> std::string {
                  const Tensor4 A = random_tensor_element(K, rng);
                  const Decomposition d = decompose(A);
                  if (!d.residual.is_zero()) return "nonzero residual";
                  Tensor4 total(A.m);
                  for (const auto& c : d.components) total = total + c.tensor;
                  return total == A ? "" : "components do not sum to A";
                });
  Rng rng2(seed + 1);
  sampled_check(rep, "every component passes its membership predicates",
                samples, [&](int) -> std::string {
                  const Tensor4 A = random_tensor_element(K, rng2);
                  for (const auto& c : decompose(A).components)
                    if (!is_component_member(c.label, c.tensor))
                      return std::string("component ") +
                             component_label_name(c.label) +
                             " fails its predicates";
                  return "";
                });
  Rng rng3(seed + 2);
  sampled_check(rep, "components are pairwise orthogonal", samples,
                [&](int) -> std::string {
                  const Tensor4 A = random_tensor_element(K, rng3);
                  const Decomposition d = decompose(A);
                  for (std::size_t a = 0; a < d.components.size(); ++a)
                    for (std::size_t b = a + 1; b < d.components.size(); ++b)
                      if (!inner_product(d.components[a].tensor,
                                         d.components[b].tensor)
                               .is_zero())
                        return std::string(
                                   component_label_name(d.components[a].label)) +
                               " and " +
                               component_label_name(d.components[b].label) +
                               " are not orthogonal";
                  return "";
                });
  Rng rng4(seed + 3);
  const int redecompose_samples = samples < 3 ? samples : 3;
  sampled_check(rep, "re-decomposing a component returns it unchanged",
                redecompose_samples, [&](int) -> std::string {
                  const Tensor4 A = random_tensor_element(K, rng4);
                  for (const auto& c : decompose(A).components) {
                    for (const auto& c2 : decompose(c.tensor).components) {
                      if (c2.label == c.label && c2.tensor != c.tensor)
                        return std::string("component ") +
                               component_label_name(c.label) +
                               " is not reproduced";
                      if (c2.label != c.label && !c2.tensor.is_zero())
                        return std::string("component ") +
                               component_label_name(c.label) +
                               " leaks into " +
                               component_label_name(c2.label);
                    }
                  }
                  return "";
                });
  Rng rng5(seed + 4);
  sampled_check(rep, "decomposition commutes with unitary pullbacks",
                redecompose_samples, [&](int s) -> std::string {
                  const Tensor4 A = random_tensor_element(K, rng5);
                  const GroupElement u = random_unitary_star(
                      seed * 31 + static_cast<std::uint64_t>(s), V,
                      s % 2 == 0 ? 1 : -1);
                  const Decomposition before = decompose(A);
                  const Decomposition after = decompose(pullback_tensor(u, A));
                  for (std::size_t k = 0; k < after.components.size(); ++k) {
                    const Tensor4 moved =
                        pullback_tensor(u, before.components[k].tensor);
                    if (after.components[k].tensor != moved)
                      return std::string("component ") +
                             component_label_name(after.components[k].label) +
                             " does not commute with the pullback";
                  }
                  return "";
                });
  return rep;
}

inline SuiteReport suite_section5(const HermitianSpace& V, std::uint64_t seed,
                                  int samples) {
  (void)samples;
  SuiteReport rep{"section5", V.n, seed, {}};
  for (const char* label : {"5.1", "5.2", "5.3", "5.4", "5.5"}) {
    if (std::string(label) == "5.3" && V.m < 6) {
      add_check(rep, "section 5.3 replay skipped (needs m >= 6)", true);
      continue;
    }
    const WitnessReport wr = replay_section(label, V);
    std::string first_fail;
    for (const auto& c : wr.checks)
      if (!c.passed) {
        first_fail = c.name + " (expected " + c.expected + ", got " +
                     c.actual + ")";
        break;
      }
    add_check(rep,
              std::string("section ") + label + " replay (" +
                  std::to_string(wr.checks.size()) + " checks)",
              wr.all_passed(), first_fail);
  }
  const OrbitSpanResult orbit =
      orbit_span_check(section5_seed_tensors(V), section5_group_sample(V),
                       basis_kahler_pm_ker_ricci(V, +1));
  std::string detail;
  if (!orbit.spans) {
    detail = "achieved " + std::to_string(orbit.achieved_dim) + " of " +
             std::to_string(orbit.target_dim);
    for (int w : orbit.missed_w) detail += ", missed W" + std::to_string(w);
  }
  add_check(rep, "witness orbits span K+ ker rho", orbit.spans, detail);
  return rep;
}

}  // namespace detail

// Runs one named suite. The `samples` argument scales every sampled check;
// reports are deterministic in (suite, n, seed, samples).
inline SuiteReport run_suite(const std::string& suite, int n,
                             std::uint64_t seed, int samples = 10) {
  if (n < 2) throw DomainViolation("verification suites need n >= 2");
  if (samples < 1) throw DomainViolation("samples must be positive");
  const HermitianSpace V = make_space(n);
  if (suite == "lemma2.2") return detail::suite_eigenvalues(V, seed, samples);
  if (suite == "lemma3.1") return detail::suite_theta_traces(V, seed, samples);
  if (suite == "lemma3.2") return detail::suite_pi7_pi8(V, seed, samples);
  if (suite == "lemma4.1") return detail::suite_conjugate(V, seed, samples);
  if (suite == "lemma4.3")
    return detail::suite_pi9_pi10_pi11(V, seed, samples);
  if (suite == "theorem1.5")
    return detail::suite_decomposition(V, seed, samples);
  if (suite == "section5") return detail::suite_section5(V, seed, samples);
  throw DomainViolation("unknown suite '" + suite + "'");
}

// Expands "all" into every named suite.
inline std::vector<SuiteReport> run_suites(const std::string& suite, int n,
                                           std::uint64_t seed,
                                           int samples = 10) {
  std::vector<SuiteReport> out;
  if (suite == "all") {
    for (const std::string& name : suite_names())
      out.push_back(run_suite(name, n, seed, samples));
  } else {
    out.push_back(run_suite(suite, n, seed, samples));
  }
  return out;
}

}  // namespace kdec
