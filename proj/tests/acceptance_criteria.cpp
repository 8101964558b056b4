// Acceptance gate: one line per criterion, exact rational arithmetic
// throughout, zero tolerance. Exits nonzero if any criterion fails.
//
// Usage: kdec_acceptance <derived_values.json>
//
// KDEC_ACCEPT_FAST=1 skips the m = 8 dimension table in criterion 5 (the
// only block that takes longer than a few seconds); the criterion line says
// so when it happens.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "kdec/hermitian_space.hpp"
#include "kdec/maps.hpp"
#include "kdec/rational.hpp"
#include "kdec/sampling.hpp"
#include "kdec/spaces.hpp"
#include "kdec/witnesses.hpp"

using namespace kdec;
using nlohmann::json;

namespace {

json g_golden;
std::map<int, std::string> g_notes;

bool fast_mode() {
  const char* v = std::getenv("KDEC_ACCEPT_FAST");
  return v != nullptr && std::string(v) == "1";
}

Rational golden_rational(const json& node) {
  return parse_rational(node.get<std::string>());
}

// ---- lazily built shared spaces -------------------------------------------

const HermitianSpace& space_for(int n) {
  static std::map<int, HermitianSpace> cache;
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, make_space(n)).first;
  return it->second;
}

const Subspace& ricci_flat_plus(int n) {
  static std::map<int, Subspace> cache;
  auto it = cache.find(n);
  if (it == cache.end())
    it = cache.emplace(n, basis_kahler_pm_ker_ricci(space_for(n), 1)).first;
  return it->second;
}

const Subspace& ricci_flat_minus(int n) {
  static std::map<int, Subspace> cache;
  auto it = cache.find(n);
  if (it == cache.end())
    it = cache.emplace(n, basis_kahler_pm_ker_ricci(space_for(n), -1)).first;
  return it->second;
}

const Subspace& w_cached(int n, int k) {
  static std::map<std::pair<int, int>, Subspace> cache;
  auto it = cache.find({n, k});
  if (it == cache.end())
    it = cache.emplace(std::make_pair(n, k), w_space(space_for(n), k)).first;
  return it->second;
}

std::string tuple_name(int i, int j, int k, int l) {
  return "(" + std::to_string(i) + "," + std::to_string(j) + "," +
         std::to_string(k) + "," + std::to_string(l) + ")";
}

// ---- criterion bodies: return "" on pass, a diagnostic otherwise ----------

std::string criterion_eigenvalues() {
  constexpr int kSamples = 50;
  for (int n : {2, 3, 4}) {
    const HermitianSpace& V = space_for(n);
    const int m = V.m;
    struct SigmaRow {
      BilinearFamily family;
      const char* name;
      int k;
      Rational eigenvalue;
    };
    const SigmaRow sigma_rows[] = {
        {BilinearFamily::S2Plus, "S2+", 1, Rational(-(m + 2))},
        {BilinearFamily::S2Minus, "S2-", 2, Rational(2 - m)},
        {BilinearFamily::L2Plus, "L2+", 3, Rational(-(m + 2))},
        {BilinearFamily::L2Minus, "L2-", 4, Rational(-(m + 2))},
    };
    for (const SigmaRow& row : sigma_rows) {
      const Subspace F = basis_bilinear_family(V, row.family);
      detail::Rng rng(101 + static_cast<std::uint64_t>(16 * n + row.k));
      for (int s = 0; s < kSamples; ++s) {
        const Bilinear phi = random_bilinear_element(F, rng);
        if (ricci(sigma(row.k, phi)) != phi * row.eigenvalue)
          return "ricci(sigma" + std::to_string(row.k) + " phi) != " +
                 format_rational(row.eigenvalue) + " phi on " + row.name +
                 " at m = " + std::to_string(m);
      }
    }
    struct ThetaRow {
      BilinearFamily family;
      const char* name;
      int k;
      Rational contraction13_eigenvalue;
    };
    const ThetaRow theta_rows[] = {
        {BilinearFamily::S20Plus, "S2_0+", 1, Rational(2)},
        {BilinearFamily::L20Plus, "L2_0+", 3, Rational(-2)},
    };
    for (const ThetaRow& row : theta_rows) {
      const Subspace F = basis_bilinear_family(V, row.family);
      detail::Rng rng(131 + static_cast<std::uint64_t>(16 * n + row.k));
      for (int s = 0; s < kSamples; ++s) {
        const Bilinear phi = random_bilinear_element(F, rng);
        if (ricci13(sigma(row.k, phi)) != phi * row.contraction13_eigenvalue)
          return "ricci13(sigma" + std::to_string(row.k) + " phi) != " +
                 format_rational(row.contraction13_eigenvalue) + " phi on " +
                 row.name + " at m = " + std::to_string(m);
        const Tensor4 th = theta(phi);
        if (ricci(th) != phi * row.contraction13_eigenvalue)
          return std::string("ricci(theta phi) is not the stated multiple "
                             "on ") +
                 row.name + " at m = " + std::to_string(m);
        if (ricci13(th) != phi * Rational(-(m + 2)))
          return std::string("ricci13(theta phi) != -(m+2) phi on ") +
                 row.name + " at m = " + std::to_string(m);
      }
    }
  }
  return "";
}

std::string criterion_projector_matrices() {
  for (int n : {2, 3}) {
    const HermitianSpace& V = space_for(n);
    const Subspace& dom = ricci_flat_plus(n);
    const std::vector<Tensor4> basis = dom.tensor_basis();
    const std::size_t d = basis.size();
    const std::function<Tensor4(const Tensor4&)> projectors[] = {
        [](const Tensor4& A) { return pi7(A); },
        [](const Tensor4& A) { return pi8(A); },
        [](const Tensor4& A) { return pi9(A); },
        [](const Tensor4& A) { return pi10(A); },
        [](const Tensor4& A) { return pi11(A); },
    };
    std::vector<Matrix> mats;
    for (int k = 7; k <= 11; ++k) {
      const auto& pi_k = projectors[k - 7];
      const Subspace& wk = w_cached(n, k);
      Matrix P(d, d);
      for (std::size_t c = 0; c < d; ++c) {
        const Tensor4 image = pi_k(basis[c]);
        if (image != wk.project(basis[c]))
          return "pi" + std::to_string(k) +
                 " disagrees with Gram projection on basis element " +
                 std::to_string(c) + " at m = " + std::to_string(V.m);
        const std::vector<Rational> coords = dom.coordinates_of(image);
        for (std::size_t r = 0; r < d; ++r) P.at(r, c) = coords[r];
      }
      mats.push_back(std::move(P));
    }
    Matrix total(d, d);
    for (std::size_t a = 0; a < mats.size(); ++a) {
      if (mats[a] * mats[a] != mats[a])
        return "pi" + std::to_string(7 + static_cast<int>(a)) +
               " matrix is not idempotent at m = " + std::to_string(V.m);
      for (std::size_t b = 0; b < mats.size(); ++b) {
        if (a == b) continue;
        if (!(mats[a] * mats[b]).is_zero())
          return "pi" + std::to_string(7 + static_cast<int>(a)) + " pi" +
                 std::to_string(7 + static_cast<int>(b)) +
                 " != 0 at m = " + std::to_string(V.m);
      }
      total = total + mats[a];
    }
    if (total != Matrix::identity(d))
      return "projector matrices do not sum to the identity at m = " +
             std::to_string(V.m);
  }
  return "";
}

std::string criterion_conjugation() {
  for (int n : {2, 3}) {
    const HermitianSpace& V = space_for(n);
    const std::vector<Tensor4> basis = ricci_flat_plus(n).tensor_basis();
    for (std::size_t i = 0; i < basis.size(); ++i) {
      if (conjugate(conjugate(basis[i])) != -basis[i])
        return "conjugate . conjugate != -id on basis element " +
               std::to_string(i) + " at m = " + std::to_string(V.m);
      for (std::size_t j = i; j < basis.size(); ++j)
        if (inner_product(conjugate(basis[i]), conjugate(basis[j])) !=
            inner_product(basis[i], basis[j]))
          return "conjugation is not an isometry on basis pair (" +
                 std::to_string(i) + "," + std::to_string(j) +
                 ") at m = " + std::to_string(V.m);
    }
    const std::pair<int, int> images[] = {{9, 10}, {10, 9}, {7, 8},
                                          {8, 7},  {11, 11}};
    for (const auto& [src, dst] : images) {
      const Subspace& target = w_cached(n, dst);
      for (const Tensor4& b : w_cached(n, src).tensor_basis())
        if (!target.contains(conjugate(b)))
          return "conjugate(W" + std::to_string(src) +
                 ") is not inside W" + std::to_string(dst) +
                 " at m = " + std::to_string(V.m);
    }
  }
  // character twist over 20 group elements, half of them anti-holomorphic
  int minus_chi_seen = 0;
  for (int n : {2, 3}) {
    const HermitianSpace& V = space_for(n);
    detail::Rng rng(211 + static_cast<std::uint64_t>(n));
    const Tensor4 A = random_tensor_element(basis_kahler(V), rng);
    for (int s = 0; s < 10; ++s) {
      const int chi = s % 2 == 0 ? 1 : -1;
      if (chi == -1) ++minus_chi_seen;
      const GroupElement xi = random_gl_star(
          503 * static_cast<std::uint64_t>(s + 1) + static_cast<std::uint64_t>(n),
          V, chi);
      const Tensor4 lhs = conjugate(pullback_tensor(xi, A));
      const Tensor4 rhs = pullback_tensor(xi, conjugate(A)) * Rational(chi);
      if (lhs != rhs)
        return "conjugate(xi . A) != chi xi . conjugate(A) for sample " +
               std::to_string(s) + " at m = " + std::to_string(V.m);
    }
  }
  if (minus_chi_seen < 5) return "not enough anti-holomorphic samples";
  return "";
}

std::string criterion_decomposition_roundtrip() {
  constexpr int kTensors = 100;
  constexpr int kPullbacks = 10;
  for (int n : {2, 3}) {
    const HermitianSpace& V = space_for(n);
    const Subspace K = basis_kahler(V);
    detail::Rng rng(307 + static_cast<std::uint64_t>(n));
    for (int t = 0; t < kTensors; ++t) {
      const Tensor4 A = random_tensor_element(K, rng);
      const Decomposition d = decompose(A);
      if (!d.residual.is_zero())
        return "nonzero residual for sample " + std::to_string(t) +
               " at m = " + std::to_string(V.m);
      Tensor4 total(V.m);
      for (const auto& c : d.components) {
        total = total + c.tensor;
        if (!is_component_member(c.label, c.tensor))
          return std::string("component ") + component_label_name(c.label) +
                 " fails its membership predicates at m = " +
                 std::to_string(V.m);
      }
      if (total != A)
        return "components do not sum to the input for sample " +
               std::to_string(t) + " at m = " + std::to_string(V.m);
      for (std::size_t a = 0; a < d.components.size(); ++a)
        for (std::size_t b = a + 1; b < d.components.size(); ++b)
          if (!inner_product(d.components[a].tensor, d.components[b].tensor)
                   .is_zero())
            return std::string(
                       component_label_name(d.components[a].label)) +
                   " and " + component_label_name(d.components[b].label) +
                   " are not orthogonal at m = " + std::to_string(V.m);
      for (int p = 0; p < kPullbacks; ++p) {
        const GroupElement u = random_unitary_star(
            802 + static_cast<std::uint64_t>(100 * t + 10 * n + p), V,
            p % 2 == 0 ? 1 : -1);
        const Decomposition moved = decompose(pullback_tensor(u, A));
        for (std::size_t k = 0; k < moved.components.size(); ++k)
          if (moved.components[k].tensor !=
              pullback_tensor(u, d.components[k].tensor))
            return std::string("component ") +
                   component_label_name(moved.components[k].label) +
                   " does not commute with a unitary pullback at m = " +
                   std::to_string(V.m);
      }
    }
  }
  return "";
}

std::string check_theorem_sums(int n) {
  const HermitianSpace& V = space_for(n);
  const int m = V.m;
  const std::size_t kahler = basis_kahler(V).dim();
  const std::size_t kp = basis_kahler_pm(V, 1).dim();
  const std::size_t km = basis_kahler_pm(V, -1).dim();
  const std::size_t s2m =
      basis_bilinear_family(V, BilinearFamily::S2Minus).dim();
  const std::size_t l2m =
      basis_bilinear_family(V, BilinearFamily::L2Minus).dim();
  const std::size_t s20 =
      basis_bilinear_family(V, BilinearFamily::S20Plus).dim();
  const std::size_t l20 =
      basis_bilinear_family(V, BilinearFamily::L20Plus).dim();
  std::map<int, std::size_t> w;
  for (int k = 7; k <= 12; ++k) w[k] = w_cached(n, k).dim();

  if (kahler != kp + km)
    return "dim K != dim K+ + dim K- at m = " + std::to_string(m);
  if (kp != 2 + 2 * s20 + 2 * l20 + w[9] + w[10] + w[11])
    return "plus-parity sum identity fails at m = " + std::to_string(m);
  if (km != s2m + l2m + w[12])
    return "minus-parity sum identity fails at m = " + std::to_string(m);
  if (w[7] != s20 || w[8] != l20)
    return "W7/W8 dimensions do not match the trace-free families at m = " +
           std::to_string(m);
  return "";
}

std::string criterion_dimensions() {
  for (int n : {1, 2, 3}) {
    const HermitianSpace& V = space_for(n);
    const std::size_t m = static_cast<std::size_t>(V.m);
    if (basis_affine(V).dim() != m * m * (m * m - 1) / 3)
      return "affine dimension formula fails at m = " + std::to_string(V.m);
    const std::size_t nn = static_cast<std::size_t>(n);
    if (basis_bilinear_family(V, BilinearFamily::S2Plus).dim() != nn * nn ||
        basis_bilinear_family(V, BilinearFamily::S2Minus).dim() !=
            nn * (nn + 1) ||
        basis_bilinear_family(V, BilinearFamily::L2Plus).dim() != nn * nn ||
        basis_bilinear_family(V, BilinearFamily::L2Minus).dim() !=
            nn * (nn - 1))
      return "bilinear family dimensions fail at n = " + std::to_string(n);
  }
  // frozen dimension tables (the independent recomputation covers m 2 and 4)
  for (const auto& [key, n] :
       {std::pair<const char*, int>{"m2", 1}, {"m4", 2}}) {
    const auto& block = g_golden.at("dims").at(key);
    const HermitianSpace& V = space_for(n);
    if (basis_kahler(V).dim() != block.at("kahler").get<std::size_t>() ||
        basis_kahler_pm(V, 1).dim() !=
            block.at("kahler_plus").get<std::size_t>() ||
        basis_kahler_pm(V, -1).dim() !=
            block.at("kahler_minus").get<std::size_t>())
      return std::string("frozen dimension table mismatch in block ") + key;
    if (V.m >= 4)
      for (int k = 7; k <= 12; ++k)
        if (w_cached(n, k).dim() !=
            block.at("w" + std::to_string(k)).get<std::size_t>())
          return "frozen W" + std::to_string(k) + " dimension mismatch in " +
                 key;
  }
  if (w_cached(2, 11).dim() != 0 || w_cached(2, 12).dim() != 0)
    return "W11 and W12 do not vanish at m = 4";
  for (int n : {2, 3}) {
    const std::string fail = check_theorem_sums(n);
    if (!fail.empty()) return fail;
  }
  if (fast_mode()) {
    g_notes[5] = "m = 8 table skipped, KDEC_ACCEPT_FAST=1";
  } else {
    const std::string fail = check_theorem_sums(4);
    if (!fail.empty()) return fail;
  }
  return "";
}

std::string criterion_replays() {
  for (int n : {2, 3}) {
    const HermitianSpace& V = space_for(n);
    const std::vector<std::string> labels =
        V.m >= 6 ? std::vector<std::string>{"5.1", "5.2", "5.3", "5.4", "5.5"}
                 : std::vector<std::string>{"5.1", "5.2", "5.4", "5.5"};
    for (const std::string& label : labels) {
      const WitnessReport rep = replay_section(label, V);
      for (const auto& c : rep.checks)
        if (!c.passed)
          return "section " + label + " at m = " + std::to_string(V.m) +
                 ": " + c.name + " (expected " + c.expected + ", actual " +
                 c.actual + ")";
    }
  }
  // c1 and c2 against the frozen oracle values, including m = 8
  for (int n : {2, 3, 4}) {
    const HermitianSpace& V = space_for(n);
    const int m = V.m;
    Bilinear phi(m);
    phi.at(0, 2) = 1;
    phi.at(2, 0) = 1;
    phi.at(1, 3) = 1;
    phi.at(3, 1) = 1;
    const Tensor4 s1 = sigma(1, phi);
    const Tensor4 th = theta(phi);
    const Rational scale = Rational(-1) / (Rational(m) * (m + 4));
    const Rational c1 =
        scale * (s1.at(2, 3, 2, 0) * 2 + th.at(2, 3, 2, 0) * (m + 2));
    const Rational c2 =
        scale * (s1.at(2, 3, 2, 1) * 2 + th.at(2, 3, 2, 1) * (m + 2));
    const std::string key = std::to_string(m);
    if (c1 != golden_rational(g_golden.at("c1").at(key)))
      return "c1 does not match the frozen value at m = " + key;
    if (c2 != golden_rational(g_golden.at("c2").at(key)))
      return "c2 does not match the frozen value at m = " + key;
    if (c2.is_zero()) return "c2 vanishes at m = " + key;
  }
  return "";
}

std::string criterion_negative_controls() {
  const HermitianSpace& V = space_for(2);
  // an invertible J-commuting stretch that is not an isometry
  Matrix stretch = Matrix::identity(V.m);
  stretch.at(0, 0) = Rational(2);
  stretch.at(1, 1) = Rational(2);
  const GroupElement xi = make_group_element(stretch);
  const Tensor4 A = witness_w9(V);
  if (ricci13(pullback_tensor(xi, A)) == pullback_bilinear(xi, ricci13(A)))
    return "ricci13 unexpectedly commutes with the non-unitary stretch";

  const Subspace affine = basis_affine(V);
  detail::Rng rng(401);
  for (int attempt = 0; attempt < 20; ++attempt) {
    const Tensor4 R = random_tensor_element(affine, rng);
    const auto violation = first_kaehler_violation(R);
    if (!violation) continue;  // rare: the sample happened to be Kaehler
    try {
      decompose(R);
      return "decompose accepted a non-Kaehler tensor";
    } catch (const NotKaehler& e) {
      const std::string message = e.what();
      if (message.find(violation->constraint) == std::string::npos)
        return "rejection message does not name the violated constraint: " +
               message;
      const auto& ix = violation->indices;
      if (message.find(tuple_name(ix[0], ix[1], ix[2], ix[3])) ==
          std::string::npos)
        return "rejection message does not name the witnessing indices: " +
               message;
      return "";
    }
  }
  return "no non-Kaehler affine sample found in 20 draws";
}

std::string criterion_dimension_inequivalence() {
  const int n = 3;
  const HermitianSpace& V = space_for(n);
  const std::vector<std::pair<std::string, std::size_t>> modules = {
      {"K+ ker rho", ricci_flat_plus(n).dim()},
      {"K- ker rho", ricci_flat_minus(n).dim()},
      {"S2+", basis_bilinear_family(V, BilinearFamily::S2Plus).dim()},
      {"S2-", basis_bilinear_family(V, BilinearFamily::S2Minus).dim()},
      {"L2+", basis_bilinear_family(V, BilinearFamily::L2Plus).dim()},
      {"L2-", basis_bilinear_family(V, BilinearFamily::L2Minus).dim()},
  };
  const std::vector<std::size_t> expected = {90, 30, 9, 12, 9, 6};
  for (std::size_t t = 0; t < modules.size(); ++t)
    if (modules[t].second != expected[t])
      return modules[t].first + " has dimension " +
             std::to_string(modules[t].second) + ", expected " +
             std::to_string(expected[t]);
  for (std::size_t a = 0; a < modules.size(); ++a)
    for (std::size_t b = a + 1; b < modules.size(); ++b) {
      const bool allowed_coincidence = (a == 2 && b == 4);  // S2+ vs L2+
      if ((modules[a].second == modules[b].second) != allowed_coincidence)
        return "unexpected dimension relation between " + modules[a].first +
               " and " + modules[b].first;
    }
  return "";
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: " << argv[0] << " <derived_values.json>\n";
    return 2;
  }
  {
    std::ifstream in(argv[1]);
    if (!in.good()) {
      std::cerr << "cannot open " << argv[1] << "\n";
      return 2;
    }
    try {
      g_golden = json::parse(in);
    } catch (const json::exception& e) {
      std::cerr << "cannot parse " << argv[1] << ": " << e.what() << "\n";
      return 2;
    }
  }

  struct Criterion {
    int id;
    std::string description;
    std::function<std::string()> run;
  };
  const std::vector<Criterion> criteria = {
      {1,
       "eigenvalue identities on >=50 samples per family at m in {4,6,8}",
       criterion_eigenvalues},
      {2,
       "projector matrices idempotent, annihilating, summing to the "
       "identity, and equal to Gram projection at m in {4,6}",
       criterion_projector_matrices},
      {3,
       "conjugation is an involution up to sign, an isometry, swaps the "
       "paired summands, and twists by the character for 20 group elements",
       criterion_conjugation},
      {4,
       "decomposition of 100 random curvature tensors per dimension: exact "
       "sum, orthogonality, membership, and 10 unitary pullbacks each",
       criterion_decomposition_roundtrip},
      {5,
       "dimension bookkeeping: affine formula, bilinear families, frozen "
       "tables, and parity sum identities",
       criterion_dimensions},
      {6,
       "replayed derivations match every quoted component value and the "
       "frozen c1/c2 at m in {4,6,8}",
       criterion_replays},
      {7,
       "negative controls: contraction13 equivariance fails off the unitary "
       "group; non-curvature input is rejected with the constraint named",
       criterion_negative_controls},
      {8,
       "module dimensions at m = 6 are pairwise distinct except S2+ vs L2+",
       criterion_dimension_inequivalence},
  };

  int passed = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    std::string fail;
    try {
      fail = c.run();
    } catch (const std::exception& e) {
      fail = std::string("exception: ") + e.what();
    }
    const auto elapsed =
        std::chrono::duration_cast<std::chrono::milliseconds>(
            std::chrono::steady_clock::now() - start)
            .count();
    std::ostringstream line;
    line << "CRITERION " << c.id << " "
         << (fail.empty() ? "PASS" : "FAIL") << " - " << c.description;
    if (!fail.empty()) line << " [" << fail << "]";
    if (auto it = g_notes.find(c.id); it != g_notes.end())
      line << " [" << it->second << "]";
    line << " (" << (static_cast<double>(elapsed) / 1000.0) << "s)";
    std::cout << line.str() << "\n" << std::flush;
    if (fail.empty()) ++passed;
  }
  std::cout << "ACCEPTANCE: " << passed << "/" << criteria.size()
            << " criteria passed\n";
  return passed == static_cast<int>(criteria.size()) ? 0 : 1;
}
