#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "kdec/maps.hpp"
#include "kdec/sampling.hpp"
#include "kdec/spaces.hpp"

#ifndef KDEC_GOLDEN_FILE
#define KDEC_GOLDEN_FILE "tests/golden/derived_values.json"
#endif

using namespace kdec;

namespace {

const nlohmann::json& golden() {
  static const nlohmann::json g = [] {
    std::ifstream in(KDEC_GOLDEN_FILE);
    if (!in.good())
      throw std::runtime_error(std::string("cannot open golden file: ") +
                               KDEC_GOLDEN_FILE);
    return nlohmann::json::parse(in);
  }();
  return g;
}

Rational golden_rational(const nlohmann::json& node) {
  return parse_rational(node.get<std::string>());
}

// The symmetric, J-anti-invariant form e^1 . e^2 + f^1 . f^2 used for the
// frozen spot values.
Bilinear crossed_pair_form(int m) {
  Bilinear phi(m);
  phi.at(0, 2) = 1;
  phi.at(2, 0) = 1;
  phi.at(1, 3) = 1;
  phi.at(3, 1) = 1;
  return phi;
}

}  // namespace

TEST_CASE("sigma of the metric reproduces the frozen trace values") {
  const auto& g = golden();
  for (int m : {4, 6}) {
    const Tensor4 A = sigma(1, metric_bilinear(m));
    const Traces t = traces(A);
    CHECK(t.tau == golden_rational(g.at("tau_sigma1_metric")
                                       .at(std::to_string(m))));
    // closed form: tau(sigma1 g) = -m(m+2)
    CHECK(t.tau == Rational(-m * (m + 2)));
  }
  const Tensor4 A3 = sigma(3, omega_bilinear(4));
  const Traces t3 = traces(A3);
  CHECK(t3.tau_j == golden_rational(g.at("tauJ_sigma3_omega_m4")));
  CHECK(t3.tau == golden_rational(g.at("tau_sigma3_omega_m4")));
}

TEST_CASE("sigma of the metric has the frozen slice coefficients") {
  const auto& coeffs = golden().at("sigma1_metric_e1f1f1_coeffs_m4");
  const Tensor4 A = sigma(1, metric_bilinear(4));
  REQUIRE(coeffs.size() == 4);
  for (int l = 0; l < 4; ++l)
    CHECK(A.at(0, 1, 1, l) == golden_rational(coeffs.at(l)));
}

TEST_CASE("theta and sigma1 spot values on the crossed-pair form") {
  const auto& g = golden().at("section52_spot_values_m4");
  const Bilinear phi = crossed_pair_form(4);
  const Tensor4 th = theta(phi);
  const Tensor4 s1 = sigma(1, phi);
  CHECK(th.at(2, 3, 2, 1) == golden_rational(g.at("theta_phi_e2f2e2f1")));
  CHECK(th.at(2, 3, 2, 0) == golden_rational(g.at("theta_phi_e2f2e2e1")));
  CHECK(s1.at(2, 3, 2, 0) == golden_rational(g.at("sigma1_phi_e2f2e2e1")));
  CHECK(s1.at(2, 3, 2, 1) == golden_rational(g.at("sigma1_phi_e2f2e2f1")));
}

TEST_CASE("traces agree with direct contractions of the Ricci form") {
  const HermitianSpace V = make_space(2);
  const Subspace K = basis_kahler(V);
  detail::Rng rng(31);
  const Tensor4 A = random_tensor_element(K, rng);
  const Bilinear rho = ricci(A);
  const Traces t = traces(A);
  CHECK(t.tau == trace_bilinear(rho));
  CHECK(t.tau_j == inner_product(rho, omega_bilinear(V.m)));
}

TEST_CASE("ricci eigenvalue identities on the four sigma families") {
  const HermitianSpace V = make_space(2);
  const int m = V.m;
  detail::Rng rng(37);
  const struct {
    int k;
    BilinearFamily family;
    Rational eig;
  } rows[] = {
      {1, BilinearFamily::S2Plus, Rational(-(m + 2))},
      {2, BilinearFamily::S2Minus, Rational(2 - m)},
      {3, BilinearFamily::L2Plus, Rational(-(m + 2))},
      {4, BilinearFamily::L2Minus, Rational(-(m + 2))},
  };
  for (const auto& row : rows) {
    const Subspace F = basis_bilinear_family(V, row.family);
    const Bilinear phi = random_bilinear_element(F, rng);
    CHECK(ricci(sigma(row.k, phi)) == phi * row.eig);
  }
}

TEST_CASE("theta rejects forms outside its domain") {
  const int m = 4;
  Bilinear anti(m);
  anti.at(0, 2) = 1;
  anti.at(2, 0) = 1;  // symmetric but J-anti-invariant
  CHECK_THROWS_AS(theta(anti), WrongParity);
  CHECK_THROWS_AS(theta(metric_bilinear(m)), WrongParity);   // nonzero trace
  CHECK_THROWS_AS(theta(omega_bilinear(m)), WrongParity);    // not omega-orthogonal
}

TEST_CASE("sigma rejects the wrong symmetry type and bad indices") {
  const int m = 4;
  CHECK_THROWS_AS(sigma(0, metric_bilinear(m)), DomainViolation);
  CHECK_THROWS_AS(sigma(5, metric_bilinear(m)), DomainViolation);
  CHECK_THROWS_AS(sigma(1, omega_bilinear(m)), WrongParity);
  CHECK_THROWS_AS(sigma(3, metric_bilinear(m)), WrongParity);
}

TEST_CASE("ricci commutes with unitary pullbacks and not in general") {
  const HermitianSpace V = make_space(2);
  const Subspace K = basis_kahler(V);
  detail::Rng rng(41);
  const Tensor4 A = random_tensor_element(K, rng);
  for (std::uint64_t seed : {3, 4, 5}) {
    const GroupElement u = random_unitary_star(seed, V, seed % 2 ? 1 : -1);
    CHECK(ricci(pullback_tensor(u, A)) == pullback_bilinear(u, ricci(A)));
    CHECK(ricci13(pullback_tensor(u, A)) ==
          pullback_bilinear(u, ricci13(A)));
  }
  // Scaling one complex line is invertible and J-commuting but not an
  // isometry. The slot-1/slot-4 trace pairing is basis-free, so ricci still
  // commutes; ricci13 pairs two covariant slots through the metric and
  // breaks.
  Matrix stretch = Matrix::identity(V.m);
  stretch.at(0, 0) = Rational(2);
  stretch.at(1, 1) = Rational(2);
  const GroupElement s = make_group_element(stretch);
  CHECK(ricci(pullback_tensor(s, A)) == pullback_bilinear(s, ricci(A)));
  CHECK(ricci13(pullback_tensor(s, A)) !=
        pullback_bilinear(s, ricci13(A)));
}

TEST_CASE("conjugation is a parity-twisting involution up to sign") {
  const HermitianSpace V = make_space(2);
  const Subspace K = basis_kahler(V);
  detail::Rng rng(43);
  const Tensor4 A = random_tensor_element(K, rng);
  CHECK(conjugate(conjugate(A)) == -A);
  CHECK(inner_product(conjugate(A), conjugate(A)) == inner_product(A, A));
  CHECK(is_kaehler_curvature(conjugate(A)));
}

TEST_CASE("the five projectors resolve the Ricci-flat plus part") {
  const HermitianSpace V = make_space(2);
  const Subspace kp0 = basis_kahler_pm_ker_ricci(V, 1);
  detail::Rng rng(47);
  for (int s = 0; s < 3; ++s) {
    const Tensor4 A = random_tensor_element(kp0, rng);
    const Tensor4 p7 = pi7(A), p8 = pi8(A), p9 = pi9(A), p10 = pi10(A),
                  p11 = pi11(A);
    CHECK(p7 + p8 + p9 + p10 + p11 == A);
    CHECK(pi10(A) == -conjugate(pi9(conjugate(A))));
    CHECK(w_space(V, 9).contains(p9));
    CHECK(w_space(V, 10).contains(p10));
    // projector output agrees with orthogonal projection onto the subspace
    CHECK(w_space(V, 9).project(A) == p9);
    CHECK(w_space(V, 7).project(A) == p7);
  }
}

TEST_CASE("decompose splits a curvature tensor orthogonally") {
  const HermitianSpace V = make_space(2);
  const Subspace K = basis_kahler(V);
  detail::Rng rng(53);
  const Tensor4 A = random_tensor_element(K, rng);
  const Decomposition d = decompose(A);

  REQUIRE(d.components.size() == static_cast<std::size_t>(kComponentCount));
  for (int t = 0; t < kComponentCount; ++t)
    CHECK(d.components[t].label == static_cast<ComponentLabel>(t));

  Tensor4 total(V.m);
  Rational norm_total;
  for (const auto& c : d.components) {
    total = total + c.tensor;
    norm_total += inner_product(c.tensor, c.tensor);
    CHECK(is_component_member(c.label, c.tensor));
  }
  CHECK(total + d.residual == A);
  CHECK(d.residual.is_zero());
  CHECK(norm_total == inner_product(A, A));

  // re-decomposing a component returns it unchanged in its own slot
  const Tensor4& w9part = d.components[6].tensor;
  if (!w9part.is_zero()) {
    const Decomposition d2 = decompose(w9part);
    CHECK(d2.components[6].tensor == w9part);
    for (int t = 0; t < kComponentCount; ++t)
      if (t != 6) CHECK(d2.components[t].tensor.is_zero());
  }
}

TEST_CASE("decompose rejects tensors outside its domain") {
  Tensor4 bad(4);
  bad.at(0, 1, 0, 0) = Rational(1);
  bad.at(1, 0, 0, 0) = Rational(-1);
  CHECK_THROWS_AS(decompose(bad), NotKaehler);
  CHECK_THROWS_WITH(decompose(bad),
                    Catch::Matchers::ContainsSubstring("last-pair J-invariance"));
  const Tensor4 zero2(2);
  CHECK_THROWS_AS(decompose(zero2), DomainViolation);
}

TEST_CASE("component labels carry the documented names in order") {
  const std::vector<std::string> expected = {
      "r_trace",         "chi_trace", "s2_0_plus_via_rho", "l2_0_plus_via_rho",
      "w7",              "w8",        "w9",                "w10",
      "w11",             "l2_minus_via_rho", "s2_minus_via_rho", "w12"};
  for (int t = 0; t < kComponentCount; ++t)
    CHECK(component_label_name(static_cast<ComponentLabel>(t)) == expected[t]);
}

TEST_CASE("split_ricci reassembles the input") {
  const HermitianSpace V = make_space(2);
  const Subspace kp = basis_kahler_pm(V, 1);
  detail::Rng rng(59);
  const Tensor4 A = random_tensor_element(kp, rng);
  const RicciSplit rs = split_ricci(A);
  CHECK(rs.parity == 1);
  CHECK(rs.trace_component + rs.omega_component + rs.symmetric_component +
            rs.alternating_component + rs.remainder ==
        A);
  CHECK(ricci(rs.remainder).is_zero());
}
