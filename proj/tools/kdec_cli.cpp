#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kdec/json_io.hpp"
#include "kdec/verify.hpp"

namespace {

int max_n_cap() {
  // KDEC_MAX_M names the largest admissible real dimension m = 2n.
  if (const char* raw = std::getenv("KDEC_MAX_M")) {
    try {
      const int m = std::stoi(raw);
      if (m >= 2) return m / 2;
    } catch (const std::exception&) {
      // fall through to the default cap
    }
  }
  return 4;
}

struct DimTable {
  int m = 0;
  long long affine = 0;
  bool theorem_range = false;  // m >= 4: the W spaces and sum checks apply
  long long kahler = 0, kplus = 0, kminus = 0;
  long long s2p = 0, s2m = 0, l2p = 0, l2m = 0, s20 = 0, l20 = 0;
  long long w[6] = {0, 0, 0, 0, 0, 0};  // W7..W12
};

DimTable compute_dims(int n) {
  const kdec::HermitianSpace V = kdec::make_space(n);
  DimTable t;
  t.m = V.m;
  t.affine = static_cast<long long>(kdec::basis_affine(V).dim());
  t.theorem_range = V.m >= 4;
  t.kahler = static_cast<long long>(kdec::basis_kahler(V).dim());
  t.kplus = static_cast<long long>(kdec::basis_kahler_pm(V, +1).dim());
  t.kminus = static_cast<long long>(kdec::basis_kahler_pm(V, -1).dim());
  using kdec::BilinearFamily;
  const auto fam_dim = [&](BilinearFamily f) {
    return static_cast<long long>(kdec::basis_bilinear_family(V, f).dim());
  };
  t.s2p = fam_dim(BilinearFamily::S2Plus);
  t.s2m = fam_dim(BilinearFamily::S2Minus);
  t.l2p = fam_dim(BilinearFamily::L2Plus);
  t.l2m = fam_dim(BilinearFamily::L2Minus);
  t.s20 = fam_dim(BilinearFamily::S20Plus);
  t.l20 = fam_dim(BilinearFamily::L20Plus);
  if (t.theorem_range)
    for (int j = 7; j <= 12; ++j)
      t.w[j - 7] = static_cast<long long>(kdec::w_space(V, j).dim());
  return t;
}

struct SumCheck {
  std::string name;
  long long lhs = 0, rhs = 0;
  bool passed() const { return lhs == rhs; }
};

std::vector<SumCheck> sum_checks(const DimTable& t) {
  const long long m = t.m;
  std::vector<SumCheck> checks;
  checks.push_back({"dim affine == m^2(m^2-1)/3", t.affine,
                    m * m * (m * m - 1) / 3});
  if (!t.theorem_range) return checks;
  checks.push_back({"kahler == kahler+ + kahler-", t.kahler,
                    t.kplus + t.kminus});
  checks.push_back(
      {"kahler+ == 2 + 2 s2_0+ + 2 l2_0+ + w9 + w10 + w11", t.kplus,
       2 + 2 * t.s20 + 2 * t.l20 + t.w[2] + t.w[3] + t.w[4]});
  checks.push_back(
      {"kahler- == s2- + l2- + w12", t.kminus, t.s2m + t.l2m + t.w[5]});
  checks.push_back({"w7 == dim s2_0+", t.w[0], t.s20});
  checks.push_back({"w8 == dim l2_0+", t.w[1], t.l20});
  if (t.m == 4) {
    checks.push_back({"w11 == 0 at m = 4", t.w[4], 0});
    checks.push_back({"w12 == 0 at m = 4", t.w[5], 0});
  }
  return checks;
}

void print_dim_row(const char* name, long long value) {
  std::printf("  %-12s %6lld\n", name, value);
}

int cmd_dims(int n_min, int n_max) {
  const int cap = max_n_cap();
  if (n_min < 1 || n_max < n_min || n_max > cap) {
    std::fprintf(stderr,
                 "dims: range must satisfy 1 <= n-min <= n-max <= %d "
                 "(raise the cap with KDEC_MAX_M)\n",
                 cap);
    return 2;
  }
  bool all_ok = true;
  for (int n = n_min; n <= n_max; ++n) {
    const DimTable t = compute_dims(n);
    std::printf("m = %d (n = %d)\n", t.m, n);
    print_dim_row("affine", t.affine);
    if (t.theorem_range) {
      print_dim_row("kahler", t.kahler);
      print_dim_row("kahler+", t.kplus);
      print_dim_row("kahler-", t.kminus);
    } else {
      std::printf("  %-12s %s\n", "kahler", "below theorem range (m < 4)");
      std::printf("  %-12s %s\n", "kahler+", "below theorem range (m < 4)");
      std::printf("  %-12s %s\n", "kahler-", "below theorem range (m < 4)");
    }
    print_dim_row("s2+", t.s2p);
    print_dim_row("s2-", t.s2m);
    print_dim_row("l2+", t.l2p);
    print_dim_row("l2-", t.l2m);
    print_dim_row("s2_0+", t.s20);
    print_dim_row("l2_0+", t.l20);
    for (int j = 7; j <= 12; ++j) {
      const std::string name = "w" + std::to_string(j);
      if (t.theorem_range)
        print_dim_row(name.c_str(), t.w[j - 7]);
      else
        std::printf("  %-12s %s\n", name.c_str(),
                    "below theorem range (m < 4)");
    }
    for (const SumCheck& c : sum_checks(t)) {
      const bool ok = c.passed();
      all_ok = all_ok && ok;
      std::printf("  check: %s: %lld %s %lld [%s]\n", c.name.c_str(), c.lhs,
                  ok ? "==" : "!=", c.rhs, ok ? "ok" : "FAIL");
    }
  }
  std::printf(all_ok ? "all sum checks passed\n" : "sum checks FAILED\n");
  return all_ok ? 0 : 1;
}

int cmd_verify(const std::string& suite, int n, std::uint64_t seed,
               bool as_json) {
  const std::vector<kdec::SuiteReport> reports =
      kdec::run_suites(suite, n, seed);
  bool all_ok = true;
  for (const auto& rep : reports) all_ok = all_ok && rep.all_passed();
  if (as_json) {
    kdec::Json out;
    out["suites"] = kdec::Json::array();
    for (const auto& rep : reports) {
      kdec::Json jr;
      jr["suite"] = rep.suite;
      jr["n"] = rep.n;
      jr["seed"] = rep.seed;
      jr["checks"] = kdec::Json::array();
      for (const auto& c : rep.checks) {
        kdec::Json jc;
        jc["name"] = c.name;
        jc["passed"] = c.passed;
        jc["detail"] = c.detail;
        jr["checks"].push_back(std::move(jc));
      }
      jr["all_passed"] = rep.all_passed();
      out["suites"].push_back(std::move(jr));
    }
    out["all_passed"] = all_ok;
    std::printf("%s\n", out.dump(2).c_str());
  } else {
    int total = 0, passed = 0;
    for (const auto& rep : reports) {
      std::printf("suite %s (n = %d, seed = %llu)\n", rep.suite.c_str(), rep.n,
                  static_cast<unsigned long long>(rep.seed));
      for (const auto& c : rep.checks) {
        ++total;
        passed += c.passed ? 1 : 0;
        std::printf("  %s %s\n", c.passed ? "PASS" : "FAIL", c.name.c_str());
        if (!c.passed && !c.detail.empty())
          std::printf("       %s\n", c.detail.c_str());
      }
    }
    std::printf("result: %d/%d passed\n", passed, total);
  }
  return all_ok ? 0 : 1;
}

int cmd_decompose(const std::string& input_path,
                  const std::string& output_path) {
  std::ifstream in(input_path);
  if (!in) {
    std::fprintf(stderr, "decompose: cannot read '%s'\n", input_path.c_str());
    return 2;
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  const kdec::TensorDocument doc = kdec::parse_tensor_document(buffer.str());
  if (doc.kind != kdec::ElementKind::Tensor4Kind)
    throw kdec::KindMismatch("decompose expects a document of kind tensor4");
  const kdec::Decomposition d = kdec::decompose(*doc.tensor);
  const std::string payload = kdec::decomposition_json(d).dump(2) + "\n";
  if (output_path.empty()) {
    std::fputs(payload.c_str(), stdout);
  } else {
    std::ofstream out(output_path);
    if (!out) {
      std::fprintf(stderr, "decompose: cannot write '%s'\n",
                   output_path.c_str());
      return 2;
    }
    out << payload;
  }
  for (const auto& c : d.components)
    std::fprintf(stderr, "%-18s norm^2 = %s\n",
                 kdec::component_label_name(c.label),
                 kdec::format_rational(
                     kdec::inner_product(c.tensor, c.tensor))
                     .c_str());
  return 0;
}

int cmd_witness(const std::string& section, int n) {
  const kdec::HermitianSpace V = kdec::make_space(n);
  const kdec::WitnessReport rep = kdec::replay_section(section, V);
  std::printf("section %s replay (m = %d)\n", rep.section.c_str(), rep.m);
  int passed = 0;
  for (const auto& c : rep.checks) {
    passed += c.passed ? 1 : 0;
    std::printf("  %s %s\n", c.passed ? "PASS" : "FAIL", c.name.c_str());
    if (!c.passed)
      std::printf("       expected %s, got %s\n", c.expected.c_str(),
                  c.actual.c_str());
  }
  std::printf("result: %d/%zu passed\n", passed, rep.checks.size());
  return rep.all_passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Exact decomposition of affine Kaehler curvature tensors into "
      "irreducible components"};
  app.require_subcommand(1);

  auto* dims = app.add_subcommand(
      "dims", "Dimension table for every summand, with sum checks");
  int n_min = 1, n_max = 3;
  dims->add_option("--n-min", n_min, "Smallest n = m/2 to tabulate");
  dims->add_option("--n-max", n_max, "Largest n = m/2 to tabulate");

  auto* verify = app.add_subcommand(
      "verify", "Run a property suite with exact rational checks");
  std::string suite;
  int verify_n = 2;
  std::uint64_t seed = 0;
  bool as_json = false;
  verify->add_option("suite", suite, "One of lemma2.2, lemma3.1, lemma3.2, "
                                     "lemma4.1, lemma4.3, theorem1.5, "
                                     "section5, all")
      ->required();
  verify->add_option("--n", verify_n, "Half-dimension n = m/2 (default 2)");
  verify->add_option("--seed", seed, "Seed for the deterministic sampler");
  verify->add_flag("--json", as_json, "Emit the report as JSON");

  auto* decompose = app.add_subcommand(
      "decompose", "Decompose a JSON tensor document into the 12 components");
  std::string input_path, output_path;
  decompose->add_option("--input", input_path, "TensorDocument JSON path")
      ->required();
  decompose->add_option("--output", output_path,
                        "Output path (stdout when omitted)");

  auto* witness = app.add_subcommand(
      "witness", "Replay one scripted witness section (5.1 .. 5.5)");
  std::string section;
  int witness_n = 2;
  witness->add_option("section", section, "Section label, e.g. 5.1")
      ->required();
  witness->add_option("--n", witness_n, "Half-dimension n = m/2 (default 2)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (dims->parsed()) return cmd_dims(n_min, n_max);
    if (verify->parsed()) {
      const int cap = max_n_cap();
      if (verify_n > cap) {
        std::fprintf(stderr,
                     "verify: n = %d above the cap %d (raise with "
                     "KDEC_MAX_M)\n",
                     verify_n, cap);
        return 2;
      }
      return cmd_verify(suite, verify_n, seed, as_json);
    }
    if (decompose->parsed()) return cmd_decompose(input_path, output_path);
    if (witness->parsed()) {
      const int cap = max_n_cap();
      if (witness_n > cap) {
        std::fprintf(stderr,
                     "witness: n = %d above the cap %d (raise with "
                     "KDEC_MAX_M)\n",
                     witness_n, cap);
        return 2;
      }
      return cmd_witness(section, witness_n);
    }
  } catch (const kdec::NotKaehler& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const kdec::KdecError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 2;
}
