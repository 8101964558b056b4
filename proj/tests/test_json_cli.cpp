#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "kdec/json_io.hpp"
#include "kdec/witnesses.hpp"

using namespace kdec;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::filesystem::path scratch_dir() {
  const auto dir =
      std::filesystem::temp_directory_path() / "kdec_cli_tests";
  std::filesystem::create_directories(dir);
  return dir;
}

// Runs the command line under the shell, capturing both streams.
RunResult run_cli(const std::string& args) {
  static int counter = 0;
  const char* cli = std::getenv("KDEC_CLI_PATH");
  REQUIRE(cli != nullptr);
  const auto dir = scratch_dir();
  const auto out_path = dir / ("out" + std::to_string(counter) + ".txt");
  const auto err_path = dir / ("err" + std::to_string(counter) + ".txt");
  ++counter;
  const std::string cmd = std::string(cli) + " " + args + " > " +
                          out_path.string() + " 2> " + err_path.string();
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out_path);
  r.err = slurp(err_path);
  return r;
}

std::filesystem::path write_document(const std::string& name,
                                     const std::string& text) {
  const auto path = scratch_dir() / name;
  std::ofstream out(path);
  out << text;
  return path;
}

bool cli_available() { return std::getenv("KDEC_CLI_PATH") != nullptr; }

}  // namespace

TEST_CASE("tensor documents round-trip through serialization") {
  const HermitianSpace V = make_space(2);
  const TensorDocument doc = make_tensor_document(
      witness_w9(V), {{"note", "generator"}, {"origin", "table"}});
  const std::string text = serialize_tensor_document(doc);
  const TensorDocument back = parse_tensor_document(text);
  CHECK(back == doc);
  // serialization is canonical: a second pass is byte-identical
  CHECK(serialize_tensor_document(back) == text);
  CHECK(text.back() == '\n');
}

TEST_CASE("bilinear documents round-trip through serialization") {
  Bilinear phi(4);
  phi.at(0, 2) = Rational(3, 7);
  phi.at(2, 0) = Rational(-5);
  const TensorDocument doc = make_tensor_document(phi);
  const TensorDocument back =
      parse_tensor_document(serialize_tensor_document(doc));
  CHECK(back == doc);
  REQUIRE(back.bilinear.has_value());
  CHECK(back.bilinear->at(0, 2) == Rational(3, 7));
  CHECK_FALSE(back.tensor.has_value());
}

TEST_CASE("malformed documents are rejected with parse errors") {
  const std::vector<std::string> bad = {
      "{not json",
      "[]",
      R"({"kind":"tensor4","entries":[]})",
      R"({"m":3,"kind":"tensor4","entries":[]})",
      R"({"m":66,"kind":"tensor4","entries":[]})",
      R"({"m":4,"kind":"vector","entries":[]})",
      R"({"m":4,"kind":"tensor4","entries":7})",
      R"({"m":4,"kind":"tensor4","entries":[],"extra":1})",
      R"({"m":4,"kind":"tensor4","entries":[[[0,1],"1/1"]]})",
      R"({"m":4,"kind":"tensor4","entries":[[[0,1,0,9],"1/1"]]})",
      R"({"m":4,"kind":"tensor4","entries":[[[0,1,0,0],"1/0"]]})",
      R"({"m":4,"kind":"tensor4","entries":[[[0,1,0,0],"1/-2"]]})",
      R"({"m":4,"kind":"tensor4","entries":[[[0,1,0,0],"x"]]})",
      R"({"m":4,"kind":"tensor4","entries":[[[0,1,0,0],"1/1"],[[0,1,0,0],"2/1"]]})",
      R"({"m":4,"kind":"tensor4","entries":[],"metadata":"x"})",
      R"({"m":4,"kind":"tensor4","entries":[],"metadata":{"a":1}})",
  };
  for (const std::string& text : bad) {
    INFO(text);
    CHECK_THROWS_AS(parse_tensor_document(text), ParseError);
  }
  // metadata may be omitted entirely
  const TensorDocument doc =
      parse_tensor_document(R"({"m":4,"kind":"tensor4","entries":[]})");
  CHECK(doc.metadata.empty());
  REQUIRE(doc.tensor.has_value());
  CHECK(doc.tensor->is_zero());
}

TEST_CASE("decomposition reports carry every labeled component") {
  const HermitianSpace V = make_space(2);
  const Decomposition d = decompose(witness_w9(V));
  const Json j = decomposition_json(d);
  CHECK(j.at("m") == 4);
  CHECK(j.at("tau") == "0/1");
  CHECK(j.at("tau_j") == "0/1");
  REQUIRE(j.at("components").size() ==
          static_cast<std::size_t>(kComponentCount));
  CHECK(j.at("components").at(0).at("label") == "r_trace");
  CHECK(j.at("components").at(6).at("label") == "w9");
  CHECK(j.at("components").at(6).at("norm_squared") == "32/1");
  for (int t = 0; t < kComponentCount; ++t)
    if (t != 6) CHECK(j.at("components").at(t).at("entries").empty());
  CHECK(j.at("residual").empty());
  CHECK(j.at("rho").size() == 4);
}

TEST_CASE("command line reports dimensions with passing sum checks") {
  if (!cli_available()) SKIP("KDEC_CLI_PATH not set");
  const RunResult r = run_cli("dims --n-min 1 --n-max 2");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("all sum checks passed") != std::string::npos);
  CHECK(r.out.find("m = 4") != std::string::npos);

  const RunResult bad = run_cli("dims --n-min 3 --n-max 2");
  CHECK(bad.exit_code == 2);
}

TEST_CASE("command line verify runs a suite and honors --json") {
  if (!cli_available()) SKIP("KDEC_CLI_PATH not set");
  const RunResult r = run_cli("verify lemma2.2 --n 2 --seed 1");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("PASS") != std::string::npos);
  CHECK(r.out.find("result:") != std::string::npos);

  const RunResult j = run_cli("verify lemma2.2 --n 2 --seed 1 --json");
  CHECK(j.exit_code == 0);
  const Json parsed = Json::parse(j.out);
  CHECK(parsed.at("all_passed") == true);
  REQUIRE(parsed.at("suites").size() == 1);
  CHECK(parsed.at("suites").at(0).at("suite") == "lemma2.2");
  CHECK(parsed.at("suites").at(0).at("n") == 2);

  // byte-level determinism across runs
  const RunResult j2 = run_cli("verify lemma2.2 --n 2 --seed 1 --json");
  CHECK(j2.out == j.out);

  CHECK(run_cli("verify bogus --n 2").exit_code == 2);
  CHECK(run_cli("verify lemma2.2 --n 1").exit_code == 2);
}

TEST_CASE("command line witness replays a section") {
  if (!cli_available()) SKIP("KDEC_CLI_PATH not set");
  const RunResult r = run_cli("witness 5.1 --n 2");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("PASS") != std::string::npos);
  CHECK(run_cli("witness 5.3 --n 2").exit_code == 2);
  CHECK(run_cli("witness 9.9 --n 2").exit_code == 2);
}

TEST_CASE("command line decompose handles good and bad input") {
  if (!cli_available()) SKIP("KDEC_CLI_PATH not set");
  const HermitianSpace V = make_space(2);
  const auto good = write_document(
      "w9.json",
      serialize_tensor_document(make_tensor_document(witness_w9(V))));
  const RunResult r = run_cli("decompose --input " + good.string());
  CHECK(r.exit_code == 0);
  const Json parsed = Json::parse(r.out);
  CHECK(parsed.at("residual").empty());
  CHECK(parsed.at("components").at(6).at("norm_squared") == "32/1");
  CHECK(r.err.find("w9") != std::string::npos);

  const auto not_kaehler = write_document(
      "notk.json",
      R"({"m":4,"kind":"tensor4","entries":[[[0,1,0,0],"1/1"],[[1,0,0,0],"-1/1"]]})");
  const RunResult nk = run_cli("decompose --input " + not_kaehler.string());
  CHECK(nk.exit_code == 3);
  CHECK(nk.err.find("last-pair J-invariance") != std::string::npos);

  const auto malformed = write_document("bad.json", "{not json");
  CHECK(run_cli("decompose --input " + malformed.string()).exit_code == 2);

  Bilinear phi(4);
  phi.at(0, 0) = Rational(1);
  const auto wrong_kind = write_document(
      "bilinear.json",
      serialize_tensor_document(make_tensor_document(phi)));
  CHECK(run_cli("decompose --input " + wrong_kind.string()).exit_code == 2);

  // --output writes the same payload to a file
  const auto out_path = scratch_dir() / "decomp_out.json";
  const RunResult ro = run_cli("decompose --input " + good.string() +
                               " --output " + out_path.string());
  CHECK(ro.exit_code == 0);
  CHECK(Json::parse(slurp(out_path)) == parsed);
}
