#include <filesystem>
#include <fstream>
#include <sstream>

#include "check.hpp"
#include "json.hpp"
#include "rmt/cli.hpp"

using namespace rmt;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
  const auto p = std::filesystem::temp_directory_path() / name;
  std::ofstream(p) << content;
  return p;
}

}  // namespace

TEST_CASE("complex and grid parsing") {
  CHECK(cli::parse_complex("0.5") == Complex(0.5));
  CHECK(cli::parse_complex("0.5+0.2i") == Complex(0.5, 0.2));
  CHECK(cli::parse_complex("-0.3i") == Complex(0.0, -0.3));
  CHECK(cli::parse_complex("0.4-1e-1i") == Complex(0.4, -0.1));
  CHECK_THROWS_AS(cli::parse_complex("abc"), Error);
  CHECK_THROWS_AS(cli::parse_complex(""), Error);
  const auto g = cli::parse_grid({"0.2:0.8:7", "0.5+0.2i"});
  REQUIRE(g.size() == 8);
  CHECK(g.front() == Complex(0.2));
  CHECK_REL(g[6], 0.8, 1e-15);
  CHECK(g.back() == Complex(0.5, 0.2));
  CHECK_THROWS_AS(cli::parse_grid({"0.2:0.8:0"}), Error);
  CHECK_THROWS_AS(cli::parse_grid({}), Error);
}

TEST_CASE("exit code mapping") {
  CHECK(cli::exit_code_for(Errc::non_convergence) == cli::exit_numeric);
  CHECK(cli::exit_code_for(Errc::seam_mismatch) == cli::exit_numeric);
  CHECK(cli::exit_code_for(Errc::kernel_zero) == cli::exit_failed);
  CHECK(cli::exit_code_for(Errc::unknown_id) == cli::exit_usage);
  CHECK(cli::exit_code_for(Errc::strip_violation) == cli::exit_usage);
}

TEST_CASE("verify reports") {
  const Run r = run({"verify", "--identity", "gamma_bernoulli", "--s", "0.5", "--tol", "1e-8"});
  CHECK(r.code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc["schema_version"] == 1);
  CHECK(doc["command"] == "verify");
  REQUIRE(doc["cases"].size() == 1);
  const json& c = doc["cases"][0];
  CHECK(c["id"] == "gamma_bernoulli");
  CHECK(c["pass"] == true);
  CHECK(c["expected_status"] == "verified");
  CHECK_REL(c["samples"][0]["lhs_re"].get<double>(), 1.7724538509055159, 1e-10);
  std::vector<std::string> keys;
  for (auto it = c["samples"][0].begin(); it != c["samples"][0].end(); ++it) keys.push_back(it.key());
  CHECK(keys.size() == 9);
  CHECK(r.out.find("\"s_re\"") < r.out.find("\"lhs_re\""));
  CHECK(r.out.find("\"lhs_re\"") < r.out.find("\"rhs_re\""));
}

TEST_CASE("reports are byte-identical across runs") {
  const std::vector<std::string> args = {"verify", "--identity", "gamma_squared_rep"};
  const Run a = run(args);
  const Run b = run(args);
  std::vector<std::string> par = args;
  par.push_back("--parallel");
  const Run c = run(par);
  CHECK(a.out == b.out);
  CHECK(a.out == c.out);
}

TEST_CASE("conjecture and failure codes") {
  Run r = run({"conjecture", "--m", "3", "--g", "inv_linear", "--s", "0.5", "--tol", "1e-6"});
  CHECK(r.code == 0);
  CHECK_REL(json::parse(r.out)["cases"][0]["samples"][0]["rhs_re"].get<double>(), 124.02510672119928, 1e-13);
  r = run({"verify", "--identity", "digamma_corollary"});
  CHECK(r.code == 1);
  CHECK(r.out.find("expected failure") != std::string::npos);
  CHECK(r.err.find("expected failure") != std::string::npos);
  CHECK(run({"verify", "--identity", "nope"}).code == 2);
  CHECK(run({"verify", "--identity", "gamma_bernoulli", "--tol", "1"}).code == 2);
  CHECK(run({"verify", "--identity", "gamma_bernoulli", "--s", "1.5"}).code == 2);
  CHECK(run({"verify", "--identity", "gamma_bernoulli", "--max-evals", "1"}).code == 3);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("verify-all") {
  Run r = run({"verify-all"});
  CHECK(r.code == 0);
  json doc = json::parse(r.out);
  CHECK(doc["aggregate"]["pass"] == true);
  CHECK(doc["aggregate"]["gating"].get<int>() >= 9);
  CHECK(doc["aggregate"]["passed"] == doc["aggregate"]["gating"]);
  CHECK(doc["cases"][0]["id"] == "gamma_bernoulli");
  r = run({"verify-all", "--tol", "1e-2"});
  CHECK(r.code == 0);
  CHECK(run({"verify-all", "--override", "nope=1e-6"}).code == 2);
  CHECK(run({"verify-all", "--override", "gamma_bernoulli=1e-6"}).code == 0);
}

TEST_CASE("output file and text format") {
  const auto p = std::filesystem::temp_directory_path() / "rmt_cli_report.json";
  std::filesystem::remove(p);
  const Run r = run({"verify", "--identity", "k0_pi", "--output", p.string()});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(p);
  const json doc = json::parse(in);
  CHECK(doc["cases"][0]["id"] == "k0_pi");
  std::filesystem::remove(p);
  const Run t = run({"verify", "--identity", "k0_pi", "--format", "text"});
  CHECK(t.out.find("k0_pi") != std::string::npos);
  CHECK(t.out.find("PASS") != std::string::npos);
}

TEST_CASE("mellin, interp, props and list") {
  Run r = run({"mellin", "--kernel", "gamma_squared", "--mode", "general", "--s", "0.5"});
  CHECK(r.code == 0);
  CHECK_REL(json::parse(r.out)["results"][0]["value_re"].get<double>(), 3.141592653589793, 1e-9);

  const auto seq = temp_file("rmt_cli_seq.csv", "k,c_k\n0,1\n1,2\n2,4\n3,8\n4,16\n5,32\n");
  r = run({"interp", "--input", seq.string(), "--normalization", "factorial", "--closed-form", "exp_neg:2", "--s", "0.3"});
  CHECK(r.code == 0);
  CHECK_REL(json::parse(r.out)["results"][0]["value_re"].get<double>(), std::pow(2.0, -0.3), 1e-8);
  CHECK(run({"interp", "--input", seq.string(), "--s", "0.3"}).code == 2);
  std::filesystem::remove(seq);

  r = run({"props", "--kernel", "gamma", "--check", "all"});
  CHECK(r.code == 0);
  r = run({"props", "--kernel", "psi", "--check", "weight"});
  CHECK(r.code == 1);
  r = run({"list"});
  CHECK(r.code == 0);
  CHECK(r.out.find("digamma_corollary") != std::string::npos);
}
