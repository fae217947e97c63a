#include <cstdlib>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "oracle.hpp"
#include "spectradef/builtins.hpp"
#include "spectradef_cli/cli.hpp"
#include "spectradef_cli/report.hpp"

using namespace spectradef;

namespace {

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;
};

Outcome run_cli(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  Outcome o;
  o.code = cli::run(args, out, err);
  o.out = out.str();
  o.err = err.str();
  return o;
}

Json run_json(std::vector<std::string> args) {
  args.push_back("--format");
  args.push_back("json");
  const Outcome o = run_cli(args);
  REQUIRE_MESSAGE(o.code == 0, o.err);
  return Json::parse(o.out);
}

std::string temp_path(const std::string& name) { return "spectradef_test_" + name + ".json"; }

}  // namespace

TEST_CASE("cli: one E_1 entry on the Nakamura built-in") {
  const Json j = run_json({"pages", "--manifold", "nakamura", "--r", "1", "--p", "2", "--q", "2"});
  CHECK(j["entry"]["dim"] == 5);
  CHECK(j["entry"]["representatives"].size() == 5);
  CHECK(j["entry"]["d_target"] == "3,2");
}

TEST_CASE("cli: Iwasawa E_1 grid matches the rank oracle") {
  const Json j = run_json({"pages", "--manifold", "iwasawa", "--r", "1"});
  const oracle::Reference ref(iwasawa_spec());
  const Json& cells = j["pages"][0]["cells"];
  CHECK(cells.size() == 16);
  for (int p = 0; p <= 3; ++p) {
    for (int q = 0; q <= 3; ++q) CHECK(cells[to_string(Bidegree{p, q})] == ref.hodge(p, q));
  }
}

TEST_CASE("cli: text grids put p on rows and q on columns") {
  const Outcome o = run_cli({"pages", "--manifold", "iwasawa", "--r", "1"});
  REQUIRE(o.code == 0);
  CHECK(o.out.find("E_1  q=0  q=1  q=2  q=3\n") != std::string::npos);
  CHECK(o.out.find("p=1    3    6    6    3\n") != std::string::npos);
}

TEST_CASE("cli: empty model has a single cell") {
  const Json j = run_json({"pages", "--manifold", "abelian", "--n", "0", "--r", "1"});
  CHECK(j["pages"][0]["cells"] == Json{{"0,0", 1}});
}

TEST_CASE("cli: exit codes") {
  CHECK(run_cli({"pages"}).code == cli::kInputError);
  CHECK(run_cli({"pages", "--manifold", "iwasawa", "--input", "x.json"}).code == cli::kInputError);
  CHECK(run_cli({"pages", "--manifold", "iwasawa", "--p", "1"}).code == cli::kInputError);
  CHECK(run_cli({"pages", "--manifold", "iwasawa", "--k", "2"}).code == cli::kInputError);
  CHECK(run_cli({"pages", "--manifold", "nakamura", "--k", "0"}).code == cli::kInputError);
  CHECK(run_cli({"pages", "--manifold", "mystery"}).code == cli::kInputError);
  CHECK(run_cli({"frobnicate", "--manifold", "iwasawa"}).code == cli::kInputError);
  CHECK(run_cli({"kodaira", "--manifold", "iwasawa"}).code == cli::kInputError);
  CHECK(run_cli({"pages", "--input", "/nonexistent.json"}).code == cli::kInputError);
  CHECK(run_cli({"extend", "--manifold", "iwasawa", "--p", "3", "--q", "0", "--order", "1", "--class", "7"}).code ==
        cli::kInputError);

  const Outcome par = run_cli({"parallelisable", "--manifold", "nakamura", "--order", "2"});
  CHECK(par.code == cli::kHypothesisFailure);
  CHECK(par.err.find("deformation.HypothesisFailed") != std::string::npos);

  CHECK(run_cli({"extend", "--manifold", "iwasawa", "--p", "1", "--q", "0", "--order", "1", "--class", "0"}).code ==
        cli::kHypothesisFailure);
  CHECK(run_cli({"--help"}).code == cli::kOk);
}

TEST_CASE("cli: verdicts") {
  const Json cy = run_json({"cy-check", "--manifold", "nakamura"});
  CHECK(cy["verdict"] == "INCONCLUSIVE");
  const Json par = run_json({"parallelisable", "--manifold", "iwasawa", "--order", "4"});
  CHECK(par["verdict"] == "UNOBSTRUCTED");
  CHECK(par["phi_vanishes_from_order"] == 3);
  const Json kur = run_json({"kuranishi", "--manifold", "nakamura", "--order", "3"});
  CHECK(kur["verdict"] == "OBSTRUCTED");
  CHECK(kur["obstructed_at"] == 2);
  const Json obs = run_json({"obstruction", "--manifold", "nakamura", "--order", "1", "--p", "3", "--q", "1"});
  CHECK(obs["any_nonzero"] == true);
  CHECK(obs["all_in_ker_mu"] == true);
  CHECK(obs["consistent"] == true);
  const Json single =
      run_json({"obstruction", "--manifold", "nakamura", "--order", "1", "--p", "3", "--q", "1", "--directions", "0"});
  CHECK(single["consistent"] == true);
}

TEST_CASE("cli: output is independent of the thread count") {
  const std::vector<std::string> args = {"report", "--manifold", "iwasawa", "--format", "json"};
  setenv("SPECTRA_DEF_THREADS", "1", 1);
  const Outcome one = run_cli(args);
  setenv("SPECTRA_DEF_THREADS", "4", 1);
  const Outcome four = run_cli(args);
  unsetenv("SPECTRA_DEF_THREADS");
  const Outcome dflt = run_cli(args);
  REQUIRE(one.code == 0);
  CHECK(one.out == four.out);
  CHECK(one.out == dflt.out);
}

TEST_CASE("cli: dumped built-ins re-ingest to identical results") {
  const std::vector<std::vector<std::string>> commands = {
      {"pages"},
      {"degeneration"},
      {"bott-chern"},
      {"popovici"},
      {"cy-check"},
      {"validate"},
      {"kodaira", "--p", "2", "--q", "1"},
      {"kuranishi", "--order", "2"},
      {"report"},
  };
  for (const std::string name : {"iwasawa", "nakamura"}) {
    const Outcome dump = run_cli({"validate", "--manifold", name, "--dump"});
    REQUIRE(dump.code == 0);
    const std::string path = temp_path(name);
    std::ofstream(path) << dump.out;
    for (const auto& cmd : commands) {
      std::vector<std::string> builtin = cmd;
      std::vector<std::string> file = cmd;
      for (auto* args : {&builtin, &file}) args->insert(args->end(), {"--format", "json"});
      builtin.insert(builtin.end(), {"--manifold", name});
      file.insert(file.end(), {"--input", path});
      const Outcome a = run_cli(builtin);
      const Outcome b = run_cli(file);
      CHECK_MESSAGE(a.code == b.code, cmd[0]);
      CHECK_MESSAGE(a.out == b.out, cmd[0]);
    }
    std::remove(path.c_str());
  }
}

TEST_CASE("cli: --output writes the report to a file") {
  const std::string path = temp_path("output");
  const Outcome o = run_cli({"cy-check", "--manifold", "iwasawa", "--format", "json", "--output", path});
  REQUIRE(o.code == 0);
  CHECK(o.out.empty());
  std::ifstream in(path);
  CHECK(Json::parse(in)["verdict"] == "INCONCLUSIVE");
  std::remove(path.c_str());
}

TEST_CASE("report text rendering") {
  const Json form = Json::parse(R"([
    {"coeff": {"re": "0/1", "im": "2/1"}, "monomial": ["a", "b"]},
    {"coeff": {"re": "-1/1", "im": "0/1"}, "monomial": ["c"], "frame": 2},
    {"coeff": {"re": "1/1", "im": "1/1"}, "monomial": []}
  ])");
  CHECK(cli::form_text(form) == "2i*a^b - c@theta2 + (1+i)*1");
  CHECK(cli::form_text(Json::array()) == "0");
  const Json grid{{"g", {{"label", "X"}, {"cells", {{"0,0", 1}, {"1,1", 12}}}}}};
  CHECK(cli::emit_report(grid, cli::Format::Text) == "g:\n  X    q=0  q=1\n  p=0    1    .\n  p=1    .   12\n");
  CHECK(cli::emit_report(Json{{"b", 1}, {"a", true}}, cli::Format::Json) == "{\n  \"a\": true,\n  \"b\": 1\n}\n");
}
