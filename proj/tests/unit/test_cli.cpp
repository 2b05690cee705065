#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "hornforge_cli/cli.hpp"
#include "hornforge_cli/config.hpp"
#include "hornforge/errors.hpp"

using hornforge::cli::run_cli;
using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args, const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out, err;
  const int code = run_cli(args, in, out, err);
  return {code, out.str(), err.str()};
}

std::string golden(const std::string& name) {
  std::ifstream f(std::string(HORNFORGE_GOLDEN_DIR) + "/" + name, std::ios::binary);
  REQUIRE(f);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

std::string pipe(const std::vector<std::vector<std::string>>& stages) {
  std::string data;
  for (const auto& args : stages) {
    const Result r = run(args, data);
    REQUIRE_MESSAGE(r.code == 0, r.err);
    data = r.out;
  }
  return data;
}

}  // namespace

TEST_CASE("claw golden files") {
  const std::string lc = run({"lc-gen", "claw"}).out;
  CHECK(lc == golden("claw.lc"));
  CHECK(run({"lc-refine"}, lc).out == golden("claw_refined.lc"));
  CHECK(run({"reduce-cnf"}, lc).out == golden("claw_cnf_t1.horn"));
  CHECK(run({"reduce-3cnf", "--t", "1"}, lc).out == golden("claw_3cnf_t1.horn"));
}

TEST_CASE("claw 3-CNF pipeline verifies") {
  const std::string cnf = pipe({{"lc-gen", "claw"}, {"reduce-3cnf", "--t", "1"}});
  const Result r = run({"verify"}, cnf);
  CHECK(r.code == 0);
  const json rep = json::parse(r.out);
  CHECK(rep["ok"] == true);
  CHECK(rep["summary"]["fail"] == 0);
  CHECK(rep["schema"] == hornforge::cli::kReportSchema);
  CHECK(rep["tool_version"] == hornforge::cli::kToolVersion);
  CHECK(rep["input_digests"]["input"] == hornforge::cli::digest(cnf));
  CHECK(rep["config"]["command"] == "verify");
}

TEST_CASE("forward chaining from v[1] on the claw") {
  const std::string cnf = pipe({{"lc-gen", "claw"}, {"reduce-cnf", "--t", "2"}});
  const json r = json::parse(run({"fc", "--query", "v[1]"}, cnf).out);
  CHECK(r["size"] == 91 - 1);
  CHECK(run({"fc", "--query", "nope"}, cnf).code == 2);
}

TEST_CASE("minimize keeps metadata and extract-cover reads it") {
  const std::string cnf = pipe({{"lc-gen", "claw"}, {"reduce-cnf", "--t", "2"}, {"minimize"}});
  CHECK(cnf.rfind("#% construction cnf\n#% t 2\n", 0) == 0);
  const json r = json::parse(run({"extract-cover"}, cnf).out);
  REQUIRE(r["covers"].size() == 2);
  CHECK(r["covers"][0]["total"] == true);
  CHECK(r["covers"][0]["kappa"] == "1");
  CHECK(r["warnings"].empty());
}

TEST_CASE("micro instance through the exact minimizer") {
  const std::string lc = "X: a\nY: b\nLX: p\nLY: q\nE: a b\nPI a b: p q\n";
  const std::string cnf = run({"reduce-cnf"}, lc).out;
  const Result m = run({"minimize-exact"}, cnf);
  REQUIRE(m.code == 0);
  const json r = json::parse(run({"extract-cover"}, m.out).out);
  CHECK(r["covers"][0]["tight"] == true);
  CHECK(r["warnings"].empty());

  const std::string shortcut = run({"reduce-cnf", "--d", "1", "--allow-d-override"}, lc).out;
  const json s = json::parse(run({"extract-cover"}, run({"minimize-exact"}, shortcut).out).out);
  CHECK(s["warnings"].size() == 1);
}

TEST_CASE("check-equiv exit status") {
  const std::string a = "vars: 3\nnames: a b c\na -> b\nb -> c\na -> c\n";
  const std::string b = "vars: 3\nnames: a b c\na -> b\nb -> c\n";
  const std::string c = "vars: 3\nnames: a b c\na -> b\n";
  const auto dir = std::filesystem::temp_directory_path() / "hornforge_cli_test";
  std::filesystem::create_directories(dir);
  std::ofstream(dir / "b.horn") << b;
  std::ofstream(dir / "c.horn") << c;
  CHECK(run({"check-equiv", "-", (dir / "b.horn").string()}, a).code == 0);
  CHECK(run({"check-equiv", "-", (dir / "c.horn").string()}, a).code == 1);
  CHECK(run({"check-equiv", "-", (dir / "missing.horn").string()}, a).code == 2);
}

TEST_CASE("lc-solve, lc-tighten, lc-round") {
  const std::string lc = run({"lc-gen", "claw"}).out;
  const Result solve = run({"lc-solve"}, lc);
  REQUIRE(solve.code == 0);
  const json sol = json::parse(solve.out);
  CHECK(sol["kappa"] == "1");
  CHECK(sol["tight"] == true);
  CHECK(json::parse(run({"lc-solve", "--packing"}, lc).out)["mu"] == "1");

  const auto dir = std::filesystem::temp_directory_path() / "hornforge_cli_test";
  std::filesystem::create_directories(dir);
  const auto lab = (dir / "f.json").string();
  std::ofstream(lab) << R"({"x": {"x1": ["l1", "l2"], "x2": ["l1"], "x3": ["l2"]}, "y": {"y": ["l2'"]}})";
  const json t = json::parse(run({"lc-tighten", "--labeling", lab}, lc).out);
  CHECK(t["tight"] == true);
  CHECK(t["kappa"] == "4/3");
  const Result r2 = run({"lc-round", "--labeling", lab, "--seed", "7"}, lc);
  REQUIRE(r2.code == 0);
  CHECK(json::parse(r2.out)["expectation"] == "5/6");
  CHECK(r2.out == run({"lc-round", "--labeling", lab, "--seed", "7"}, lc).out);
  CHECK(run({"lc-round", "--labeling", lab}, lc).code == 2);
  std::ofstream(lab) << R"({"x": {"x1": ["l1"], "x2": ["l1"], "x3": ["l2"]}, "y": {"y": ["l1'"]}})";
  CHECK(run({"lc-round", "--labeling", lab, "--seed", "7"}, lc).code == 2);  // x2 cannot support l1'
  CHECK(run({"lc-tighten", "--labeling", lab}, lc).code == 2);
}

TEST_CASE("random generation needs a seed and is reproducible") {
  CHECK(run({"lc-gen", "random"}).code == 2);
  const Result a = run({"lc-gen", "random", "--seed", "5", "--r", "5"});
  CHECK(a.code == 0);
  CHECK(a.out == run({"lc-gen", "random", "--seed", "5", "--r", "5"}).out);
  CHECK(a.out != run({"lc-gen", "random", "--seed", "6", "--r", "5"}).out);
  const json bi = json::parse(run({"stats"}, run({"lc-gen", "random", "--seed", "1", "--r", "4", "--s", "4",
                                                  "--x-degree", "2"}).out).out);
  CHECK(bi["biregular"] == true);
  CHECK(json::parse(run({"lc-gen", "random", "--seed", "5", "--json"}).out)["schema"] == "hornforge.lc/1");
}

TEST_CASE("sat2lc reads DIMACS") {
  const Result r = run({"lc-gen", "sat2lc"}, "c tiny\np cnf 3 2\n1 -2 0\n2 3 0\n");
  REQUIRE(r.code == 0);
  const json s = json::parse(run({"stats"}, r.out).out);
  CHECK(s["r"] == 4);
  CHECK(s["s"] == 2);
  CHECK(run({"lc-gen", "sat2lc"}, "1 x 0\n").code == 2);
}

TEST_CASE("json instance input is auto-detected") {
  const std::string js = run({"lc-gen", "claw", "--json"}).out;
  CHECK(run({"reduce-cnf"}, js).out.find("vars: 90") != std::string::npos);
}

TEST_CASE("error exit codes") {
  const Result bad = run({"stats"}, "X: a\nY: b\nLX: p\nLY: q\nE: a c\nPI a c: p q\n");
  CHECK(bad.code == 2);
  CHECK(bad.err.find("line 5") != std::string::npos);
  CHECK(run({"no-such-command"}).code == 2);
  CHECK(run({"reduce-cnf", "--d", "3"}, golden("claw.lc")).code == 2);
  CHECK(run({"minimize-exact"}, golden("claw_cnf_t1.horn")).code == 3);
  CHECK(run({"minimize-exact", "--limits", "max_vars=oops"}, golden("claw_cnf_t1.horn")).code == 2);
  CHECK(run({"verify"}, "vars: 2\nnames: a b\na -> b\n").code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("determinism of every command") {
  const std::string lc = golden("claw.lc");
  const std::string cnf = golden("claw_cnf_t1.horn");
  const std::vector<std::pair<std::vector<std::string>, std::string>> cases = {
      {{"lc-gen", "random", "--seed", "3"}, ""},
      {{"lc-refine"}, lc},
      {{"lc-solve"}, lc},
      {{"reduce-cnf", "--t", "2"}, lc},
      {{"reduce-3cnf"}, lc},
      {{"fc", "--query", "v[1]"}, cnf},
      {{"minimize"}, cnf},
      {{"extract-cover"}, cnf},
      {{"verify"}, lc},
      {{"stats"}, cnf},
  };
  for (const auto& [args, input] : cases) {
    const Result a = run(args, input);
    const Result b = run(args, input);
    CHECK_MESSAGE(a.code == 0, args[0]);
    CHECK_MESSAGE(a.out == b.out, args[0]);
  }
}
