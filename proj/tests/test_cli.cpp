#include "doctest.h"

#include "fq/cli.hpp"
#include "fq/report.hpp"

#include <yaml-cpp/yaml.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace fq;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Text mode is YAML; it has to carry the same values as the JSON document.
bool same(const YAML::Node& y, const Json& j, const std::string& path, std::string& why) {
  auto fail = [&](const std::string& what) {
    why = path + ": " + what;
    return false;
  };
  if (is_rational_json(j)) return y.IsScalar() && y.as<std::string>() == rational_text(j) ? true : fail("rational");
  if (j.is_object()) {
    if (!y.IsMap() || y.size() != j.size()) return fail("map shape");
    for (const auto& [k, v] : j.items())
      if (!y[k] || !same(y[k], v, path + "." + k, why)) return why.empty() ? fail("missing " + k) : false;
    return true;
  }
  if (j.is_array()) {
    if (!y.IsSequence() || y.size() != j.size()) return fail("sequence shape");
    for (std::size_t i = 0; i < j.size(); ++i)
      if (!same(y[i], j[i], path + "[" + std::to_string(i) + "]", why)) return false;
    return true;
  }
  if (j.is_null()) return y.IsNull() ? true : fail("null");
  if (!y.IsScalar()) return fail("scalar");
  std::string expect = j.is_string() ? j.get<std::string>() : j.is_boolean() ? (j.get<bool>() ? "true" : "false") : j.dump();
  return y.as<std::string>() == expect ? true : fail("'" + y.as<std::string>() + "' vs '" + expect + "'");
}

const std::vector<std::vector<std::string>> kCommands{
    {"field", "5", "--primes", "2,3,5,11"},
    {"algebra", "--field", "3", "--ramified", "2,3"},
    {"euler", "--field", "2", "--ramified", "3,7"},
    {"euler", "--field", "5", "--ramified", "2,11", "--gen", "11=4+sqrt5", "--intermediate", "11:3"},
    {"euler", "--field", "2", "--ramified", "3,7", "--extension", "2"},
    {"torsion", "--field", "5", "--ramified", "2,5", "--principal", "2"},
    {"resolve", "A", "10", "3"},
    {"resolve", "A_{8,5}"},
    {"resolve", "A", "3"},
    {"enumerate", "cyclic", "4"},
    {"enumerate", "klein"},
    {"enumerate", "dihedral", "4"},
    {"enumerate", "zhang", "5"},
    {"quotient", "Z/10"},
    {"quotient", "D8"},
    {"cover", "codes", "6"},
    {"cover", "double", "--k2", "4", "--c2", "8", "--k", "4", "--r", "1"},
    {"cover", "double", "--k2", "2", "--c2", "10", "--k", "6", "--r", "2", "--uncontracted"},
    {"cover", "triple", "--k2", "0", "--c2", "12", "--curves", "6"},
    {"cover", "reconstruct", "triple"},
    {"registry", "list"},
    {"registry", "show", "sqrt2-p2p7-P7"},
    {"registry", "facts"},
};

}  // namespace

TEST_CASE("worked commands") {
  auto e = run({"--json", "euler", "--field", "2", "--ramified", "3,7"});
  REQUIRE(e.code == 0);
  auto j = Json::parse(e.out);
  CHECK(j["command"] == "euler");
  CHECK(j["result"]["shimizu_c2"] == Json({{"num", 8}, {"den", 1}}));

  auto r = run({"--json", "resolve", "A", "10", "3"});
  REQUIRE(r.code == 0);
  auto res = Json::parse(r.out)["result"];
  CHECK(res["chain"] == Json({4, 2, 2}));
  CHECK(res["delta_k2"] == Json({{"num", -6}, {"den", 5}}));
  CHECK(res["delta_e"] == 3);

  auto t = run({"resolve", "A", "10", "3"});
  CHECK(t.out.find("delta_k2: -6/5") != std::string::npos);
  // the shorthand and the pair give the same point
  CHECK(run({"resolve", "A", "9"}).out == run({"resolve", "A", "10", "9"}).out);
}

TEST_CASE("repro targets match their golden files") {
  for (auto [target, file] : {std::pair{"theorem-b", "theorem_b.txt"}, std::pair{"section4", "section4.txt"},
                              std::pair{"covers", "covers.txt"}}) {
    auto r = run({"repro", target});
    CAPTURE(r.err);
    CHECK(r.code == 0);
    CHECK(r.out == slurp(std::string(FQ_SOURCE_DIR) + "/tests/golden/" + file));
  }
  CHECK(run({"repro", "section4"}).out.find("8/8 records pass") != std::string::npos);
  CHECK(run({"repro", "covers"}).out.find("3/3 reconstructions") != std::string::npos);
}

TEST_CASE("golden drift is reported") {
  auto dir = std::filesystem::temp_directory_path() / "fq_golden_drift";
  std::filesystem::create_directories(dir);
  std::string golden = slurp(std::string(FQ_SOURCE_DIR) + "/tests/golden/covers.txt");
  golden.replace(golden.find("K^2 = 8"), 7, "K^2 = 9");
  std::ofstream(dir / "covers.txt") << golden;
  auto r = run({"repro", "covers", "--golden-dir", dir.string()});
  CHECK(r.code == 3);
  CHECK(r.err.find("GoldenMismatch") != std::string::npos);
  CHECK(run({"repro", "section4", "--golden-dir", dir.string()}).code == 3);
  std::filesystem::remove_all(dir);
}

TEST_CASE("exit codes") {
  auto u = run({"repro", "unknown"});
  CHECK(u.code == 64);
  CHECK(u.err.find("UsageError") != std::string::npos);
  CHECK(run({}).code == 64);
  CHECK(run({"frobnicate"}).code == 64);
  CHECK(run({"euler"}).code == 64);
  CHECK(run({"resolve", "B", "1", "2", "3"}).code == 64);
  CHECK(run({"--help"}).code == 0);

  auto d = run({"euler", "--field", "4", "--ramified", "2,3"});
  CHECK(d.code == 2);
  CHECK(d.err.find("NotSquarefree") != std::string::npos);
  CHECK(run({"resolve", "A", "10", "4"}).code == 2);
  CHECK(run({"quotient", "Z/13"}).code == 2);
  CHECK(run({"quotient", "(Z/2)^3"}).code == 2);
  CHECK(run({"cover", "double", "--k2", "2", "--c2", "10", "--k", "5", "--r", "2"}).code == 2);
  CHECK(run({"registry", "show", "nope"}).code == 64);
}

TEST_CASE("text and JSON carry the same values") {
  for (const auto& cmd : kCommands) {
    std::string line;
    for (const auto& a : cmd) line += a + " ";
    CAPTURE(line);
    auto text = run(cmd);
    auto with_json = cmd;
    with_json.insert(with_json.begin(), "--json");
    auto json = run(with_json);
    REQUIRE(text.code == 0);
    REQUIRE(json.code == 0);
    auto doc = Json::parse(json.out);
    std::string why;
    CHECK_MESSAGE(same(YAML::Load(text.out), doc["result"], "result", why), why);
  }
}

TEST_CASE("output is deterministic") {
  for (const auto& cmd : kCommands) CHECK(run(cmd).out == run(cmd).out);
  CHECK(run({"--json", "repro", "theorem-b"}).out == run({"--json", "repro", "theorem-b"}).out);
}
