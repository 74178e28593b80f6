#include "doctest.h"

#include "fq/error.hpp"
#include "fq/registry.hpp"

#include <set>

using namespace fq;

namespace {

const FieldCheck* find_check(const ReplayReport& rep, const std::string& field) {
  for (const auto& c : rep.checks)
    if (c.field == field) return &c;
  return nullptr;
}

}  // namespace

TEST_CASE("embedded registry matches the file in the tree") {
  auto from_file = load_registry_file(std::string(FQ_SOURCE_DIR) + "/data/registry.yaml");
  const auto& reg = default_registry();
  CHECK(from_file.examples.size() == reg.examples.size());
  CHECK(reg.examples.size() == 8);
  CHECK(reg.theorem_b.size() == 8);
  CHECK(reg.facts.size() == 2);
  CHECK(reg.conjecture_status == "open");
}

TEST_CASE("every record replays") {
  for (const auto& r : default_registry().examples) {
    auto rep = replay(r);
    CAPTURE(r.id);
    for (const auto& c : rep.checks) {
      CAPTURE(c.field);
      CAPTURE(c.expected);
      CAPTURE(c.actual);
      CHECK(c.pass);
    }
    CHECK(rep.pass());
    CHECK(rep.aut == r.aut);
  }
}

TEST_CASE("selected records") {
  const auto& reg = default_registry();
  auto a = replay(reg.example("sqrt5-p2p5-P2"));
  CHECK(find_check(a, "shimizu_c2")->actual == "4/5");
  CHECK(find_check(a, "index")->actual == "5");
  CHECK(a.aut == GroupDescriptor::dihedral(10));
  CHECK(a.aut.order() == 20);

  auto b = replay(reg.example("sqrt2-p2p3-P2"));
  CHECK(find_check(b, "shimizu_c2")->actual == "4/3");
  CHECK(find_check(b, "index")->actual == "3");
  CHECK(b.aut.name() == "D6");

  CHECK(replay(reg.example("sqrt2-p2p5")).aut == GroupDescriptor::klein_four());
  CHECK(replay(reg.example("sqrt2-p2p7-P7")).aut == GroupDescriptor::dihedral(8));
  CHECK(replay(reg.example("sqrt13-p2p3-P3")).aut == GroupDescriptor::dihedral(4));
  auto first = replay(reg.example("sqrt2-p3p7-index2"));
  CHECK(first.aut == GroupDescriptor::cyclic(2));
  CHECK_FALSE(first.recorded.empty());

  auto big = replay(reg.example("sqrt3-p2p3-P2P3"));
  CHECK(big.aut.order() == 24);
  CHECK_FALSE(big.aut.resolved);
}

TEST_CASE("corrupted record fails with a field diff") {
  auto r = default_registry().example("sqrt5-p2p5-P2");
  r.index = 4;
  auto rep = replay(r);
  CHECK_FALSE(rep.pass());
  auto c = find_check(rep, "index");
  REQUIRE(c);
  CHECK_FALSE(c->pass);
  CHECK(c->expected == "4");
  CHECK(c->actual == "5");
  CHECK(find_check(rep, "shimizu_c2")->pass);

  auto s = default_registry().example("sqrt2-p2p7-P7");
  s.split[1] = "inert";
  CHECK_FALSE(find_check(replay(s), "split[7]")->pass);
}

TEST_CASE("group list of the records") {
  std::set<std::string> resolved;
  for (const auto& g : automorphism_groups(default_registry()))
    if (g.resolved) resolved.insert(g.name());
  CHECK(resolved == std::set<std::string>{"Z/2Z", "(Z/2Z)^2", "D4", "D6", "D8", "D10"});
}

TEST_CASE("facts") {
  const auto& reg = default_registry();
  for (const auto& f : reg.facts) {
    auto rep = check_fact(f);
    CAPTURE(f.id);
    CHECK(rep.pass());
  }
  auto f = reg.facts[1];
  f.census[4] = 2;
  CHECK_FALSE(check_fact(f).pass());
  CHECK(reg.facts[0].group_order == 8);
}

TEST_CASE("quotient table rows load") {
  const auto& rows = default_registry().theorem_b;
  CHECK(rows[3].printed_config == "A_{8,3} + A_{8,5}");
  CHECK(rows[3].config.total_points() == 4);
  CHECK(rows[6].kodaira == Kodaira::at_least_one);
  CHECK(rows[1].minimal == Minimality::undetermined);
}

TEST_CASE("group parsing") {
  CHECK(parse_group("Z/2") == GroupDescriptor::cyclic(2));
  CHECK(parse_group("Z/10Z") == GroupDescriptor::cyclic(10));
  CHECK(parse_group("D8") == GroupDescriptor::dihedral(8));
  CHECK(parse_group("(Z/2)^2") == GroupDescriptor::klein_four());
  CHECK(parse_group("(Z/2Z)^3").order() == 8);
  CHECK(parse_group("klein") == GroupDescriptor::klein_four());
  auto ext = GroupDescriptor::extension(6, 12);
  CHECK(parse_group(ext.name()) == ext);
  CHECK(parse_group("Z/6.(Z/2)^2 > Z/12") == ext);
  for (const char* s : {"", "Q8", "Z/", "D", "S_4"}) CHECK_THROWS_AS(parse_group(s), Error);
}

TEST_CASE("malformed registries") {
  CHECK_THROWS_AS(parse_registry("schema_version: 2\nexamples: []\n"), Error);
  CHECK_THROWS_AS(parse_registry("examples: []\n"), Error);
  CHECK_THROWS_AS(parse_registry("[1, 2"), Error);
  CHECK_NOTHROW(parse_registry("schema_version: 1\nexamples: []\n"));
  CHECK_THROWS_AS(load_registry_file("/nonexistent/registry.yaml"), Error);
  try {
    parse_registry("schema_version: 1\nexamples:\n  - id: x\n    section: '1'\n");
    CHECK(false);
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("subgroup") != std::string::npos);
  }
}
