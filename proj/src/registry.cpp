#include "fq/registry.hpp"

#include "fq/error.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <fstream>
#include <regex>
#include <sstream>

namespace fq {

namespace {

[[noreturn]] void bad(const std::string& where, const std::string& what) {
  throw Error(Errc::ParseError, "registry " + where + ": " + what);
}

YAML::Node need(const YAML::Node& node, const char* key, const std::string& where) {
  YAML::Node v = node[key];
  if (!v) bad(where, std::string("missing field '") + key + "'");
  return v;
}

template <class T>
T scalar(const YAML::Node& node, const std::string& where) {
  try {
    return node.as<T>();
  } catch (const YAML::Exception& e) {
    bad(where, e.what());
  }
}

Rational rational_field(const YAML::Node& node, const char* key, const std::string& where) {
  return parse_rational(scalar<std::string>(need(node, key, where), where + "." + key));
}

PrimeRef parse_prime(const YAML::Node& node, const std::string& where) {
  PrimeRef p;
  p.p = scalar<long long>(need(node, "p", where), where + ".p");
  if (node["generator"]) p.generator = scalar<std::string>(node["generator"], where + ".generator");
  return p;
}

LevelFactor::Kind level_kind(const std::string& s, const std::string& where) {
  if (s == "principal") return LevelFactor::Kind::principal;
  if (s == "intermediate") return LevelFactor::Kind::intermediate;
  if (s == "normalizer_extension") return LevelFactor::Kind::normalizer_extension;
  bad(where, "unknown level kind '" + s + "'");
}

Assembly assembly_kind(const std::string& s, const std::string& where) {
  if (s == "elementary") return Assembly::elementary;
  if (s == "dihedral") return Assembly::dihedral;
  if (s == "extension") return Assembly::extension;
  bad(where, "unknown assembly '" + s + "'");
}

ExampleRecord parse_example(const YAML::Node& n, std::size_t i) {
  std::string where = "examples[" + std::to_string(i) + "]";
  ExampleRecord r;
  r.id = scalar<std::string>(need(n, "id", where), where);
  where = "example '" + r.id + "'";
  r.section = scalar<std::string>(need(n, "section", where), where);
  r.subgroup = scalar<std::string>(need(n, "subgroup", where), where);
  r.field_d = scalar<long long>(need(n, "field", where), where + ".field");
  for (const auto& p : need(n, "ramified", where)) r.ramified.push_back(parse_prime(p, where + ".ramified"));
  for (const auto& s : need(n, "split", where)) r.split.push_back(scalar<std::string>(s, where + ".split"));
  if (r.split.size() != r.ramified.size()) bad(where, "split and ramified differ in length");
  for (const auto& l : need(n, "level", where)) {
    LevelRef lv;
    lv.kind = level_kind(scalar<std::string>(need(l, "kind", where), where), where);
    if (l["prime"]) lv.prime = parse_prime(l["prime"], where + ".level");
    if (l["image_order"]) lv.image_order = scalar<int>(l["image_order"], where + ".image_order");
    if (l["degree"]) lv.degree = scalar<int>(l["degree"], where + ".degree");
    r.level.push_back(lv);
  }
  YAML::Node e = need(n, "expected", where);
  std::string ew = where + ".expected";
  r.shimizu_c2 = rational_field(e, "shimizu_c2", ew);
  for (const auto& t : need(e, "torsion_orders", ew)) r.torsion_orders.push_back(scalar<int>(t, ew));
  for (const auto& t : need(e, "quotient_orders", ew)) r.quotient_orders.push_back(scalar<long long>(t, ew));
  r.index = rational_field(e, "index", ew);
  r.c2 = rational_field(e, "c2", ew);
  r.torsion_free = scalar<bool>(need(e, "torsion_free", ew), ew);
  r.assembly = assembly_kind(scalar<std::string>(need(n, "assembly", where), where), where);
  if (n["inverting_involution"]) r.inverting_involution = scalar<bool>(n["inverting_involution"], where);
  r.aut = parse_group(scalar<std::string>(need(n, "aut", where), where));
  return r;
}

RecordedRow parse_row(const YAML::Node& n, std::size_t i) {
  std::string where = "theorem_b[" + std::to_string(i) + "]";
  RecordedRow row;
  row.group = parse_group(scalar<std::string>(need(n, "group", where), where));
  row.config = parse_configuration(scalar<std::string>(need(n, "singularities", where), where));
  row.k2 = rational_field(n, "k2", where);
  row.c2 = rational_field(n, "c2", where);
  row.minimal = parse_minimality(scalar<std::string>(need(n, "minimal", where), where));
  row.kodaira = parse_kodaira(scalar<std::string>(need(n, "kodaira", where), where));
  if (n["printed_singularities"]) row.printed_config = scalar<std::string>(n["printed_singularities"], where);
  return row;
}

RegistryFact parse_fact(const YAML::Node& n, std::size_t i) {
  std::string where = "facts[" + std::to_string(i) + "]";
  RegistryFact f;
  f.id = scalar<std::string>(need(n, "id", where), where);
  where = "fact '" + f.id + "'";
  f.section = scalar<std::string>(need(n, "section", where), where);
  f.status = scalar<std::string>(need(n, "status", where), where);
  if (f.status != "excluded" && f.status != "unverified") bad(where, "status must be excluded or unverified");
  f.statement = scalar<std::string>(need(n, "statement", where), where);
  if (n["group"]) {
    auto g = parse_group(scalar<std::string>(n["group"], where));
    f.group_name = g.name();
    f.group_order = g.order();
  } else {
    f.group_name = scalar<std::string>(need(n, "group_name", where), where);
    f.group_order = scalar<int>(need(n, "group_order", where), where);
  }
  if (n["singularities"]) f.singularities = parse_configuration(scalar<std::string>(n["singularities"], where));
  if (n["census"])
    for (const auto& kv : n["census"]) f.census[scalar<int>(kv.first, where)] = scalar<int>(kv.second, where);
  if (n["k2"]) f.k2 = rational_field(n, "k2", where);
  if (n["c2"]) f.c2 = rational_field(n, "c2", where);
  return f;
}

PrimeSplit resolve_prime(const QuadraticField& k, const PrimeRef& p) {
  if (p.generator) {
    PrimeSplit s = prime_of_generator(k, parse_element(k, *p.generator));
    if (s.p != p.p)
      throw Error(Errc::OutOfRange, "generator " + *p.generator + " lies over " + std::to_string(s.p) + ", not " +
                                        std::to_string(p.p));
    return s;
  }
  return split_type(k, p.p);
}

template <class T>
std::string join(const std::vector<T>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + "]";
}

void check(ReplayReport& rep, std::string field, std::string expected, std::string actual) {
  bool pass = expected == actual;
  rep.checks.push_back({std::move(field), std::move(expected), std::move(actual), pass});
}

int log2_exact(const Rational& r) {
  if (!is_integer(r) || r < 1) return -1;
  BigInt n = numerator_of(r);
  int l = 0;
  while (n % 2 == 0) {
    n /= 2;
    ++l;
  }
  return n == 1 ? l : -1;
}

}  // namespace

const ExampleRecord& Registry::example(std::string_view id) const {
  for (const auto& r : examples)
    if (r.id == id) return r;
  throw Error(Errc::UsageError, "no registry record '" + std::string(id) + "'");
}

GroupDescriptor parse_group(std::string_view text) {
  std::string s(text);
  s.erase(std::remove(s.begin(), s.end(), ' '), s.end());
  std::smatch m;
  static const std::regex cyclic(R"(Z/(\d+)(Z)?)");
  static const std::regex dihedral(R"(D_?\{?(\d+)\}?)");
  static const std::regex elem(R"(\(Z/2(Z)?\)\^(\d+))");
  // "Z/6.(Z/2)^2 > Z/12" or the name() form "Z/6Z.(Z/2Z)^2containingZ/12Z"
  static const std::regex ext(R"(Z/(\d+)Z?\.\(Z/2Z?\)\^2(?:(?:>|containing)Z/(\d+)Z?)?)");
  auto num = [&](int i) { return std::stoi(m[i].str()); };
  try {
    if (s == "klein" || s == "V4") return GroupDescriptor::klein_four();
    if (s == "1") return GroupDescriptor::cyclic(1);
    if (std::regex_match(s, m, cyclic)) return GroupDescriptor::cyclic(num(1));
    if (std::regex_match(s, m, dihedral)) return GroupDescriptor::dihedral(num(1));
    if (std::regex_match(s, m, elem)) return GroupDescriptor::elem_abelian_2(num(2));
    if (std::regex_match(s, m, ext))
      return GroupDescriptor::extension(num(1), m[2].matched ? std::optional<int>(num(2)) : std::nullopt);
  } catch (const std::out_of_range&) {
  }
  throw Error(Errc::ParseError, "unrecognised group '" + std::string(text) + "'");
}

Registry parse_registry(std::string_view yaml_text) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(yaml_text));
  } catch (const YAML::Exception& e) {
    throw Error(Errc::ParseError, std::string("registry: ") + e.what());
  }
  if (!root.IsMap()) bad("root", "expected a mapping");
  Registry reg;
  reg.schema_version = scalar<int>(need(root, "schema_version", "root"), "schema_version");
  if (reg.schema_version != 1) bad("root", "unsupported schema_version " + std::to_string(reg.schema_version));
  if (auto c = root["conjecture"]) {
    reg.conjecture = scalar<std::string>(need(c, "statement", "conjecture"), "conjecture");
    reg.conjecture_status = scalar<std::string>(need(c, "status", "conjecture"), "conjecture");
  }
  std::size_t i = 0;
  for (const auto& n : need(root, "examples", "root")) reg.examples.push_back(parse_example(n, i++));
  i = 0;
  if (root["theorem_b"])
    for (const auto& n : root["theorem_b"]) reg.theorem_b.push_back(parse_row(n, i++));
  i = 0;
  if (root["facts"])
    for (const auto& n : root["facts"]) reg.facts.push_back(parse_fact(n, i++));
  for (std::size_t a = 0; a < reg.examples.size(); ++a)
    for (std::size_t b = a + 1; b < reg.examples.size(); ++b)
      if (reg.examples[a].id == reg.examples[b].id) bad("examples", "duplicate id '" + reg.examples[a].id + "'");
  return reg;
}

Registry load_registry_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::UsageError, "cannot read registry file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_registry(buf.str());
}

const Registry& default_registry() {
  static const Registry reg = parse_registry(embedded_registry_text());
  return reg;
}

bool ReplayReport::pass() const {
  return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const FieldCheck& c) { return c.pass; });
}

ReplayReport replay(const ExampleRecord& record) {
  ReplayReport rep;
  rep.id = record.id;
  QuadraticField k = make_field(record.field_d);

  std::vector<PrimeSplit> primes;
  for (std::size_t i = 0; i < record.ramified.size(); ++i) {
    primes.push_back(resolve_prime(k, record.ramified[i]));
    check(rep, "split[" + std::to_string(record.ramified[i].p) + "]", record.split[i],
          std::string(split_kind_name(primes.back().kind)));
  }
  QuaternionData B = make_algebra(k, primes);

  Rational e = shimizu_euler(B);
  check(rep, "shimizu_c2", to_string(record.shimizu_c2), to_string(e));
  check(rep, "torsion_orders", join(record.torsion_orders), join(torsion_orders(B)));

  std::vector<LevelFactor> level;
  std::vector<long long> quotients;
  for (const auto& l : record.level) {
    if (l.kind == LevelFactor::Kind::normalizer_extension) {
      level.push_back(LevelFactor::normalizer_extension(l.degree));
      continue;
    }
    if (!l.prime) throw Error(Errc::ParseError, "registry example '" + record.id + "': level without prime");
    PrimeSplit P = resolve_prime(k, *l.prime);
    quotients.push_back(gamma1_quotient_order(P.q, P.p));
    level.push_back(l.kind == LevelFactor::Kind::principal ? LevelFactor::principal(P)
                                                           : LevelFactor::intermediate(P, l.image_order));
  }
  check(rep, "quotient_orders", join(record.quotient_orders), join(quotients));

  SubgroupSpec spec = make_subgroup(B, level);
  check(rep, "index", to_string(record.index), to_string(spec.index_in_base));
  check(rep, "c2", to_string(record.c2), to_string(euler_of_subgroup(e, spec)));

  TorsionCheck tf = torsion_free_check(B, spec);
  check(rep, "torsion_free", record.torsion_free ? "true" : "false", tf.torsion_free ? "true" : "false");
  if (tf.relies_on_record) rep.recorded.push_back("torsion-freeness outside Gamma1");

  // |Aut| = [N : Gamma1] [Gamma1 : Gamma]; the first factor is 2^rank.
  NormalizerRank rank = normalizer_quotient_rank(B);
  if (rank.lower_bound) rep.recorded.push_back("N/Gamma1 has rank " + std::to_string(rank.value));
  Rational order = spec.index_in_base * (1 << rank.value);
  const Rational& Q = spec.index_in_base;
  std::optional<GroupDescriptor> aut;
  switch (record.assembly) {
    case Assembly::elementary: {
      int l = log2_exact(order);
      if (l >= 0) aut = l == 0 ? GroupDescriptor::cyclic(1) : GroupDescriptor::elem_abelian_2(l);
      break;
    }
    case Assembly::dihedral:
      // g = 1 + lambda has order 2Q modulo Gamma
      if (is_integer(Q)) {
        aut = assemble_automorphism_group(2 * static_cast<int>(numerator_of(Q)), record.inverting_involution);
        if (record.inverting_involution) rep.recorded.push_back("inverting involution outside <g>");
      }
      break;
    case Assembly::extension:
      if (is_integer(Q)) {
        int q = static_cast<int>(numerator_of(Q));
        aut = GroupDescriptor::extension(q, 2 * q);
        rep.recorded.push_back("extension structure unresolved");
      }
      break;
  }
  check(rep, "aut_order", std::to_string(record.aut.order()), to_string(order));
  check(rep, "aut", record.aut.name(), aut ? aut->name() : "none");
  rep.aut = aut.value_or(GroupDescriptor::cyclic(1));
  return rep;
}

ReplayReport check_fact(const RegistryFact& fact) {
  ReplayReport rep;
  rep.id = fact.id;
  rep.recorded.push_back(fact.status == "excluded" ? "exclusion argument" : "existence of the action");
  check(rep, "group_order", std::to_string(fact.group_order), std::to_string(fact.group_order));
  if (fact.group_order < 1) rep.checks.back().pass = false;
  if (!fact.singularities) return rep;

  const int order = fact.group_order;
  const auto& cfg = *fact.singularities;
  // each point of type A_{n,q} is an orbit of |G|/n points with stabilizer of order n
  std::map<int, int> from_points;
  for (const auto& [s, mult] : cfg.counts()) from_points[s.n] += mult * (order / s.n);
  auto census_text = [](const std::map<int, int>& c) {
    std::string s;
    for (const auto& [n, v] : c) s += (s.empty() ? "" : ",") + std::to_string(n) + ":" + std::to_string(v);
    return "{" + s + "}";
  };
  check(rep, "census", census_text(fact.census), census_text(from_points));

  Rational euler = euler_quotient(order, fact.census);
  Rational k2 = Rational(8) / order + cfg.total_delta_k2();
  Rational c2 = euler + cfg.total_delta_e();
  if (fact.k2) check(rep, "k2", to_string(*fact.k2), to_string(k2));
  if (fact.c2) check(rep, "c2", to_string(*fact.c2), to_string(c2));
  check(rep, "chi", "1", to_string((k2 + c2) / 12));
  return rep;
}

std::vector<GroupDescriptor> automorphism_groups(const Registry& reg) {
  std::vector<GroupDescriptor> out;
  for (const auto& r : reg.examples)
    if (std::find(out.begin(), out.end(), r.aut) == out.end()) out.push_back(r.aut);
  return out;
}

}  // namespace fq
