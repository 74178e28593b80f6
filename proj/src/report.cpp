#include "fq/report.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <limits>
#include <sstream>

namespace fq {

namespace {

Json integer_json(const BigInt& n) {
  if (n >= std::numeric_limits<long long>::min() && n <= std::numeric_limits<long long>::max())
    return Json(static_cast<long long>(n));
  return Json(to_string(n));
}

std::string scalar_text(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_boolean()) return j.get<bool>() ? "true" : "false";
  if (j.is_null()) return "null";
  return j.dump();
}

void emit(YAML::Emitter& e, const Json& j) {
  if (is_rational_json(j)) {
    e << rational_text(j);
  } else if (j.is_object()) {
    if (j.empty()) e << YAML::Flow;
    e << YAML::BeginMap;
    for (const auto& [k, v] : j.items()) {
      e << YAML::Key << k << YAML::Value;
      emit(e, v);
    }
    e << YAML::EndMap;
  } else if (j.is_array()) {
    // short lists of numbers and rationals read better inline
    bool flat = std::all_of(j.begin(), j.end(), [](const Json& v) { return v.is_number() || is_rational_json(v); });
    if (flat) e << YAML::Flow;
    e << YAML::BeginSeq;
    for (const auto& v : j) emit(e, v);
    e << YAML::EndSeq;
  } else if (j.is_null()) {
    e << YAML::Null;
  } else {
    e << scalar_text(j);
  }
}

// Left-aligned columns, two spaces apart, no trailing blanks.
std::string table(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  for (const auto& r : rows)
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (width.size() <= i) width.push_back(0);
      width[i] = std::max(width[i], r[i].size());
    }
  std::string out;
  for (const auto& r : rows) {
    std::string line;
    for (std::size_t i = 0; i < r.size(); ++i) {
      line += r[i];
      if (i + 1 < r.size()) line += std::string(width[i] - r[i].size() + 2, ' ');
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out += line + "\n";
  }
  return out;
}

const FieldCheck* find(const ReplayReport& r, std::string_view field) {
  for (const auto& c : r.checks)
    if (c.field == field) return &c;
  return nullptr;
}

std::string actual(const ReplayReport& r, std::string_view field) {
  const FieldCheck* c = find(r, field);
  return c ? c->actual : "-";
}

std::string minimal_cell(const TheoremBRow& row) {
  std::string s(minimality_name(row.invariants.minimal));
  if (row.invariants.minimal != Minimality::undetermined) s += row.minimality_derived ? " (derived)" : " (recorded)";
  return s;
}

std::string cover_cell(const CoverInvariants& c) {
  std::string s = "K^2 = " + to_string(c.k2) + ", c2 = " + to_string(c.c2) + ", chi = " + to_string(c.chi);
  if (c.irregularity_bound) s += ", q <= " + std::to_string(*c.irregularity_bound);
  return s;
}

}  // namespace

Json rational_json(const Rational& r) {
  Json j = Json::object();
  j["num"] = integer_json(numerator_of(r));
  j["den"] = integer_json(denominator_of(r));
  return j;
}

bool is_rational_json(const Json& j) { return j.is_object() && j.size() == 2 && j.contains("num") && j.contains("den"); }

std::string rational_text(const Json& j) {
  std::string num = scalar_text(j["num"]);
  std::string den = scalar_text(j["den"]);
  return den == "1" ? num : num + "/" + den;
}

std::string render_text(const Json& doc) {
  YAML::Emitter e;
  e.SetIndent(2);
  emit(e, doc);
  return std::string(e.c_str()) + "\n";
}

Json invariants_json(const SurfaceInvariants& inv) {
  return Json{{"k2", rational_json(inv.k2)},
              {"c2", rational_json(inv.c2)},
              {"chi", rational_json(inv.chi)},
              {"q", inv.q},
              {"pg", inv.pg},
              {"minimal", std::string(minimality_name(inv.minimal))},
              {"kodaira", std::string(kodaira_name(inv.kodaira))}};
}

Json cover_json(const CoverInvariants& inv) {
  Json j{{"k2", rational_json(inv.k2)}, {"c2", rational_json(inv.c2)}, {"chi", rational_json(inv.chi)}};
  j["irregularity_bound"] = inv.irregularity_bound ? Json(*inv.irregularity_bound) : Json(nullptr);
  return j;
}

Json config_json(const SingularConfiguration& c) {
  Json points = Json::array();
  for (const auto& [s, m] : c.counts())
    points.push_back(Json{{"type", s.name()}, {"n", s.n}, {"q", s.q}, {"count", m}});
  return Json{{"display", display_config(c)}, {"points", points}};
}

std::string theorem_b_text(const std::vector<TheoremBRow>& rows) {
  std::vector<std::vector<std::string>> cells{
      {"G", "K^2", "c2", "singularities of S/G", "minimal", "kodaira", "candidates", "survivors"}};
  std::string notes;
  for (const auto& r : rows) {
    cells.push_back({r.group.name(), to_string(r.invariants.k2), to_string(r.invariants.c2),
                     display_config(r.scenario.config), minimal_cell(r),
                     std::string(kodaira_name(r.invariants.kodaira)), std::to_string(r.candidates),
                     std::to_string(r.survivors.size())});
    if (!r.note.empty()) notes += r.group.name() + ": " + r.note + "\n";
  }
  std::size_t unique = std::count_if(rows.begin(), rows.end(), [](const TheoremBRow& r) { return r.unique; });
  std::string out = table(cells);
  if (!notes.empty()) out += "\n" + notes;
  out += "\n" + std::to_string(unique) + "/" + std::to_string(rows.size()) +
         " rows determined by enumeration and the Noether filter alone\n";
  return out;
}

Json theorem_b_json(const std::vector<TheoremBRow>& rows) {
  Json arr = Json::array();
  for (const auto& r : rows) {
    Json survivors = Json::array();
    for (const auto& s : r.survivors) survivors.push_back(display_config(s));
    Json census = Json::object();
    for (const auto& [n, v] : r.scenario.stabilizer_census) census[std::to_string(n)] = v;
    arr.push_back(Json{{"group", r.group.name()},
                       {"group_order", r.group.order()},
                       {"singularities", config_json(r.scenario.config)},
                       {"census", census},
                       {"invariants", invariants_json(r.invariants)},
                       {"minimality_derived", r.minimality_derived},
                       {"candidates", r.candidates},
                       {"survivors", survivors},
                       {"unique", r.unique},
                       {"note", r.note}});
  }
  return Json{{"target", "theorem-b"}, {"rows", arr}};
}

std::string section4_text(const std::vector<ReplayReport>& reports, const std::vector<ReplayReport>& facts) {
  std::vector<std::vector<std::string>> cells{
      {"record", "c2(Gamma1)", "torsion", "index", "c2", "torsion-free", "Aut", "|Aut|", "replay"}};
  std::string detail;
  std::size_t passed = 0;
  for (const auto& r : reports) {
    passed += r.pass();
    cells.push_back({r.id, actual(r, "shimizu_c2"), actual(r, "torsion_orders"), actual(r, "index"), actual(r, "c2"),
                     actual(r, "torsion_free"), actual(r, "aut"), actual(r, "aut_order"), r.pass() ? "pass" : "FAIL"});
    for (const auto& c : r.checks)
      if (!c.pass) detail += r.id + ": " + c.field + " expected " + c.expected + ", got " + c.actual + "\n";
  }
  std::string out = table(cells);
  if (!detail.empty()) out += "\n" + detail;
  out += "\nrecorded inputs:\n";
  for (const auto& r : reports) {
    std::string line;
    for (const auto& s : r.recorded) line += (line.empty() ? "" : "; ") + s;
    out += "  " + r.id + ": " + (line.empty() ? "none" : line) + "\n";
  }
  if (!facts.empty()) {
    out += "\nfacts (arithmetic only):\n";
    for (const auto& f : facts) {
      std::string fields;
      for (const auto& c : f.checks) fields += (fields.empty() ? "" : ", ") + c.field + " = " + c.actual;
      out += "  " + f.id + ": " + fields + " -> " + (f.pass() ? "consistent" : "INCONSISTENT") + "\n";
    }
  }
  out += "\n" + std::to_string(passed) + "/" + std::to_string(reports.size()) + " records pass\n";
  return out;
}

Json section4_json(const std::vector<ReplayReport>& reports, const std::vector<ReplayReport>& facts) {
  auto one = [](const ReplayReport& r) {
    Json checks = Json::array();
    for (const auto& c : r.checks)
      checks.push_back(Json{{"field", c.field}, {"expected", c.expected}, {"actual", c.actual}, {"pass", c.pass}});
    return Json{{"id", r.id}, {"pass", r.pass()}, {"checks", checks}, {"recorded", r.recorded}};
  };
  Json recs = Json::array();
  std::size_t passed = 0;
  for (const auto& r : reports) {
    recs.push_back(one(r));
    passed += r.pass();
  }
  Json fs = Json::array();
  for (const auto& f : facts) fs.push_back(one(f));
  return Json{{"target", "section4"}, {"passed", passed}, {"total", reports.size()}, {"records", recs}, {"facts", fs}};
}

std::string covers_text(const std::vector<Reconstruction>& recs) {
  std::string out;
  std::size_t ok = 0;
  for (const auto& rec : recs) {
    out += rec.name + "\n";
    std::vector<std::vector<std::string>> cells;
    for (const auto& s : rec.steps) cells.push_back({"  " + s.label, cover_cell(s.inv)});
    out += table(cells);
    out += "  result: " + cover_cell(rec.result) + (rec.fake_quadric_invariants ? "  fake quadric" : "  NOT (8, 4, 1)") +
           "\n\n";
    ok += rec.fake_quadric_invariants;
  }
  out += std::to_string(ok) + "/" + std::to_string(recs.size()) + " reconstructions reach K^2 = 8, c2 = 4, chi = 1\n";
  return out;
}

Json covers_json(const std::vector<Reconstruction>& recs) {
  Json arr = Json::array();
  for (const auto& rec : recs) {
    Json steps = Json::array();
    for (const auto& s : rec.steps) steps.push_back(Json{{"label", s.label}, {"invariants", cover_json(s.inv)}});
    arr.push_back(Json{{"name", rec.name},
                       {"steps", steps},
                       {"result", cover_json(rec.result)},
                       {"fake_quadric_invariants", rec.fake_quadric_invariants}});
  }
  return Json{{"target", "covers"}, {"reconstructions", arr}};
}

}  // namespace fq
