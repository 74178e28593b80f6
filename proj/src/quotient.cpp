#include "fq/quotient.hpp"

#include "fq/error.hpp"
#include "fq/fixedpoints.hpp"

#include <algorithm>

namespace fq {

std::string_view minimality_name(Minimality m) {
  switch (m) {
    case Minimality::yes: return "yes";
    case Minimality::no: return "no";
    case Minimality::undetermined: return "-";
  }
  return "-";
}

std::string_view kodaira_name(Kodaira k) {
  switch (k) {
    case Kodaira::general_type: return "2";
    case Kodaira::at_least_one: return ">=1";
    case Kodaira::undetermined: return "-";
  }
  return "-";
}

Minimality parse_minimality(std::string_view text) {
  if (text == "yes") return Minimality::yes;
  if (text == "no") return Minimality::no;
  if (text == "-" || text == "undetermined") return Minimality::undetermined;
  throw Error(Errc::ParseError, "bad minimality verdict '" + std::string(text) + "'");
}

Kodaira parse_kodaira(std::string_view text) {
  if (text == "2") return Kodaira::general_type;
  if (text == ">=1") return Kodaira::at_least_one;
  if (text == "-" || text == "undetermined") return Kodaira::undetermined;
  throw Error(Errc::ParseError, "bad Kodaira dimension '" + std::string(text) + "'");
}

Rational euler_quotient(int group_order, const std::map<int, int>& census) {
  if (group_order < 1) throw Error(Errc::OutOfRange, "group order must be positive");
  Rational total = 4;
  for (const auto& [n, count] : census) {
    if (count < 0) throw Error(Errc::OutOfRange, "negative census entry");
    total += Rational(n - 1) * count;
  }
  return total / group_order;
}

Rational euler_by_orbits(const QuotientScenario& s) {
  int moved = 0;
  for (const auto& [n, count] : s.stabilizer_census) moved += count;
  return Rational(4 - moved) / s.group.order() + s.config.total_points();
}

bool census_consistent(const QuotientScenario& s) {
  int order = s.group.order();
  std::map<int, int> expected;
  for (const auto& [sing, mult] : s.config.counts()) {
    if (order % sing.n != 0) return false;
    expected[sing.n] += mult * (order / sing.n);
  }
  std::map<int, int> given;
  for (const auto& [n, count] : s.stabilizer_census)
    if (count != 0) given[n] = count;
  return expected == given;
}

SurfaceInvariants raw_invariants(const QuotientScenario& s) {
  SurfaceInvariants inv;
  inv.k2 = Rational(8) / s.group.order() + s.config.total_delta_k2();
  inv.c2 = euler_quotient(s.group.order(), s.stabilizer_census) + s.config.total_delta_e();
  inv.chi = (inv.k2 + inv.c2) / 12;
  return inv;
}

namespace {

bool all_du_val(const SingularConfiguration& c) {
  for (const auto& [sing, mult] : c.counts())
    if (sing.q != sing.n - 1) return false;
  return true;
}

}  // namespace

SurfaceInvariants resolution_invariants(const QuotientScenario& s) {
  if (!census_consistent(s))
    throw Error(Errc::InconsistentScenario, "census does not match " + s.config.to_string());
  SurfaceInvariants inv = raw_invariants(s);
  if (inv.chi != 1)
    throw Error(Errc::InconsistentScenario, s.group.name() + ", " + s.config.to_string() +
                                                ": chi = " + to_string(inv.chi));
  if (all_du_val(s.config)) inv.minimal = Minimality::yes;
  return kodaira_classify(inv);
}

std::vector<QuotientScenario> noether_filter(const std::vector<QuotientScenario>& candidates) {
  std::vector<QuotientScenario> out;
  for (const auto& s : candidates) {
    auto inv = raw_invariants(s);
    if (inv.k2 + inv.c2 == 12) out.push_back(s);
  }
  return out;
}

SurfaceInvariants kodaira_classify(SurfaceInvariants inv) {
  // K_Z is pi^* of a nef class minus an effective one; only its sign is used
  if (inv.k2 > 0)
    inv.kodaira = Kodaira::general_type;
  else if (inv.k2 == 0)
    inv.kodaira = Kodaira::at_least_one;
  else
    inv.kodaira = Kodaira::undetermined;
  return inv;
}

MinimalityVerdict minimality_verdict(const QuotientScenario& s, std::span<const RecordedRow> recorded) {
  if (all_du_val(s.config)) return {Minimality::yes, true};
  for (const auto& r : recorded)
    if (r.group == s.group && r.config == s.config) return {r.minimal, false};
  return {Minimality::undetermined, false};
}

int miyaoka_nodal_bound(const Rational& k2) {
  if (k2 == 4) return 4;
  if (k2 == 2) return 6;
  throw Error(Errc::UnsupportedK2, "nodal bound only tabulated for K^2 = 4 or 2, got " + to_string(k2));
}

int b2_from_invariants(const Rational& k2) {
  // chi = 1, q = 0: c_2 = 12 - K^2 = 2 + b_2
  if (denominator_of(k2) != 1) throw Error(Errc::NotRational, "K^2 must be an integer, got " + to_string(k2));
  return 10 - numerator_of(k2).convert_to<int>();
}

std::string display_name(const SingularityType& s) {
  if (s.q == s.n - 1) {
    std::string k = std::to_string(s.n - 1);
    return s.n - 1 < 10 ? "A_" + k : "A_{" + k + "}";
  }
  return "A_{" + std::to_string(s.n) + "," + std::to_string(s.q) + "}";
}

std::string display_config(const SingularConfiguration& c) {
  if (c.empty()) return "smooth";
  std::string out;
  for (const auto& [sing, mult] : c.counts()) {
    if (!out.empty()) out += " + ";
    if (mult != 1) out += std::to_string(mult);
    out += display_name(sing);
  }
  return out;
}

std::vector<QuotientScenario> candidate_scenarios(const GroupDescriptor& g) {
  std::vector<QuotientScenario> out;
  auto push = [&](QuotientScenario s) {
    for (const auto& o : out)
      if (o.config == s.config && o.stabilizer_census == s.stabilizer_census) return;
    out.push_back(std::move(s));
  };
  switch (g.kind) {
    case GroupDescriptor::Kind::cyclic:
      for (const auto& cfg : enumerate_cyclic_raw(g.n)) push({g, cfg.singularities(), cfg.census()});
      break;
    case GroupDescriptor::Kind::klein_four: {
      auto k = enumerate_klein_four();
      push({g, k.config, k.census});
      break;
    }
    case GroupDescriptor::Kind::dihedral:
      for (const auto& b : enumerate_dihedral(g.n).branches)
        if (b.accepted) push({g, *b.quotient_config, b.census});
      break;
    default:
      throw Error(Errc::UnsupportedGroup, "no enumeration for " + g.name());
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.config < b.config; });
  return out;
}

std::vector<TheoremBRow> theorem_b_table(std::span<const RecordedRow> recorded) {
  std::vector<TheoremBRow> rows;
  for (const auto& rec : recorded) {
    TheoremBRow row;
    row.group = rec.group;
    auto cands = candidate_scenarios(rec.group);
    auto kept = noether_filter(cands);
    row.candidates = static_cast<int>(cands.size());
    for (const auto& s : kept) row.survivors.push_back(s.config);
    if (kept.empty()) throw Error(Errc::InconsistentScenario, "no configuration survives for " + rec.group.name());

    row.unique = kept.size() == 1;
    auto pick = kept.begin();
    if (!row.unique) {
      pick = std::find_if(kept.begin(), kept.end(), [&](const auto& s) { return s.config == rec.config; });
      if (pick == kept.end()) {
        pick = kept.begin();
        row.note = "recorded configuration is not among the survivors";
      } else {
        row.note = "recorded choice among " + std::to_string(kept.size()) + " survivors; also admissible:";
        for (const auto& s : kept)
          if (s.config != rec.config) row.note += " [" + display_config(s.config) + "]";
      }
    }
    row.scenario = *pick;
    row.invariants = resolution_invariants(row.scenario);
    auto verdict = minimality_verdict(row.scenario, recorded);
    row.invariants.minimal = verdict.value;
    row.minimality_derived = verdict.derived;
    if (!rec.printed_config.empty() && parse_configuration(rec.printed_config) != row.scenario.config) {
      if (!row.note.empty()) row.note += "; ";
      row.note += "table prints " + rec.printed_config;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace fq
