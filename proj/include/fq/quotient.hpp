#pragma once

#include "fq/exactnum.hpp"
#include "fq/quatalg.hpp"
#include "fq/singres.hpp"

#include <map>
#include <span>
#include <string>
#include <vector>

namespace fq {

enum class Minimality { yes, no, undetermined };
// general_type: kappa = 2; nonnegative: kappa >= 1
enum class Kodaira { general_type, at_least_one, undetermined };

std::string_view minimality_name(Minimality m);  // "yes" / "no" / "-"
std::string_view kodaira_name(Kodaira k);        // "2" / ">=1" / "-"
Minimality parse_minimality(std::string_view text);
Kodaira parse_kodaira(std::string_view text);

struct QuotientScenario {
  GroupDescriptor group;
  SingularConfiguration config;
  std::map<int, int> stabilizer_census;  // n -> number of points of S with stabilizer of order n
};

struct SurfaceInvariants {
  Rational k2 = 0;
  Rational c2 = 0;
  int q = 0;
  int pg = 0;
  Rational chi = 0;
  Minimality minimal = Minimality::undetermined;
  Kodaira kodaira = Kodaira::undetermined;
};

// e(S/G) for e(S) = 4. May be non-integral; callers reject on that.
Rational euler_quotient(int group_order, const std::map<int, int>& census);
// Same number from the orbit decomposition: free part / |G| plus one per singular point.
Rational euler_by_orbits(const QuotientScenario& s);
// Census and singular points describe the same orbits.
bool census_consistent(const QuotientScenario& s);

// K^2, c_2 and chi without the chi = 1 check.
SurfaceInvariants raw_invariants(const QuotientScenario& s);
// Throws InconsistentScenario unless the census matches and chi = 1.
SurfaceInvariants resolution_invariants(const QuotientScenario& s);
std::vector<QuotientScenario> noether_filter(const std::vector<QuotientScenario>& candidates);
SurfaceInvariants kodaira_classify(SurfaceInvariants inv);

// A verdict stated for a group and configuration but not derived here.
struct RecordedRow {
  GroupDescriptor group;
  SingularConfiguration config;
  Rational k2 = 0;
  Rational c2 = 0;
  Minimality minimal = Minimality::undetermined;
  Kodaira kodaira = Kodaira::undetermined;
  std::string printed_config;  // as it appears in the source table
};

struct MinimalityVerdict {
  Minimality value = Minimality::undetermined;
  bool derived = false;  // true when every exceptional curve is a (-2)-curve
};
MinimalityVerdict minimality_verdict(const QuotientScenario& s, std::span<const RecordedRow> recorded);

int miyaoka_nodal_bound(const Rational& k2);
int b2_from_invariants(const Rational& k2);

// Table convention: A_{n-1} for q = n - 1, A_{n,q} otherwise.
std::string display_name(const SingularityType& s);
std::string display_config(const SingularConfiguration& c);

// All scenarios the enumeration admits for a group, before the Noether filter.
std::vector<QuotientScenario> candidate_scenarios(const GroupDescriptor& g);

struct TheoremBRow {
  GroupDescriptor group;
  QuotientScenario scenario;
  SurfaceInvariants invariants;
  bool minimality_derived = false;
  int candidates = 0;  // distinct configurations before the Noether filter
  std::vector<SingularConfiguration> survivors;
  // true when exactly one configuration survives; otherwise the row is the recorded survivor
  bool unique = false;
  std::string note;
};

// Runs enumeration, resolution, filtering and classification for each recorded group.
std::vector<TheoremBRow> theorem_b_table(std::span<const RecordedRow> recorded);

}  // namespace fq
