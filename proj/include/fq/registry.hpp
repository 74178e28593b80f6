#pragma once

#include "fq/exactnum.hpp"
#include "fq/quatalg.hpp"
#include "fq/quotient.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fq {

struct PrimeRef {
  long long p = 0;
  std::optional<std::string> generator;  // picks one of the two primes over a split p
};

struct LevelRef {
  LevelFactor::Kind kind = LevelFactor::Kind::principal;
  std::optional<PrimeRef> prime;
  int image_order = 0;
  int degree = 0;
};

// How Aut is put together from the computed pieces.
enum class Assembly { elementary, dihedral, extension };

struct ExampleRecord {
  std::string id;
  std::string section;
  std::string subgroup;  // display name of the lattice
  long long field_d = 0;
  std::vector<PrimeRef> ramified;
  std::vector<std::string> split;  // expected kind per ramified prime
  std::vector<LevelRef> level;
  Rational shimizu_c2 = 0;
  std::vector<int> torsion_orders;
  std::vector<long long> quotient_orders;  // Gamma^1 / Gamma^1(P) per principal level prime
  Rational index = 1;
  Rational c2 = 4;
  bool torsion_free = true;
  Assembly assembly = Assembly::elementary;
  bool inverting_involution = false;  // recorded, not derived
  GroupDescriptor aut;
};

// Statements kept as data: exclusions and unverified scenarios.
struct RegistryFact {
  std::string id;
  std::string section;
  std::string status;  // "excluded" or "unverified"
  std::string statement;
  std::string group_name;
  int group_order = 0;
  std::optional<SingularConfiguration> singularities;
  std::map<int, int> census;
  std::optional<Rational> k2;
  std::optional<Rational> c2;
};

struct Registry {
  int schema_version = 1;
  std::string conjecture;
  std::string conjecture_status;
  std::vector<ExampleRecord> examples;
  std::vector<RecordedRow> theorem_b;
  std::vector<RegistryFact> facts;

  const ExampleRecord& example(std::string_view id) const;
};

Registry parse_registry(std::string_view yaml_text);
Registry load_registry_file(const std::string& path);
std::string_view embedded_registry_text();
const Registry& default_registry();

GroupDescriptor parse_group(std::string_view text);

struct FieldCheck {
  std::string field;
  std::string expected;
  std::string actual;
  bool pass = false;
};

struct ReplayReport {
  std::string id;
  std::vector<FieldCheck> checks;
  // torsion-freeness or group structure taken partly from recorded facts
  std::vector<std::string> recorded;
  GroupDescriptor aut;
  bool pass() const;
};

ReplayReport replay(const ExampleRecord& record);
// Arithmetic consistency of a fact's stated invariants (existence is not checked).
ReplayReport check_fact(const RegistryFact& fact);

// Distinct Aut values of the records, in registry order.
std::vector<GroupDescriptor> automorphism_groups(const Registry& reg);

}  // namespace fq
