#pragma once

#include "fq/covers.hpp"
#include "fq/exactnum.hpp"
#include "fq/quotient.hpp"
#include "fq/registry.hpp"

#include "json.hpp"

#include <string>
#include <vector>

namespace fq {

using Json = nlohmann::ordered_json;

inline constexpr int kJsonSchemaVersion = 1;

// {"num": n, "den": d}; integers stay JSON numbers while they fit in 64 bits.
Json rational_json(const Rational& r);
bool is_rational_json(const Json& j);
// "n/d", or "n" for integers
std::string rational_text(const Json& j);

// Block-style text for any document: one "key: value" per line, lists as
// "- " items, rationals as n/d. The output is valid YAML.
std::string render_text(const Json& doc);

Json invariants_json(const SurfaceInvariants& inv);
Json cover_json(const CoverInvariants& inv);
Json config_json(const SingularConfiguration& c);

// Reproduction targets. The text forms are what the golden files hold.
std::string theorem_b_text(const std::vector<TheoremBRow>& rows);
Json theorem_b_json(const std::vector<TheoremBRow>& rows);

std::string section4_text(const std::vector<ReplayReport>& reports, const std::vector<ReplayReport>& facts);
Json section4_json(const std::vector<ReplayReport>& reports, const std::vector<ReplayReport>& facts);

std::string covers_text(const std::vector<Reconstruction>& recs);
Json covers_json(const std::vector<Reconstruction>& recs);

}  // namespace fq
