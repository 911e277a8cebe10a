#pragma once

// Structured report documents. Key order is fixed, so equal inputs
// serialize to byte-identical text.

#include <string>

#include <json.hpp>

#include "arithdyn/divisors.hpp"
#include "arithdyn/integrality.hpp"
#include "arithdyn/ratmap.hpp"
#include "arithdyn/search.hpp"

namespace arithdyn::report {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1.0";
inline constexpr std::size_t kElideDigits = 80;

/// Decimal string, or "elided(digits=N,sha256=HEX)" beyond 80 digits.
std::string big(const BigInt& n);
std::string sha256_hex(const std::string& data);

Json point(const ProjPoint& P);
Json witness(const IntegralityWitness& w);
Json verdict(const OrbitVerdict& v);
Json locus(const Locus& L);
Json map_summary(const RatMap& f);
Json critical(const std::vector<CriticalDatum>& data);
Json powering(const PoweringWitness& w);
Json pairs(const PairReport& r);
Json cosets(const CosetStructure& cs);
Json powering_analysis(const PoweringAnalysis& a);
Json enlargement(const ExceptionalEnlargement& e);
Json tower(const DivisorTower& t);
Json biform(const BiForm& F);

/// Two-space indented JSON with a trailing newline.
std::string to_json_text(const Json& doc);

/// Tab-separated rendering: one "path<TAB>value" line per scalar leaf, and
/// the pair grid (if any) as an "m n verdict smallest_violating_prime" table.
std::string to_table_text(const Json& doc);

}  // namespace arithdyn::report
