#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "mf/identities.hpp"
#include "mf/monte_carlo.hpp"
#include "mf/poly.hpp"
#include "mf/rational.hpp"

namespace mf::report {

using Json = nlohmann::json;

inline constexpr const char* kToolName = "mf";
inline constexpr const char* kToolVersion = "0.1.0";

/// "p/q" string; exact values are never written as floats.
Json to_json(const Rational& r);
/// Coefficient strings, lowest power first.
Json to_json(const Poly& p);
Json to_json(const ExactValue& v);
Json to_json(const IdentityReport& r);
Json to_json(const mc::McResult& r);

/// Envelope shared by every command:
///   {"command", "overall", "results", "timestamp", "tool", "version"[, "metadata"]}
/// `overall` is "PASS", "FAIL" or "N/A".
Json document(const std::string& command, Json results, const std::string& overall, Json metadata = nullptr);

/// Canonical text form: sorted keys, two-space indent, trailing newline.
/// Parsing this output and dumping it again yields identical bytes.
std::string dump(const Json& doc);

/// Current UTC time as YYYY-MM-DDTHH:MM:SSZ.
std::string utc_timestamp();

/// CSV cell: quoted when it contains spaces, commas or quotes.
std::string csv_cell(const std::string& text);

}  // namespace mf::report
