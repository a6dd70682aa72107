#include "mf/report.hpp"

#include <chrono>
#include <cmath>
#include <ctime>

namespace mf::report {

Json to_json(const Rational& r) { return r.str(); }

Json to_json(const Poly& p) {
  Json out = Json::array();
  for (const auto& c : p.coeffs()) out.push_back(c.str());
  return out;
}

Json to_json(const ExactValue& v) {
  return std::visit([](const auto& x) { return to_json(x); }, v);
}

Json to_json(const IdentityReport& r) {
  Json params = Json::object();
  for (const auto& [key, value] : r.params) {
    std::visit([&](const auto& x) { params[key] = x; }, value);
  }
  return Json{
      {"identity", r.identity_id},
      {"params", params},
      {"lhs", to_json(r.lhs)},
      {"rhs", to_json(r.rhs)},
      {"verdict", verdict_str(r.verdict)},
      {"elapsed_ns", r.elapsed.count()},
  };
}

Json to_json(const mc::McResult& r) {
  Json z = std::isfinite(r.z_score) ? Json(r.z_score) : Json(r.z_score > 0 ? "inf" : "-inf");
  return Json{
      {"expression", r.expression},
      {"n", r.n},
      {"samples", r.samples},
      {"seed", r.seed},
      {"estimate", r.estimate},
      {"std_error", r.std_error},
      {"exact", to_json(r.exact)},
      {"z_score", z},
      {"verdict", r.within_tolerance() ? "PASS" : "FAIL"},
  };
}

Json document(const std::string& command, Json results, const std::string& overall, Json metadata) {
  Json doc{
      {"tool", kToolName},
      {"version", kToolVersion},
      {"command", command},
      {"timestamp", utc_timestamp()},
      {"results", std::move(results)},
      {"overall", overall},
  };
  if (!metadata.is_null()) doc["metadata"] = std::move(metadata);
  return doc;
}

std::string dump(const Json& doc) { return doc.dump(2) + "\n"; }

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string csv_cell(const std::string& text) {
  if (text.find_first_of(" ,\"") == std::string::npos) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace mf::report
