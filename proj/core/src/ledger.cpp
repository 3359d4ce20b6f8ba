#include "wfde/ledger.hpp"

#include <json.hpp>

#include "wfde/check_report.hpp"
#include "wfde/errors.hpp"

namespace wfde {

CheckReport CheckReport::make(std::string name, double lhs, double rhs,
                              double measured_constant, std::string context,
                              double tolerance) {
  CheckReport r;
  r.name = std::move(name);
  r.lhs = lhs;
  r.rhs = rhs;
  r.measured_constant = measured_constant;
  r.tolerance = tolerance;
  r.context = std::move(context);
  r.pass = lhs <= rhs * (1.0 + tolerance) + 1e-300;
  return r;
}

std::uint64_t context_hash(const std::string& context) {
  // FNV-1a
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : context) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

void ConstantLedger::set(const std::string& name, double value,
                         const std::string& provenance) {
  entries_[name] = Entry{value, provenance};
}

double ConstantLedger::get(const std::string& name) const {
  const auto it = entries_.find(name);
  if (it == entries_.end())
    throw MissingConstant("constant ledger: missing entry '" + name + "'");
  return it->second.value;
}

double ConstantLedger::get_or(const std::string& name, double fallback) const {
  const auto it = entries_.find(name);
  return it == entries_.end() ? fallback : it->second.value;
}

bool ConstantLedger::has(const std::string& name) const {
  return entries_.count(name) > 0;
}

std::string ConstantLedger::to_json() const {
  nlohmann::ordered_json j;
  j["schema"] = "wfde-ledger-v1";
  j["probe_family_version"] = version_;
  nlohmann::ordered_json entries = nlohmann::ordered_json::object();
  for (const auto& [name, e] : entries_) {
    entries[name] = {{"value", e.value}, {"provenance", e.provenance}};
  }
  j["constants"] = entries;
  return j.dump(2) + "\n";
}

ConstantLedger ConstantLedger::from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  ConstantLedger ledger;
  ledger.set_version(j.value("probe_family_version", 0ull));
  for (const auto& [name, e] : j.at("constants").items())
    ledger.set(name, e.at("value").get<double>(), e.value("provenance", ""));
  return ledger;
}

} // namespace wfde
