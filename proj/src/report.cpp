#include <algorithm>
#include <cstdio>

#include "defspec/theorem_harness.hpp"
#include "json.hpp"

namespace defspec {
namespace {

std::string number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

nlohmann::json labeled(const std::vector<Labeled>& items) {
  auto out = nlohmann::json::array();
  for (const auto& w : items) out.push_back({{"label", w.label}, {"value", number(w.value)}});
  return out;
}

}  // namespace

VerificationReport assemble_report(std::vector<CheckRecord> checks) {
  VerificationReport r;
  std::stable_sort(checks.begin(), checks.end(),
                   [](const CheckRecord& a, const CheckRecord& b) { return a.name < b.name; });
  for (const auto& c : checks) {
    switch (c.status) {
      case CheckStatus::Pass: ++r.passed; break;
      case CheckStatus::Fail: ++r.failed; break;
      case CheckStatus::Inconclusive: ++r.inconclusive; break;
    }
  }
  if (!checks.empty()) {
    if (r.failed > 0)
      r.overall = CheckStatus::Fail;
    else if (r.passed > 0)
      r.overall = CheckStatus::Pass;
    else
      r.overall = CheckStatus::Inconclusive;
  }
  r.checks = std::move(checks);
  return r;
}

std::string report_json(const VerificationReport& r) {
  nlohmann::json j;
  auto checks = nlohmann::json::array();
  for (const auto& c : r.checks) {
    checks.push_back({{"name", c.name},
                      {"status", to_string(c.status)},
                      {"witnesses", labeled(c.witnesses)},
                      {"tolerances", labeled(c.tolerances)},
                      {"caveats", c.caveats}});
  }
  j["checks"] = std::move(checks);
  if (r.overall) {
    j["summary"] = {{"status", to_string(*r.overall)},
                    {"pass", r.passed},
                    {"fail", r.failed},
                    {"inconclusive", r.inconclusive},
                    {"total", static_cast<int>(r.checks.size())}};
  }
  return j.dump(2) + "\n";
}

}  // namespace defspec
