#include "qcorr/report_io.hpp"

#include <iomanip>
#include <sstream>

namespace qcorr::io {

namespace {

nlohmann::json trial_json(const Trial& t) {
  nlohmann::json j;
  j["input"] = t.input;
  j["seed"] = t.seed;
  nlohmann::json values = nlohmann::json::object();
  for (const auto& [k, v] : t.values) values[k] = v;
  j["values"] = values;
  j["slack"] = t.slack;
  j["pass"] = t.pass;
  j["asserted"] = t.asserted;
  if (!t.note.empty()) j["note"] = t.note;
  nlohmann::json bounds = nlohmann::json::array();
  for (const auto& b : t.bounds)
    bounds.push_back({{"quantity", b.quantity}, {"subject", b.subject}, {"direction", to_string(b.direction)},
                      {"value", b.value}});
  j["bounds"] = bounds;
  if (!t.witness.is_null()) j["witness"] = t.witness;
  return j;
}

void table_rows(const VerificationReport& r, std::ostringstream& out) {
  for (const auto& c : r.children) table_rows(c, out);
  if (r.trials.empty() && !r.children.empty()) return;
  int failed = 0;
  for (const auto& t : r.trials) {
    if (t.asserted && !t.pass) ++failed;
    out << std::left << std::setw(16) << r.suite << std::setw(34) << t.input.substr(0, 33) << std::right
        << std::setw(8) << t.seed << std::setw(14) << std::scientific << std::setprecision(3) << t.slack
        << std::setw(8) << (!t.asserted ? "info" : t.pass ? "PASS" : "FAIL") << '\n';
  }
  out << std::left << std::setw(16) << r.suite << (r.pass ? "PASS" : "FAIL") << "  " << r.trials.size()
      << " trials, " << failed << " failed";
  if (!r.soundness_breaches.empty()) out << ", " << r.soundness_breaches.size() << " soundness breaches";
  out << std::fixed << std::setprecision(0) << ", " << r.wall_ms << " ms\n";
}

}  // namespace

nlohmann::json to_json(const VerificationReport& report, bool with_timing) {
  nlohmann::json j;
  j["suite"] = report.suite;
  nlohmann::json trials = nlohmann::json::array();
  for (const auto& t : report.trials) trials.push_back(trial_json(t));
  j["trials"] = trials;
  nlohmann::json tol = nlohmann::json::object();
  for (const auto& [k, v] : report.tolerances) tol[k] = v;
  j["tolerances"] = tol;
  j["pass"] = report.pass;
  j["seeds"] = report.seeds;
  if (with_timing) j["wall_ms"] = report.wall_ms;
  j["soundness_breaches"] = report.soundness_breaches;
  if (!report.children.empty()) {
    nlohmann::json children = nlohmann::json::array();
    for (const auto& c : report.children) children.push_back(to_json(c, with_timing));
    j["children"] = children;
  }
  return j;
}

std::string summary_table(const VerificationReport& report) {
  std::ostringstream out;
  out << std::left << std::setw(16) << "suite" << std::setw(34) << "input" << std::right << std::setw(8) << "seed"
      << std::setw(14) << "slack" << std::setw(8) << "result" << '\n';
  table_rows(report, out);
  for (const auto& b : report.soundness_breaches) out << "soundness breach: " << b << '\n';
  out << "overall: " << (report.pass ? "PASS" : "FAIL") << '\n';
  return out.str();
}

}  // namespace qcorr::io
