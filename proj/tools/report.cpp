#include "report.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <thread>

namespace lpg::cli {

bool is_failure(const std::string& verdict) { return verdict == "FAIL" || verdict == "APPROX-FAIL"; }

void Report::append(Report&& other) {
  for (auto& e : other.entries) entries.push_back(std::move(e));
  for (auto& r : other.norms) norms.push_back(std::move(r));
}

bool Report::failed() const {
  return std::any_of(entries.begin(), entries.end(), [](const Entry& e) { return is_failure(e.verdict); });
}

std::string Report::first_failure() const {
  for (const auto& e : entries)
    if (is_failure(e.verdict)) return e.model + ": " + e.suite + "/" + e.check + ": " + e.witness;
  return {};
}

std::string format_double(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

nlohmann::json Report::to_json() const {
  nlohmann::json j;
  j["command"] = command;
  j["status"] = failed() ? "FAIL" : "PASS";
  auto& checks = j["checks"] = nlohmann::json::array();
  for (const auto& e : entries) {
    nlohmann::json c = {{"model", e.model}, {"suite", e.suite}, {"check", e.check}, {"verdict", e.verdict}};
    if (!e.witness.empty()) c["witness"] = e.witness;
    if (!e.detail.empty()) c["detail"] = e.detail;
    checks.push_back(std::move(c));
  }
  if (!norms.empty()) {
    auto& rows = j["norms"] = nlohmann::json::array();
    for (const auto& r : norms)
      rows.push_back({{"model", r.model},
                      {"element", r.element},
                      {"p", r.p},
                      {"lower", format_double(r.lower)},
                      {"upper", format_double(r.upper)},
                      {"dstar_rstar", format_double(r.interpolated)},
                      {"inorm", r.inorm},
                      {"projective", r.projective},
                      {"status", r.status}});
  }
  if (seconds) j["seconds"] = *seconds;
  return j;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string Report::verdicts_csv() const {
  std::ostringstream os;
  os << "model,suite,check,verdict,witness\n";
  for (const auto& e : entries)
    os << csv_field(e.model) << ',' << csv_field(e.suite) << ',' << csv_field(e.check) << ',' << e.verdict << ','
       << csv_field(e.witness) << '\n';
  return os.str();
}

std::string Report::norms_csv() const {
  std::ostringstream os;
  os << "model,element,p,lower,upper,dstar_rstar,inorm,projective,status\n";
  for (const auto& r : norms)
    os << csv_field(r.model) << ',' << csv_field(r.element) << ',' << r.p << ',' << format_double(r.lower) << ','
       << format_double(r.upper) << ',' << format_double(r.interpolated) << ',' << r.inorm << ',' << r.projective
       << ',' << r.status << '\n';
  return os.str();
}

Report run_pool(const std::vector<std::function<Report()>>& tasks, int jobs) {
  std::vector<Report> results(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < tasks.size();) results[i] = tasks[i]();
  };
  const std::size_t threads = std::min<std::size_t>(std::max(jobs, 1), tasks.size());
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t k = 0; k < threads; ++k) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  Report out;
  for (auto& r : results) out.append(std::move(r));
  return out;
}

}  // namespace lpg::cli
