// Verdict entries, norm rows, JSON/CSV emission and the worker pool.

#ifndef LPG_TOOLS_REPORT_HPP
#define LPG_TOOLS_REPORT_HPP

#include <json.hpp>

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace lpg::cli {

struct Entry {
  std::string model, suite, check;
  std::string verdict;  // PASS, FAIL, SKIP, INCONCLUSIVE, APPROX-PASS, APPROX-FAIL
  std::string witness;
  nlohmann::json detail = nlohmann::json::object();
};

struct NormRow {
  std::string model, element, p;
  double lower = 0, upper = 0, interpolated = 0;
  std::string inorm, projective;
  std::string status;  // ok, HIERARCHY-FAIL, INFEASIBLE, n/a
};

struct Report {
  nlohmann::json command = nlohmann::json::object();
  std::vector<Entry> entries;
  std::vector<NormRow> norms;
  std::optional<double> seconds;

  void add(Entry e) { entries.push_back(std::move(e)); }
  void append(Report&& other);
  bool failed() const;
  /// First FAIL entry as "model: suite/check: witness", or empty.
  std::string first_failure() const;
  nlohmann::json to_json() const;
  std::string verdicts_csv() const;
  std::string norms_csv() const;
};

bool is_failure(const std::string& verdict);

/// %.12g, with "inf" for infinity.
std::string format_double(double x);

/// Runs the tasks over `jobs` threads and concatenates the results in task order.
Report run_pool(const std::vector<std::function<Report()>>& tasks, int jobs);

}  // namespace lpg::cli

#endif  // LPG_TOOLS_REPORT_HPP
