// The subcommands: verify, norm, rep, tight, graph and crossprod.

#ifndef LPG_TOOLS_COMMANDS_HPP
#define LPG_TOOLS_COMMANDS_HPP

#include "model.hpp"
#include "report.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace lpg::cli {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string command = "verify";
  std::vector<std::string> suites = {"all"};
  std::vector<Exponent> p;   // empty: {1, 2, inf}, or {1, 3/2, 2, 3, inf} for norm
  std::string semigroup;     // empty: the default generators of the model kind
  std::optional<FieldMode> mode;
  std::optional<std::uint64_t> seed;
  int jobs = 1;
  std::string element;       // norm: ones, delta:A, random:K, model or "A:v,B:v"
};

inline constexpr std::uint64_t kDefaultSeed = 7;

const std::vector<std::string>& suite_names();
std::vector<std::string> applicable_suites(ModelKind k);
std::vector<Exponent> parse_exponents(const std::string& list);

Report run_verify(const std::vector<ModelFile>& models, const Options& o);
Report run_norm_report(const std::vector<ModelFile>& models, const Options& o);
/// Dispatches on o.command; rep, tight, graph and crossprod run fixed suites.
Report run_command(const std::vector<ModelFile>& models, const Options& o);

}  // namespace lpg::cli

#endif  // LPG_TOOLS_COMMANDS_HPP
