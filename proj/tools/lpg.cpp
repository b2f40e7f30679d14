#include "commands.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <iostream>

using namespace lpg;
using namespace lpg::cli;

namespace {

struct Flags {
  std::vector<std::string> models;
  std::string p, semigroup, mode, format = "json", element;
  std::vector<std::string> suites;
  std::optional<std::uint64_t> seed;
  int jobs = 1;
  bool timing = false;
};

void add_common(CLI::App* sub, Flags& f, bool suites, bool element) {
  sub->add_option("--model", f.models, "model files (JSON)")->required()->expected(1, -1);
  sub->add_option("--p", f.p, "exponents, e.g. 1,3/2,2,inf");
  sub->add_option("--semigroup", f.semigroup, "bisection generators: default, singletons, all or 0,1;2");
  sub->add_option("--mode", f.mode, "scalar field")->check(CLI::IsMember({"real", "complex"}));
  sub->add_option("--seed", f.seed, "random seed");
  sub->add_option("--format", f.format, "output format")->check(CLI::IsMember({"json", "csv"}));
  sub->add_option("--jobs", f.jobs, "worker threads")->check(CLI::PositiveNumber);
  sub->add_flag("--timing", f.timing, "report the elapsed time");
  if (suites)
    sub->add_option("--suite", f.suites, "axioms, twist, rep, tight, ck, norms, crossed or all")->expected(1, -1);
  if (element) sub->add_option("--element", f.element, "ones, delta:A, random:K, model or A:v,B:v");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite twisted groupoids, their L^p operator algebras and graph algebras"};
  app.require_subcommand(1);
  Flags f;
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"verify", "run the check suites on each model"},
      {"norm", "tabulate operator norm brackets and the norm hierarchy"},
      {"rep", "covariant representations, integration and disintegration"},
      {"tight", "tight spectra and tight representations"},
      {"graph", "graph models: relations, spatial Q-families, boundary"},
      {"crossprod", "partial actions: the crossed product embedding"}};
  for (const auto& [name, help] : commands)
    add_common(app.add_subcommand(name, help), f, name == "verify", name == "norm");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  Options o;
  try {
    o.command = app.get_subcommands().front()->get_name();
    if (!f.suites.empty()) o.suites = f.suites;
    if (!f.p.empty()) o.p = parse_exponents(f.p);
    o.semigroup = f.semigroup;
    if (!f.mode.empty()) o.mode = f.mode == "real" ? FieldMode::Real : FieldMode::Complex;
    o.seed = f.seed;
    o.jobs = f.jobs;
    o.element = f.element;

    std::vector<ModelFile> models;
    for (const auto& path : f.models) models.push_back(parse_model(path));

    const auto start = std::chrono::steady_clock::now();
    Report r = run_command(models, o);
    if (f.timing) r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    if (f.format == "json") {
      std::cout << r.to_json().dump(2) << '\n';
    } else {
      std::cout << r.verdicts_csv();
      if (!r.norms.empty()) std::cout << '\n' << r.norms_csv();
      if (r.seconds) std::cout << "\nseconds," << format_double(*r.seconds) << '\n';
    }
    if (r.failed()) {
      std::cerr << "FAIL " << r.first_failure() << '\n';
      return 1;
    }
    return 0;
  } catch (const SchemaError& e) {
    std::cerr << "schema error: " << e.what() << '\n';
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
  }
  return 2;
}
