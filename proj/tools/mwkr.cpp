#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mwkr/error.hpp"
#include "mwkr/parallel.hpp"
#include "mwkr/report.hpp"
#include "mwkr/runner.hpp"
#include "mwkr/scenario.hpp"

namespace fs = std::filesystem;

namespace {

struct Flags {
  std::string out;
  int threads = 0;
  std::optional<std::uint64_t> seed;
  int count = -1;
  bool timings = false;
  std::string scenario;
  std::vector<double> epsilons;
};

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--out", f.out, "Write the report here; curves go to <stem>.<curve>.csv beside it");
  cmd->add_option("--threads", f.threads, "Worker thread cap (0 keeps the OpenMP default)")->check(CLI::NonNegativeNumber);
  cmd->add_option("--seed", f.seed, "Override the scenario seed");
  cmd->add_flag("--timings", f.timings, "Include wall-clock timings in the report");
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) mwkr::fail(mwkr::ErrorCode::InvalidArgument, "cannot write '" + path.string() + "'");
  out << text;
}

int emit(const mwkr::RunOutcome& outcome, const Flags& f) {
  const std::string text = outcome.report.dump(2) + "\n";
  if (f.out.empty()) {
    std::cout << text;
  } else {
    const fs::path out(f.out);
    if (out.has_parent_path()) fs::create_directories(out.parent_path());
    write_text(out, text);
    for (const auto& [name, curve] : outcome.curves) {
      fs::path csv = out;
      csv.replace_filename(out.stem().string() + "." + name + ".csv");
      write_text(csv, mwkr::curve_csv(curve));
    }
    std::cout << outcome.report["task"].get<std::string>() << ": " << mwkr::to_string(outcome.status) << " -> "
              << f.out << "\n";
  }
  if (outcome.status == mwkr::Status::error)
    std::cerr << "error: " << outcome.report["error"]["message"].get<std::string>() << "\n";
  return mwkr::exit_code(outcome.status);
}

int execute(mwkr::Scenario scenario, const Flags& f) {
  if (f.seed) scenario.seed = *f.seed;
  if (!f.epsilons.empty()) scenario.params.epsilons = f.epsilons;
  if (f.threads > 0) mwkr::set_thread_count(f.threads);
  mwkr::RunOptions options;
  options.timings = f.timings;
  options.count = f.count;
  return emit(mwkr::run_scenario(scenario, options), f);
}

mwkr::Scenario shorthand(const std::string& task, const Flags& f) {
  if (f.scenario.empty()) return mwkr::default_scenario(task);
  mwkr::Scenario s = mwkr::load_scenario(f.scenario);
  s.task = task;
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Matrix-weighted function space toolkit: A_p constants, John ellipsoids, norms, moduli and epsilon-nets"};
  app.require_subcommand(1);
  Flags flags;
  std::string scenario_path;

  auto* run = app.add_subcommand("run", "Run the task named in a scenario file");
  run->add_option("scenario", scenario_path, "Scenario YAML file")->required()->check(CLI::ExistingFile);
  run->add_option("--count", flags.count, "Instance count override for verify-lemmas")->check(CLI::NonNegativeNumber);
  add_common(run, flags);

  auto* verify = app.add_subcommand("verify-lemmas", "Run the randomized property suites");
  verify->add_option("--count", flags.count, "Instance count for every suite")->check(CLI::NonNegativeNumber);
  verify->add_option("--scenario", flags.scenario, "Take the seed and weight from this scenario")
      ->check(CLI::ExistingFile);
  add_common(verify, flags);

  std::vector<std::pair<std::string, CLI::App*>> shorthands;
  const std::vector<std::pair<std::string, std::string>> tasks{
      {"ap-constant", "A_p constant of the scenario weight over its cube family"},
      {"john", "John ellipsoid of a norm with the sandwich check"},
      {"norm", "Norm of every family member"},
      {"moduli", "Boundedness, tail and equicontinuity moduli"},
      {"net", "Constructive epsilon-nets with certificates"},
      {"certify", "Brute-force certification of a center set"},
      {"necessity", "Necessity check over a list of epsilons"}};
  for (const auto& [name, help] : tasks) {
    auto* cmd = app.add_subcommand(name, help + " (built-in scenario unless --scenario is given)");
    cmd->add_option("--scenario", flags.scenario, "Scenario file supplying grid, weight and family")
        ->check(CLI::ExistingFile);
    if (name == "net" || name == "certify" || name == "necessity")
      cmd->add_option("--epsilon", flags.epsilons, "Epsilon values (repeatable)");
    add_common(cmd, flags);
    shorthands.emplace_back(name, cmd);
  }

  auto* schema = app.add_subcommand("schema", "Print the report JSON Schema");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*schema) {
      std::cout << mwkr::report_schema_text();
      return 0;
    }
    if (*run) return execute(mwkr::load_scenario(scenario_path), flags);
    if (*verify) {
      mwkr::Scenario s = flags.scenario.empty() ? mwkr::default_scenario("verify-lemmas")
                                                : mwkr::load_scenario(flags.scenario);
      s.task = "verify-lemmas";
      return execute(std::move(s), flags);
    }
    for (const auto& [name, cmd] : shorthands)
      if (*cmd) return execute(shorthand(name, flags), flags);
  } catch (const mwkr::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
