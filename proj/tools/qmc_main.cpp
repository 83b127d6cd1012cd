#include <CLI11.hpp>
#include <iostream>

#include "qmc/fuzz.hpp"
#include "qmc/problem.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitVerificationFailure = 1;
constexpr int kExitInputError = 2;
constexpr int kExitInternalError = 3;

void emit(const qmc::Json& report, const std::string& format) {
  if (format == "text")
    std::cout << qmc::render_text(report);
  else
    std::cout << report.dump(2) << "\n";
}

qmc::Json checks_report(const std::vector<qmc::CheckReport>& checks) {
  qmc::Json task;
  task["task"] = "verify-all";
  task["checks"] = qmc::Json::array();
  for (const auto& c : checks) task["checks"].push_back(qmc::to_json(c));
  task["pass"] = qmc::all_pass(checks);
  qmc::Json report;
  report["tasks"] = qmc::Json::array({task});
  report["pass"] = task["pass"];
  return report;
}

int input_error(const std::string& message) {
  std::cerr << "input error: " << message << "\n";
  return kExitInputError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact regularization of quasi-meromorphic integrals on the unit polydisc"};
  app.require_subcommand(1);

  std::string format = "json";
  std::string path;
  bool timing = false;

  auto* run = app.add_subcommand("run", "Run the tasks listed in a problem file");
  run->add_option("file", path, "Problem file (JSON)")->required();
  run->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "text"}));
  run->add_flag("--timing", timing, "Include per-task timing in the report");

  auto* verify = app.add_subcommand("verify", "Run every identity check supported by a problem");
  verify->add_option("file", path, "Problem file (JSON)")->required();
  verify->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "text"}));

  qmc::FuzzConfig cfg;
  auto* fuzz = app.add_subcommand("fuzz", "Randomized pathway-agreement and identity corpus");
  fuzz->add_option("--dim", cfg.dim, "Maximum dimension")->check(CLI::Range(1, 6));
  fuzz->add_option("--max-exp", cfg.max_exp, "Maximum pole exponent")->check(CLI::Range(0, 8));
  fuzz->add_option("--max-deg", cfg.max_deg, "Maximum numerator degree")->check(CLI::Range(0, 12));
  fuzz->add_option("--count", cfg.count, "Number of instances")->check(CLI::NonNegativeNumber);
  fuzz->add_option("--seed", cfg.seed, "Seed");
  fuzz->add_option("--threads", cfg.threads, "Worker threads (0 = all cores)")->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitPass : kExitInputError;
  }

  try {
    if (*run) {
      qmc::ProblemFile problem = qmc::load_problem(path);
      qmc::RunResult result = qmc::run_problem(problem, {timing});
      emit(result.report, format);
      return result.pass ? kExitPass : kExitVerificationFailure;
    }
    if (*verify) {
      qmc::ProblemFile problem = qmc::load_problem(path);
      auto checks = qmc::verify_instance(problem.data, problem.dolbeault);
      emit(checks_report(checks), format);
      return qmc::all_pass(checks) ? kExitPass : kExitVerificationFailure;
    }
    if (*fuzz) {
      qmc::FuzzReport rep = qmc::run_fuzz(cfg);
      std::cout << rep.to_json().dump(2) << "\n";
      return rep.passed == rep.count ? kExitPass : kExitVerificationFailure;
    }
  } catch (const qmc::ParseError& e) {
    return input_error(e.what());
  } catch (const qmc::ValidationError& e) {
    return input_error(e.what());
  } catch (const std::invalid_argument& e) {
    return input_error(e.what());
  } catch (const std::domain_error& e) {
    return input_error(e.what());
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternalError;
  }
  return kExitPass;
}
