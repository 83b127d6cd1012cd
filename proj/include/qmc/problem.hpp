#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qmc/pole_model.hpp"
#include "qmc/residues.hpp"
#include "qmc/serialize.hpp"

namespace qmc {

/// alpha_num / z_j^m with a test form xi, for the Dolbeault residue task.
struct DolbeaultData {
  int variable = 0;
  int pole_order = 1;
  ConjForm alpha;
  ConjForm xi;
};

struct ProblemFile {
  ProblemData data;
  std::vector<std::string> tasks;
  int truncation = -1;
  std::optional<DolbeaultData> dolbeault;
};

extern const std::vector<std::string> kTaskNames;

ProblemFile problem_from_json(const Json& j);
Json to_json(const ProblemFile& p);
/// Reads and parses a file; JSON syntax errors report line and column.
ProblemFile load_problem(const std::string& path);

/// Every identity the instance supports, as exact check reports.
std::vector<CheckReport> verify_instance(const ProblemData& data, const std::optional<DolbeaultData>& dolbeault = {});
bool all_pass(const std::vector<CheckReport>& reports);

struct RunOptions {
  bool timing = false;
};

struct RunResult {
  Json report;
  bool pass = true;
};

/// Executes the tasks in order.  Throws ValidationError / ParseError /
/// std::invalid_argument for unusable input.
RunResult run_problem(const ProblemFile& problem, const RunOptions& options = {});

std::string render_text(const Json& report);

}  // namespace qmc
