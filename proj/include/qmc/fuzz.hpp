#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "qmc/problem.hpp"

namespace qmc {

struct FuzzConfig {
  int dim = 2;
  int max_exp = 3;
  int max_deg = 3;
  int count = 100;
  std::uint64_t seed = 0;
  int threads = 0;  // 0: hardware concurrency
};

/// Deterministic per-instance generator.
std::mt19937_64 instance_rng(std::uint64_t seed, std::uint64_t index);

/// Options for random_problem beyond the bounds in FuzzConfig.
struct ProblemShape {
  bool allow_metric = true;
  bool equal_supports = false;  // supp J == supp K
  std::optional<int> kappa;     // force this many two-sided variables
  std::optional<int> dimension;
};

/// Random numerator with 1..3 terms of total degree <= max_deg and small
/// Gaussian-integer coefficients.
ConjPolynomial random_numerator(std::mt19937_64& rng, int dimension, int max_deg);
/// Random real polynomial of degree <= 2 (possibly zero).
ConjPolynomial random_metric(std::mt19937_64& rng, int dimension);
/// A valid problem with minimal bump exponents.
ProblemData random_problem(std::mt19937_64& rng, const FuzzConfig& cfg, const ProblemShape& shape = {});

struct FuzzFailure {
  std::size_t index = 0;
  ProblemData original;
  ProblemData shrunk;
  std::vector<CheckReport> failed_checks;
  std::string error;  // exception text when the run threw
};

struct FuzzReport {
  int count = 0;
  int passed = 0;
  std::optional<FuzzFailure> first_failure;
  Json to_json() const;
};

FuzzReport run_fuzz(const FuzzConfig& cfg);

/// Greedily simplifies `data` while `fails` keeps returning true.
ProblemData shrink(const ProblemData& data, const std::function<bool(const ProblemData&)>& fails);

}  // namespace qmc
