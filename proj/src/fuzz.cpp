#include "qmc/fuzz.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <numeric>
#include <thread>

namespace qmc {

namespace {

int uniform(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

bool coin(std::mt19937_64& rng) { return uniform(rng, 0, 1) == 1; }

Gaussian small_gaussian(std::mt19937_64& rng, bool real_only = false) {
  for (;;) {
    Gaussian g(uniform(rng, -3, 3), real_only ? 0 : uniform(rng, -3, 3));
    if (!g.is_zero()) return g;
  }
}

/// Splits `total` at random over `slots` non-negative parts.
std::vector<int> random_split(std::mt19937_64& rng, int total, int slots) {
  std::vector<int> parts(static_cast<size_t>(slots));
  for (int k = 0; k < total; ++k) ++parts[static_cast<size_t>(uniform(rng, 0, slots - 1))];
  return parts;
}

void fix_section_and_bump(ProblemData& p) {
  for (int j = 0; j < p.dimension; ++j) {
    auto u = static_cast<size_t>(j);
    bool polar = p.pole.J[u] + p.pole.K[u] > 0;
    if (!polar) p.section.I[u] = 0;
    if (polar && p.section.I[u] == 0) p.section.I[u] = 1;
    p.bump_exponents[u] = std::max(p.bump_exponents[u], p.pole.J[u] + p.pole.K[u] + 1);
  }
}

bool fails(const ProblemData& p) {
  try {
    return !all_pass(verify_instance(p));
  } catch (const std::exception&) {
    return true;
  }
}

}  // namespace

std::mt19937_64 instance_rng(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

ConjPolynomial random_numerator(std::mt19937_64& rng, int dimension, int max_deg) {
  ConjPolynomial p(dimension);
  int terms = uniform(rng, 1, 3);
  for (int t = 0; t < terms; ++t) {
    auto parts = random_split(rng, uniform(rng, 0, max_deg), 2 * dimension);
    MultiIndex a(parts.begin(), parts.begin() + dimension);
    MultiIndex b(parts.begin() + dimension, parts.end());
    p.add_term({a, b}, small_gaussian(rng));
  }
  if (p.is_zero()) p = ConjPolynomial::constant(dimension, 1);
  return p;
}

ConjPolynomial random_metric(std::mt19937_64& rng, int dimension) {
  ConjPolynomial phi(dimension);
  int terms = uniform(rng, 1, 2);
  for (int t = 0; t < terms; ++t) {
    auto parts = random_split(rng, uniform(rng, 1, 2), 2 * dimension);
    MultiIndex a(parts.begin(), parts.begin() + dimension);
    MultiIndex b(parts.begin() + dimension, parts.end());
    Gaussian c = small_gaussian(rng, a == b);
    phi.add_term({a, b}, c);
    phi.add_term({b, a}, c.conj());
  }
  return phi;
}

ProblemData random_problem(std::mt19937_64& rng, const FuzzConfig& cfg, const ProblemShape& shape) {
  int d = shape.dimension ? *shape.dimension : uniform(rng, 1, std::max(1, cfg.dim));
  int e = std::max(0, cfg.max_exp);
  ProblemData p;
  p.dimension = d;
  p.pole = PoleData::none(d);
  p.section.I.assign(static_cast<size_t>(d), 0);
  p.bump_exponents.assign(static_cast<size_t>(d), 0);

  std::vector<int> order(static_cast<size_t>(d));
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  int forced = shape.kappa ? std::min(*shape.kappa, d) : -1;
  for (int idx = 0; idx < d; ++idx) {
    auto u = static_cast<size_t>(order[static_cast<size_t>(idx)]);
    if (e == 0) break;
    if (forced >= 0 && idx < forced) {
      p.pole.J[u] = uniform(rng, 1, e);
      p.pole.K[u] = uniform(rng, 1, e);
      continue;
    }
    if (shape.equal_supports) {
      if (forced < 0 && coin(rng)) {
        p.pole.J[u] = uniform(rng, 1, e);
        p.pole.K[u] = uniform(rng, 1, e);
      }
      continue;
    }
    if (forced >= 0) {
      // remaining variables stay one-sided or smooth
      int kind = uniform(rng, 0, 2);
      if (kind == 1) p.pole.J[u] = uniform(rng, 1, e);
      if (kind == 2) p.pole.K[u] = uniform(rng, 1, e);
      continue;
    }
    p.pole.J[u] = coin(rng) ? uniform(rng, 1, e) : 0;
    p.pole.K[u] = coin(rng) ? uniform(rng, 1, e) : 0;
  }
  for (int j = 0; j < d; ++j) {
    auto u = static_cast<size_t>(j);
    if (p.pole.J[u] + p.pole.K[u] > 0) p.section.I[u] = uniform(rng, 1, std::max(1, e));
  }
  fix_section_and_bump(p);
  p.numerator = random_numerator(rng, d, std::max(0, cfg.max_deg));
  p.metric = (shape.allow_metric && coin(rng)) ? random_metric(rng, d) : ConjPolynomial(d);
  return p;
}

ProblemData shrink(const ProblemData& data, const std::function<bool(const ProblemData&)>& still_fails) {
  ProblemData best = data;
  bool progress = true;
  while (progress) {
    progress = false;
    std::vector<ProblemData> candidates;
    if (!best.metric.is_zero()) {
      ProblemData c = best;
      c.metric = ConjPolynomial(c.dimension);
      candidates.push_back(std::move(c));
    }
    if (best.numerator.size() > 1) {
      for (const auto& [m, coef] : best.numerator.terms()) {
        ProblemData c = best;
        c.numerator.add_term(m, -coef);
        candidates.push_back(std::move(c));
      }
    }
    for (int j = 0; j < best.dimension; ++j) {
      auto u = static_cast<size_t>(j);
      for (int which = 0; which < 2; ++which) {
        MultiIndex& v = which == 0 ? best.pole.J : best.pole.K;
        if (v[u] == 0) continue;
        ProblemData c = best;
        (which == 0 ? c.pole.J : c.pole.K)[u] -= 1;
        c.bump_exponents[u] = c.pole.J[u] + c.pole.K[u] + 1;
        fix_section_and_bump(c);
        candidates.push_back(std::move(c));
      }
      if (best.section.I[u] > 1) {
        ProblemData c = best;
        c.section.I[u] -= 1;
        candidates.push_back(std::move(c));
      }
      if (best.bump_exponents[u] > best.pole.J[u] + best.pole.K[u] + 1) {
        ProblemData c = best;
        c.bump_exponents[u] -= 1;
        candidates.push_back(std::move(c));
      }
    }
    for (const auto& [m, coef] : best.numerator.terms()) {
      for (size_t j = 0; j < m.z.size(); ++j) {
        for (int which = 0; which < 2; ++which) {
          Monomial lower = m;
          int& e = which == 0 ? lower.z[j] : lower.zbar[j];
          if (e == 0) continue;
          --e;
          ProblemData c = best;
          c.numerator.add_term(m, -coef);
          c.numerator.add_term(lower, coef);
          if (c.numerator.is_zero()) continue;
          candidates.push_back(std::move(c));
        }
      }
    }
    for (auto& c : candidates) {
      if (still_fails(c)) {
        best = std::move(c);
        progress = true;
        break;
      }
    }
  }
  return best;
}

FuzzReport run_fuzz(const FuzzConfig& cfg) {
  if (cfg.dim < 1 || cfg.max_exp < 0 || cfg.max_deg < 0 || cfg.count < 0)
    throw std::invalid_argument("fuzz bounds must be positive");
  auto n = static_cast<size_t>(cfg.count);
  std::vector<ProblemData> problems;
  problems.reserve(n);
  for (size_t i = 0; i < n; ++i) {
    auto rng = instance_rng(cfg.seed, i);
    problems.push_back(random_problem(rng, cfg));
  }

  struct Outcome {
    bool pass = true;
    std::vector<CheckReport> failed;
    std::string error;
  };
  std::vector<Outcome> outcomes(n);
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i = next++; i < n; i = next++) {
      Outcome& o = outcomes[i];
      try {
        for (auto& r : verify_instance(problems[i]))
          if (!r.pass) o.failed.push_back(std::move(r));
        o.pass = o.failed.empty();
      } catch (const std::exception& e) {
        o.pass = false;
        o.error = e.what();
      }
    }
  };
  unsigned threads = cfg.threads > 0 ? static_cast<unsigned>(cfg.threads) : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<size_t>(n, 1)));
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  FuzzReport rep;
  rep.count = cfg.count;
  for (size_t i = 0; i < n; ++i) {
    if (outcomes[i].pass) {
      ++rep.passed;
      continue;
    }
    if (rep.first_failure) continue;
    FuzzFailure f;
    f.index = i;
    f.original = problems[i];
    f.shrunk = shrink(problems[i], fails);
    f.failed_checks = outcomes[i].failed;
    f.error = outcomes[i].error;
    rep.first_failure = std::move(f);
  }
  return rep;
}

Json FuzzReport::to_json() const {
  Json j;
  j["count"] = count;
  j["passed"] = passed;
  j["pass"] = passed == count;
  if (first_failure) {
    Json f;
    f["index"] = first_failure->index;
    ProblemFile shrunk{first_failure->shrunk, {"verify-all"}, -1, std::nullopt};
    ProblemFile original{first_failure->original, {"verify-all"}, -1, std::nullopt};
    f["problem"] = qmc::to_json(shrunk);
    f["original_problem"] = qmc::to_json(original);
    f["failed_checks"] = Json::array();
    for (const auto& c : first_failure->failed_checks) f["failed_checks"].push_back(qmc::to_json(c));
    if (!first_failure->error.empty()) f["error"] = first_failure->error;
    j["first_failure"] = std::move(f);
  }
  return j;
}

}  // namespace qmc
