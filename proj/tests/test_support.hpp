#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "qmc/conj_algebra.hpp"
#include "qmc/exact.hpp"

namespace test_support {

inline int uniform(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

inline qmc::Gaussian small_gaussian(std::mt19937_64& rng) {
  for (;;) {
    qmc::Gaussian g(qmc::Rational(uniform(rng, -4, 4), uniform(rng, 1, 3)), qmc::Rational(uniform(rng, -3, 3)));
    if (!g.is_zero()) return g;
  }
}

inline qmc::ExactValue small_exact(std::mt19937_64& rng) {
  qmc::ExactValue v(small_gaussian(rng), uniform(rng, 0, 2));
  if (uniform(rng, 0, 1)) v += qmc::ExactValue(small_gaussian(rng), uniform(rng, 0, 2));
  return v;
}

/// Up to `max_terms` terms over roots drawn from `roots`.
inline qmc::RationalFunctionLambda random_rational_function(std::mt19937_64& rng, int max_terms,
                                                            const std::vector<qmc::Rational>& roots) {
  qmc::RationalFunctionLambda f;
  int terms = uniform(rng, 1, max_terms);
  for (int t = 0; t < terms; ++t) {
    std::vector<qmc::ExactValue> num;
    int deg = uniform(rng, 0, 2);
    for (int k = 0; k <= deg; ++k) num.push_back(uniform(rng, 0, 2) ? small_exact(rng) : qmc::ExactValue());
    std::vector<qmc::LinearFactor> den;
    int nf = uniform(rng, 0, 3);
    for (int k = 0; k < nf; ++k) {
      qmc::Rational a(uniform(rng, 1, 3));
      const qmc::Rational& r = roots[static_cast<size_t>(uniform(rng, 0, static_cast<int>(roots.size()) - 1))];
      den.push_back({a, -a * r});
    }
    f += qmc::RationalFunctionLambda::term(qmc::LambdaPoly(num), den);
  }
  return f;
}

inline qmc::ConjPolynomial random_polynomial(std::mt19937_64& rng, int d, int max_deg, int max_terms = 4) {
  qmc::ConjPolynomial p(d);
  int terms = uniform(rng, 1, max_terms);
  for (int t = 0; t < terms; ++t) {
    qmc::MultiIndex a(static_cast<size_t>(d)), b(static_cast<size_t>(d));
    int deg = uniform(rng, 0, max_deg);
    for (int k = 0; k < deg; ++k) {
      auto j = static_cast<size_t>(uniform(rng, 0, d - 1));
      (uniform(rng, 0, 1) ? a : b)[j] += 1;
    }
    p.add_term({a, b}, small_gaussian(rng));
  }
  return p;
}

inline std::vector<int> random_subset(std::mt19937_64& rng, int d, int size) {
  std::vector<int> all(static_cast<size_t>(d));
  for (int j = 0; j < d; ++j) all[static_cast<size_t>(j)] = j;
  std::shuffle(all.begin(), all.end(), rng);
  all.resize(static_cast<size_t>(size));
  return all;
}

/// Homogeneous (p, q)-form with up to three terms; the index lists are
/// unsorted on purpose.
inline qmc::ConjForm random_form(std::mt19937_64& rng, int d, int p, int q, int max_deg) {
  qmc::ConjForm f(d);
  int terms = uniform(rng, 1, 3);
  for (int t = 0; t < terms; ++t)
    f += qmc::ConjForm::basis(d, random_subset(rng, d, p), random_subset(rng, d, q), random_polynomial(rng, d, max_deg));
  return f;
}

inline qmc::ConjPolynomial bumps(int d, const qmc::MultiIndex& q) {
  qmc::ConjPolynomial b = qmc::ConjPolynomial::constant(d, 1);
  for (int j = 0; j < d; ++j) b = b * qmc::ConjPolynomial::bump(d, j, q[static_cast<size_t>(j)]);
  return b;
}

inline qmc::ExactValue pi_i(const qmc::Rational& c, int pi_power = 1) {
  return qmc::ExactValue(qmc::Gaussian(0, c), pi_power);
}

}  // namespace test_support
