#include "qmc/moments.hpp"

#include <stdexcept>

namespace qmc {

namespace {

const Gaussian kMinusTwoI{0, -2};

}  // namespace

ExactValue polydisc_moment(const MomentRequest& req) {
  size_t d = req.a.size();
  if (req.b.size() != d || (!req.m.empty() && req.m.size() != d))
    throw std::invalid_argument("moment exponent lengths differ");
  Gaussian coef = 1;
  int n = 0;
  for (size_t j = 0; j < d; ++j) {
    int m = req.m.empty() ? 0 : req.m[j];
    if (req.frozen.count(static_cast<int>(j))) {
      if (req.a[j] || req.b[j] || m)
        throw std::invalid_argument("frozen variable z_" + std::to_string(j + 1) + " occurs in integrand");
      continue;
    }
    ++n;
    if (req.a[j] != req.b[j]) return {};
    Rational f = factorial(m) / rational_pow(Rational(req.a[j] + 1), m + 1);
    if (m % 2) f = -f;
    coef *= kMinusTwoI * Gaussian(f);
  }
  coef *= Gaussian(block_orientation_sign(n));
  return {coef, n};
}

ExactValue integrate_logpoly(const LogPolynomial& q, const VarSet& frozen) {
  ExactValue total;
  for (const auto& [key, c] : q.terms()) {
    if (!key.mono.is_diagonal()) continue;
    total += polydisc_moment({key.mono.z, key.mono.zbar, key.logs, frozen}) * ExactValue(c);
  }
  return total;
}

ExactValue integrate(const ConjPolynomial& p, const VarSet& frozen) {
  ExactValue total;
  for (const auto& [mono, c] : p.terms()) {
    if (!mono.is_diagonal()) continue;
    total += polydisc_moment({mono.z, mono.zbar, {}, frozen}) * ExactValue(c);
  }
  return total;
}

RationalFunctionLambda lambda_moment(int I, int s, int m) {
  if (I < 0 || m < 0) throw std::invalid_argument("lambda_moment: negative exponent");
  Rational f = factorial(m);
  if (m % 2) f = -f;
  ExactValue c(kMinusTwoI * Gaussian(f), 1);
  if (I == 0) {
    if (s + 1 == 0) throw std::domain_error("lambda_moment: divergent integral with I = 0, s = -1");
    return c / Gaussian(rational_pow(Rational(s + 1), m + 1));
  }
  std::vector<LinearFactor> factors(static_cast<size_t>(m + 1), LinearFactor{Rational(I), Rational(s + 1)});
  return RationalFunctionLambda::term(LambdaPoly(c), std::move(factors));
}

}  // namespace qmc
