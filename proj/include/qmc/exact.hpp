#pragma once

// Exact scalars for the regularization engine.
//
// Everything the engine computes lives in the ring Q(i)[pi]: finite sums of
// Gaussian rationals times powers of a formal symbol pi.  pi is never given
// a numeric value; equality is coefficient-wise.  Rational functions of the
// continuation parameter lambda are kept as sums of simple terms whose
// denominators are products of monic linear factors.

#include <gmpxx.h>

#include <compare>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace qmc {

using Rational = mpq_class;

/// "p/q", or "p" when q == 1.
std::string to_string(const Rational& r);
/// Accepts "p", "-p", "p/q"; throws std::invalid_argument otherwise.
Rational parse_rational(std::string_view text);
Rational factorial(int n);
Rational binomial(int n, int k);
Rational rational_pow(const Rational& base, int exponent);

class Gaussian {
 public:
  Gaussian() = default;
  Gaussian(Rational re) : re_(std::move(re)) { re_.canonicalize(); }  // NOLINT: implicit by design of the scalar tower
  Gaussian(long re) : re_(re) {}                                      // NOLINT
  Gaussian(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
  }

  static Gaussian i() { return {0, 1}; }

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }
  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }
  Gaussian conj() const { return {re_, -im_}; }
  Rational norm() const { return re_ * re_ + im_ * im_; }

  Gaussian operator-() const { return {-re_, -im_}; }
  Gaussian& operator+=(const Gaussian& o);
  Gaussian& operator-=(const Gaussian& o);
  Gaussian& operator*=(const Gaussian& o);
  Gaussian& operator/=(const Gaussian& o);

  friend Gaussian operator+(Gaussian a, const Gaussian& b) { return a += b; }
  friend Gaussian operator-(Gaussian a, const Gaussian& b) { return a -= b; }
  friend Gaussian operator*(Gaussian a, const Gaussian& b) { return a *= b; }
  friend Gaussian operator/(Gaussian a, const Gaussian& b) { return a /= b; }
  friend bool operator==(const Gaussian& a, const Gaussian& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

 private:
  Rational re_{0};
  Rational im_{0};
};

Gaussian gaussian_pow(const Gaussian& base, int exponent);
std::ostream& operator<<(std::ostream& os, const Gaussian& g);

/// Finite sum  sum_k c_k pi^k  with Gaussian rational c_k.
class ExactValue {
 public:
  ExactValue() = default;
  ExactValue(Gaussian c, int pi_power = 0);  // NOLINT: scalars promote

  static ExactValue pi_power(int k) { return {Gaussian(1), k}; }

  const std::map<int, Gaussian>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Gaussian coefficient(int pi_power) const;
  ExactValue conj() const;

  ExactValue operator-() const;
  ExactValue& operator+=(const ExactValue& o);
  ExactValue& operator-=(const ExactValue& o);
  ExactValue& operator*=(const ExactValue& o);
  /// Division by a nonzero pure scalar (no pi).
  ExactValue& operator/=(const Gaussian& c);

  friend ExactValue operator+(ExactValue a, const ExactValue& b) { return a += b; }
  friend ExactValue operator-(ExactValue a, const ExactValue& b) { return a -= b; }
  friend ExactValue operator*(ExactValue a, const ExactValue& b) { return a *= b; }
  friend ExactValue operator/(ExactValue a, const Gaussian& b) { return a /= b; }
  friend bool operator==(const ExactValue& a, const ExactValue& b) { return a.terms_ == b.terms_; }

 private:
  void add_term(int k, const Gaussian& c);
  std::map<int, Gaussian> terms_;
};

/// Human rendering, e.g. "-2·π·i", "1/3 + 2·i", "(1/2 - i)·π^2".
std::string to_text(const ExactValue& v);
std::ostream& operator<<(std::ostream& os, const ExactValue& v);

/// Polynomial in lambda with ExactValue coefficients (index = degree).
class LambdaPoly {
 public:
  LambdaPoly() = default;
  explicit LambdaPoly(std::vector<ExactValue> coeffs);
  LambdaPoly(ExactValue constant);  // NOLINT
  static LambdaPoly monomial(ExactValue c, int degree);

  const std::vector<ExactValue>& coefficients() const { return coeffs_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return coeffs_.empty(); }
  ExactValue coefficient(int k) const;
  ExactValue evaluate(const Rational& x) const;
  /// p(x + shift) as a polynomial in x.
  LambdaPoly shifted(const Rational& shift) const;
  LambdaPoly conj() const;

  LambdaPoly& operator+=(const LambdaPoly& o);
  LambdaPoly& operator*=(const LambdaPoly& o);
  LambdaPoly& operator*=(const ExactValue& c);
  friend LambdaPoly operator+(LambdaPoly a, const LambdaPoly& b) { return a += b; }
  friend LambdaPoly operator*(LambdaPoly a, const LambdaPoly& b) { return a *= b; }
  friend LambdaPoly operator*(LambdaPoly a, const ExactValue& c) { return a *= c; }
  friend bool operator==(const LambdaPoly& a, const LambdaPoly& b) { return a.coeffs_ == b.coeffs_; }

 private:
  void trim();
  std::vector<ExactValue> coeffs_;
};

/// Truncated Laurent expansion.  Orders lowest_order..validity_order are
/// stored; everything below lowest_order is exactly zero.
class LaurentWindow {
 public:
  LaurentWindow() = default;
  LaurentWindow(int lowest_order, std::vector<ExactValue> coeffs);

  int lowest_order() const { return lowest_; }
  int validity_order() const { return lowest_ + static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<ExactValue>& coefficients() const { return coeffs_; }
  /// Throws std::out_of_range above validity_order.
  ExactValue coefficient(int order) const;
  /// Order of the pole (0 when there is none inside the window).
  int pole_order() const;
  /// Same data, padded with zeros so that it starts at `lowest` (which must
  /// not cut off a nonzero coefficient).
  LaurentWindow starting_at(int lowest) const;
  /// Drops orders above `order`.
  LaurentWindow truncated(int order) const;
  LaurentWindow with_validity(int order) const;

  friend bool operator==(const LaurentWindow& a, const LaurentWindow& b);

 private:
  int lowest_ = 0;
  std::vector<ExactValue> coeffs_;
};

/// a*lambda + b, stored monic (a == 1) after construction through
/// RationalFunctionLambda::term.
struct LinearFactor {
  Rational a{1};
  Rational b{0};
  Rational root() const { return -b / a; }
  auto operator<=>(const LinearFactor& o) const {
    if (auto c = cmp(a, o.a); c != 0) return c <=> 0;
    return cmp(b, o.b) <=> 0;
  }
  bool operator==(const LinearFactor& o) const { return a == o.a && b == o.b; }
};

struct PoleInfo {
  Rational location;
  int order = 0;
  bool operator==(const PoleInfo& o) const { return location == o.location && order == o.order; }
};

/// sum_i N_i(lambda) / prod_j (lambda - r_ij), never brought to a common
/// denominator.
class RationalFunctionLambda {
 public:
  struct Term {
    LambdaPoly numerator;
    std::vector<LinearFactor> denominator;  // monic, sorted
  };

  RationalFunctionLambda() = default;
  RationalFunctionLambda(ExactValue constant);  // NOLINT

  /// numerator / prod(factors); factors need a != 0 and are made monic.
  static RationalFunctionLambda term(LambdaPoly numerator, std::vector<LinearFactor> factors);

  const std::vector<Term>& terms() const { return terms_; }
  bool has_no_terms() const { return terms_.empty(); }

  RationalFunctionLambda& operator+=(const RationalFunctionLambda& o);
  RationalFunctionLambda& operator-=(const RationalFunctionLambda& o);
  RationalFunctionLambda& operator*=(const RationalFunctionLambda& o);
  RationalFunctionLambda& operator*=(const ExactValue& c);
  friend RationalFunctionLambda operator+(RationalFunctionLambda a, const RationalFunctionLambda& b) {
    return a += b;
  }
  friend RationalFunctionLambda operator-(RationalFunctionLambda a, const RationalFunctionLambda& b) {
    return a -= b;
  }
  friend RationalFunctionLambda operator*(const RationalFunctionLambda& a, const RationalFunctionLambda& b);
  friend RationalFunctionLambda operator*(RationalFunctionLambda a, const ExactValue& c) { return a *= c; }

  /// Merges terms with identical denominators and drops zero numerators.
  RationalFunctionLambda normalized() const;
  RationalFunctionLambda conj() const;
  /// f(lambda + shift) as a function of lambda.
  RationalFunctionLambda shifted(const Rational& shift) const;
  /// Exact value; throws std::domain_error at a pole of some term.
  ExactValue evaluate(const Rational& x) const;

  /// Laurent coefficients at 0 from the true lowest order through `upto`.
  LaurentWindow laurent_at_zero(int upto) const;
  LaurentWindow laurent_at(const Rational& point, int upto) const;
  /// Roots of all denominator factors (deduplicated, ascending).
  std::vector<Rational> candidate_poles() const;
  /// Genuine poles after cancellation, ascending by location.
  std::vector<PoleInfo> poles() const;
  /// True iff the function is identically zero.
  bool is_zero() const;

 private:
  std::vector<Term> terms_;
};

}  // namespace qmc
