#include "qmc/exact.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace qmc {

std::string to_string(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto valid_int = [](const std::string& t) {
    if (t.empty()) return false;
    size_t start = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (start == t.size()) return false;
    return std::all_of(t.begin() + static_cast<long>(start), t.end(),
                       [](char c) { return c >= '0' && c <= '9'; });
  };
  auto slash = s.find('/');
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+')
    throw std::invalid_argument("not a rational: \"" + s + "\"");
  if (num[0] == '+') num.erase(0, 1);
  mpz_class n(num), d(den);
  if (d == 0) throw std::invalid_argument("zero denominator: \"" + s + "\"");
  Rational r(n, d);
  r.canonicalize();
  return r;
}

Rational factorial(int n) {
  if (n < 0) throw std::domain_error("factorial of a negative number");
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
  return Rational(f);
}

Rational binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return Rational(b);
}

Rational rational_pow(const Rational& base, int exponent) {
  if (exponent < 0) return 1 / rational_pow(base, -exponent);
  Rational r = 1;
  for (int k = 0; k < exponent; ++k) r *= base;
  return r;
}

// ---------------------------------------------------------------------------

Gaussian& Gaussian::operator+=(const Gaussian& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

Gaussian& Gaussian::operator-=(const Gaussian& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

Gaussian& Gaussian::operator*=(const Gaussian& o) {
  if (sgn(im_) == 0 && sgn(o.im_) == 0) {
    re_ *= o.re_;
    return *this;
  }
  Rational re = re_ * o.re_ - im_ * o.im_;
  Rational im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

Gaussian& Gaussian::operator/=(const Gaussian& o) {
  if (o.is_zero()) throw std::domain_error("division by zero");
  Rational n = o.norm();
  *this *= o.conj();
  re_ /= n;
  im_ /= n;
  return *this;
}

Gaussian gaussian_pow(const Gaussian& base, int exponent) {
  if (exponent < 0) return Gaussian(1) / gaussian_pow(base, -exponent);
  Gaussian r(1);
  for (int k = 0; k < exponent; ++k) r *= base;
  return r;
}

std::ostream& operator<<(std::ostream& os, const Gaussian& g) {
  return os << to_text(ExactValue(g));
}

// ---------------------------------------------------------------------------

ExactValue::ExactValue(Gaussian c, int pi_power) {
  if (!c.is_zero()) terms_.emplace(pi_power, std::move(c));
}

Gaussian ExactValue::coefficient(int pi_power) const {
  auto it = terms_.find(pi_power);
  return it == terms_.end() ? Gaussian() : it->second;
}

ExactValue ExactValue::conj() const {
  ExactValue r;
  for (const auto& [k, c] : terms_) r.terms_.emplace(k, c.conj());
  return r;
}

void ExactValue::add_term(int k, const Gaussian& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(k, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

ExactValue ExactValue::operator-() const {
  ExactValue r;
  for (const auto& [k, c] : terms_) r.terms_.emplace(k, -c);
  return r;
}

ExactValue& ExactValue::operator+=(const ExactValue& o) {
  for (const auto& [k, c] : o.terms_) add_term(k, c);
  return *this;
}

ExactValue& ExactValue::operator-=(const ExactValue& o) {
  for (const auto& [k, c] : o.terms_) add_term(k, -c);
  return *this;
}

ExactValue& ExactValue::operator*=(const ExactValue& o) {
  ExactValue r;
  for (const auto& [k1, c1] : terms_)
    for (const auto& [k2, c2] : o.terms_) r.add_term(k1 + k2, c1 * c2);
  *this = std::move(r);
  return *this;
}

ExactValue& ExactValue::operator/=(const Gaussian& c) {
  for (auto& [k, v] : terms_) v /= c;
  return *this;
}

namespace {

std::string pi_text(int k) {
  if (k == 0) return "";
  if (k == 1) return "π";
  return "π^" + std::to_string(k);
}

// One graded piece c·π^k.
std::string piece_text(const Gaussian& c, int k) {
  std::string pi = pi_text(k);
  auto scaled = [&](const Rational& r, const std::string& unit) {
    // r·unit where unit may be empty
    if (unit.empty()) return to_string(r);
    if (r == 1) return unit;
    if (r == -1) return "-" + unit;
    return to_string(r) + "·" + unit;
  };
  if (c.is_real()) return scaled(c.re(), pi);
  if (sgn(c.re()) == 0) return scaled(c.im(), pi.empty() ? "i" : pi + "·i");
  std::string inner = to_string(c.re()) + (sgn(c.im()) < 0 ? " - " : " + ");
  Rational a = abs(c.im());
  inner += a == 1 ? "i" : to_string(a) + "·i";
  return pi.empty() ? inner : "(" + inner + ")·" + pi;
}

}  // namespace

std::string to_text(const ExactValue& v) {
  if (v.is_zero()) return "0";
  std::string out;
  for (const auto& [k, c] : v.terms()) {
    std::string p = piece_text(c, k);
    if (out.empty()) {
      out = p;
    } else if (p[0] == '-') {
      out += " - " + p.substr(1);
    } else {
      out += " + " + p;
    }
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const ExactValue& v) { return os << to_text(v); }

// ---------------------------------------------------------------------------

LambdaPoly::LambdaPoly(std::vector<ExactValue> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

LambdaPoly::LambdaPoly(ExactValue constant) {
  if (!constant.is_zero()) coeffs_.push_back(std::move(constant));
}

LambdaPoly LambdaPoly::monomial(ExactValue c, int degree) {
  std::vector<ExactValue> v(static_cast<size_t>(degree) + 1);
  v.back() = std::move(c);
  return LambdaPoly(std::move(v));
}

void LambdaPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

ExactValue LambdaPoly::coefficient(int k) const {
  if (k < 0 || k >= static_cast<int>(coeffs_.size())) return {};
  return coeffs_[static_cast<size_t>(k)];
}

ExactValue LambdaPoly::evaluate(const Rational& x) const {
  ExactValue r;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    r *= ExactValue(Gaussian(x));
    r += *it;
  }
  return r;
}

LambdaPoly LambdaPoly::shifted(const Rational& shift) const {
  if (sgn(shift) == 0) return *this;
  LambdaPoly linear(std::vector<ExactValue>{ExactValue(Gaussian(shift)), ExactValue(Gaussian(1))});
  LambdaPoly r;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    r *= linear;
    r += LambdaPoly(*it);
  }
  return r;
}

LambdaPoly LambdaPoly::conj() const {
  std::vector<ExactValue> v;
  v.reserve(coeffs_.size());
  for (const auto& c : coeffs_) v.push_back(c.conj());
  return LambdaPoly(std::move(v));
}

LambdaPoly& LambdaPoly::operator+=(const LambdaPoly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
  trim();
  return *this;
}

LambdaPoly& LambdaPoly::operator*=(const LambdaPoly& o) {
  if (is_zero() || o.is_zero()) {
    coeffs_.clear();
    return *this;
  }
  std::vector<ExactValue> r(coeffs_.size() + o.coeffs_.size() - 1);
  for (size_t i = 0; i < coeffs_.size(); ++i)
    for (size_t j = 0; j < o.coeffs_.size(); ++j) r[i + j] += coeffs_[i] * o.coeffs_[j];
  coeffs_ = std::move(r);
  trim();
  return *this;
}

LambdaPoly& LambdaPoly::operator*=(const ExactValue& c) {
  for (auto& x : coeffs_) x *= c;
  trim();
  return *this;
}

// ---------------------------------------------------------------------------

LaurentWindow::LaurentWindow(int lowest_order, std::vector<ExactValue> coeffs)
    : lowest_(lowest_order), coeffs_(std::move(coeffs)) {}

ExactValue LaurentWindow::coefficient(int order) const {
  if (order > validity_order())
    throw std::out_of_range("Laurent coefficient of order " + std::to_string(order) +
                            " is beyond the validity order " + std::to_string(validity_order()));
  if (order < lowest_) return {};
  return coeffs_[static_cast<size_t>(order - lowest_)];
}

int LaurentWindow::pole_order() const {
  for (int k = lowest_; k <= validity_order() && k < 0; ++k)
    if (!coefficient(k).is_zero()) return -k;
  return 0;
}

LaurentWindow LaurentWindow::starting_at(int lowest) const {
  int top = validity_order();
  std::vector<ExactValue> v;
  for (int k = lowest; k <= top; ++k) {
    v.push_back(k < lowest_ ? ExactValue() : coefficient(k));
  }
  for (int k = lowest_; k < lowest && k <= top; ++k)
    if (!coefficient(k).is_zero())
      throw std::logic_error("starting_at would drop a nonzero Laurent coefficient");
  return {lowest, std::move(v)};
}

LaurentWindow LaurentWindow::truncated(int order) const {
  if (order >= validity_order()) return *this;
  std::vector<ExactValue> v;
  for (int k = lowest_; k <= order; ++k) v.push_back(coefficient(k));
  return {lowest_, std::move(v)};
}

LaurentWindow LaurentWindow::with_validity(int order) const {
  if (order >= validity_order()) return *this;
  return truncated(order);
}

bool operator==(const LaurentWindow& a, const LaurentWindow& b) {
  if (a.validity_order() != b.validity_order()) return false;
  int lo = std::min(a.lowest_, b.lowest_);
  for (int k = lo; k <= a.validity_order(); ++k)
    if (!(a.coefficient(k) == b.coefficient(k))) return false;
  return true;
}

// ---------------------------------------------------------------------------

RationalFunctionLambda::RationalFunctionLambda(ExactValue constant) {
  if (!constant.is_zero()) terms_.push_back({LambdaPoly(std::move(constant)), {}});
}

RationalFunctionLambda RationalFunctionLambda::term(LambdaPoly numerator,
                                                    std::vector<LinearFactor> factors) {
  RationalFunctionLambda f;
  if (numerator.is_zero()) return f;
  Rational scale = 1;
  for (auto& lf : factors) {
    if (sgn(lf.a) == 0) throw std::invalid_argument("linear factor with zero slope");
    scale *= lf.a;
    lf.b /= lf.a;
    lf.a = 1;
  }
  std::sort(factors.begin(), factors.end());
  if (scale != 1) numerator *= ExactValue(Gaussian(1 / scale));
  f.terms_.push_back({std::move(numerator), std::move(factors)});
  return f;
}

RationalFunctionLambda& RationalFunctionLambda::operator+=(const RationalFunctionLambda& o) {
  terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
  return *this;
}

RationalFunctionLambda& RationalFunctionLambda::operator-=(const RationalFunctionLambda& o) {
  for (const auto& t : o.terms_)
    terms_.push_back({t.numerator * ExactValue(Gaussian(-1)), t.denominator});
  return *this;
}

RationalFunctionLambda operator*(const RationalFunctionLambda& a, const RationalFunctionLambda& b) {
  RationalFunctionLambda r;
  for (const auto& x : a.terms_)
    for (const auto& y : b.terms_) {
      LambdaPoly n = x.numerator * y.numerator;
      if (n.is_zero()) continue;
      std::vector<LinearFactor> d;
      d.reserve(x.denominator.size() + y.denominator.size());
      std::merge(x.denominator.begin(), x.denominator.end(), y.denominator.begin(),
                 y.denominator.end(), std::back_inserter(d));
      r.terms_.push_back({std::move(n), std::move(d)});
    }
  return r;
}

RationalFunctionLambda& RationalFunctionLambda::operator*=(const RationalFunctionLambda& o) {
  *this = *this * o;
  return *this;
}

RationalFunctionLambda& RationalFunctionLambda::operator*=(const ExactValue& c) {
  std::vector<Term> kept;
  for (auto& t : terms_) {
    t.numerator *= c;
    if (!t.numerator.is_zero()) kept.push_back(std::move(t));
  }
  terms_ = std::move(kept);
  return *this;
}

RationalFunctionLambda RationalFunctionLambda::normalized() const {
  std::map<std::vector<LinearFactor>, LambdaPoly> merged;
  for (const auto& t : terms_) merged[t.denominator] += t.numerator;
  RationalFunctionLambda r;
  for (auto& [d, n] : merged)
    if (!n.is_zero()) r.terms_.push_back({n, d});
  return r;
}

RationalFunctionLambda RationalFunctionLambda::conj() const {
  RationalFunctionLambda r;
  for (const auto& t : terms_) r.terms_.push_back({t.numerator.conj(), t.denominator});
  return r;
}

RationalFunctionLambda RationalFunctionLambda::shifted(const Rational& shift) const {
  RationalFunctionLambda r;
  for (const auto& t : terms_) {
    std::vector<LinearFactor> d = t.denominator;
    for (auto& lf : d) lf.b += lf.a * shift;
    std::sort(d.begin(), d.end());
    r.terms_.push_back({t.numerator.shifted(shift), std::move(d)});
  }
  return r;
}

ExactValue RationalFunctionLambda::evaluate(const Rational& x) const {
  ExactValue total;
  for (const auto& t : terms_) {
    Rational den = 1;
    for (const auto& lf : t.denominator) den *= lf.a * x + lf.b;
    if (sgn(den) == 0) throw std::domain_error("evaluation at a pole candidate " + to_string(x));
    total += t.numerator.evaluate(x) / Gaussian(den);
  }
  return total;
}

LaurentWindow RationalFunctionLambda::laurent_at_zero(int upto) const {
  int deepest = 0;
  for (const auto& t : terms_) {
    int z = static_cast<int>(std::count_if(t.denominator.begin(), t.denominator.end(),
                                           [](const LinearFactor& lf) { return sgn(lf.b) == 0; }));
    deepest = std::max(deepest, z);
  }
  int lowest = -deepest;
  std::vector<ExactValue> acc(static_cast<size_t>(std::max(0, upto - lowest + 1)));
  for (const auto& t : terms_) {
    int z = 0;
    int top = 0;  // series degree needed
    for (const auto& lf : t.denominator)
      if (sgn(lf.b) == 0) ++z;
    top = upto + z;
    if (top < 0) continue;
    // power series of prod 1/(lambda + b) for b != 0, truncated at `top`
    std::vector<Rational> series(static_cast<size_t>(top) + 1);
    series[0] = 1;
    for (const auto& lf : t.denominator) {
      if (sgn(lf.b) == 0) continue;
      // 1/(a lambda + b) = (1/b) sum (-a/b)^k lambda^k
      Rational ratio = -lf.a / lf.b;
      std::vector<Rational> geo(series.size());
      Rational c = 1 / lf.b;
      for (auto& g : geo) {
        g = c;
        c *= ratio;
      }
      std::vector<Rational> next(series.size());
      for (size_t i = 0; i < series.size(); ++i) {
        if (sgn(series[i]) == 0) continue;
        for (size_t j = 0; i + j < series.size(); ++j) next[i + j] += series[i] * geo[j];
      }
      series = std::move(next);
    }
    const auto& num = t.numerator.coefficients();
    for (int k = 0; k <= top; ++k) {
      // coefficient of lambda^k in numerator * series, placed at order k - z
      ExactValue c;
      for (int i = 0; i <= k && i < static_cast<int>(num.size()); ++i) {
        const Rational& s = series[static_cast<size_t>(k - i)];
        if (sgn(s) == 0) continue;
        c += num[static_cast<size_t>(i)] * ExactValue(Gaussian(s));
      }
      int order = k - z;
      acc[static_cast<size_t>(order - lowest)] += c;
    }
  }
  // trim to the true lowest order
  size_t first = 0;
  while (first < acc.size() && acc[first].is_zero()) ++first;
  if (first == acc.size()) return {upto + 1, {}};
  std::vector<ExactValue> v(acc.begin() + static_cast<long>(first), acc.end());
  return {lowest + static_cast<int>(first), std::move(v)};
}

LaurentWindow RationalFunctionLambda::laurent_at(const Rational& point, int upto) const {
  return shifted(point).laurent_at_zero(upto);
}

std::vector<Rational> RationalFunctionLambda::candidate_poles() const {
  std::set<Rational> roots;
  for (const auto& t : terms_)
    for (const auto& lf : t.denominator) roots.insert(lf.root());
  return {roots.begin(), roots.end()};
}

std::vector<PoleInfo> RationalFunctionLambda::poles() const {
  std::vector<PoleInfo> out;
  for (const auto& q : candidate_poles()) {
    LaurentWindow w = laurent_at(q, -1);
    if (w.lowest_order() <= -1) out.push_back({q, -w.lowest_order()});
  }
  return out;
}

bool RationalFunctionLambda::is_zero() const {
  if (!poles().empty()) return false;
  // Without poles the function is a polynomial of degree <= max numerator
  // degree; that many + 1 zeros force it to vanish.
  int bound = 0;
  for (const auto& t : terms_) bound = std::max(bound, t.numerator.degree());
  auto candidates = candidate_poles();
  std::set<Rational> avoid(candidates.begin(), candidates.end());
  int found = 0;
  for (long x = 0; found <= bound; ++x) {
    Rational pt(x);
    if (avoid.count(pt)) continue;
    if (!evaluate(pt).is_zero()) return false;
    ++found;
  }
  return true;
}

}  // namespace qmc
