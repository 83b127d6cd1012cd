#pragma once

// Polynomials in z_1..z_d and their conjugates, log-weighted polynomials,
// and (p,q)-forms with polynomial coefficients.
//
// Variables are 0-based internally; file formats and user-facing text use
// 1-based indices for dz/dzbar index sets.

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "qmc/exact.hpp"

namespace qmc {

using MultiIndex = std::vector<int>;
using VarSet = std::set<int>;

/// z^a zbar^b
struct Monomial {
  MultiIndex z;
  MultiIndex zbar;
  auto operator<=>(const Monomial&) const = default;
  bool is_diagonal() const { return z == zbar; }
};

class ConjPolynomial {
 public:
  using TermMap = std::map<Monomial, Gaussian>;

  ConjPolynomial() = default;
  explicit ConjPolynomial(int dimension) : dim_(dimension) {}

  static ConjPolynomial constant(int dimension, const Gaussian& c);
  static ConjPolynomial monomial(int dimension, MultiIndex z, MultiIndex zbar, const Gaussian& c);
  static ConjPolynomial z(int dimension, int j);
  static ConjPolynomial zbar(int dimension, int j);
  /// (1 - z_j zbar_j)^power
  static ConjPolynomial bump(int dimension, int j, int power);

  int dimension() const { return dim_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  size_t size() const { return terms_.size(); }
  Gaussian coefficient(const Monomial& m) const;
  Gaussian constant_term() const;
  /// Adds c * z^a zbar^b.
  void add_term(const Monomial& m, const Gaussian& c);

  ConjPolynomial operator-() const;
  ConjPolynomial& operator+=(const ConjPolynomial& o);
  ConjPolynomial& operator-=(const ConjPolynomial& o);
  ConjPolynomial& operator*=(const Gaussian& c);
  friend ConjPolynomial operator+(ConjPolynomial a, const ConjPolynomial& b) { return a += b; }
  friend ConjPolynomial operator-(ConjPolynomial a, const ConjPolynomial& b) { return a -= b; }
  friend ConjPolynomial operator*(const ConjPolynomial& a, const ConjPolynomial& b);
  friend ConjPolynomial operator*(ConjPolynomial a, const Gaussian& c) { return a *= c; }
  friend bool operator==(const ConjPolynomial& a, const ConjPolynomial& b) {
    return a.dim_ == b.dim_ && a.terms_ == b.terms_;
  }
  ConjPolynomial pow(int n) const;

  ConjPolynomial d_dz(int j) const;
  ConjPolynomial d_dzbar(int j) const;
  /// d^{|J|+|K|} / dz^J dzbar^K
  ConjPolynomial derivative(const MultiIndex& J, const MultiIndex& K) const;
  /// Keeps the terms free of z_j, zbar_j for every j in `vars`.
  ConjPolynomial restrict_zero(const VarSet& vars) const;
  /// Pointwise complex conjugate.
  ConjPolynomial conj() const;
  /// Real-valued: coefficient(a,b) == conj(coefficient(b,a)).
  bool is_real_valued() const;
  /// Pullback under z_j -> c z_j.
  ConjPolynomial rescaled(int j, const Gaussian& c) const;
  /// Terms with z-exponents equal to zbar-exponents.
  ConjPolynomial diagonal_part() const;
  /// Multiplication by z^a zbar^b.
  ConjPolynomial times_monomial(const MultiIndex& a, const MultiIndex& b) const;
  /// Largest q with (1 - z_j zbar_j)^q dividing the polynomial (capped at
  /// `cap`); the zero polynomial reports `cap`.
  int bump_order(int j, int cap = 64) const;
  /// Highest exponent of z_j plus zbar_j over all terms.
  int degree_in(int j) const;
  int total_degree() const;

 private:
  int dim_ = 0;
  TermMap terms_;
};

/// c * z^a zbar^b * prod_j (log|z_j|^2)^{m_j}
class LogPolynomial {
 public:
  struct Key {
    Monomial mono;
    MultiIndex logs;
    auto operator<=>(const Key&) const = default;
  };
  using TermMap = std::map<Key, Gaussian>;

  LogPolynomial() = default;
  explicit LogPolynomial(int dimension) : dim_(dimension) {}
  explicit LogPolynomial(const ConjPolynomial& p);
  static LogPolynomial log_monomial(int dimension, MultiIndex logs, const Gaussian& c);
  /// sum_j weights_j log|z_j|^2
  static LogPolynomial log_sum(const MultiIndex& weights);

  int dimension() const { return dim_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  void add_term(const Key& k, const Gaussian& c);

  LogPolynomial& operator+=(const LogPolynomial& o);
  LogPolynomial& operator*=(const Gaussian& c);
  friend LogPolynomial operator+(LogPolynomial a, const LogPolynomial& b) { return a += b; }
  friend LogPolynomial operator*(const LogPolynomial& a, const LogPolynomial& b);
  friend LogPolynomial operator*(const LogPolynomial& a, const ConjPolynomial& p);
  friend bool operator==(const LogPolynomial& a, const LogPolynomial& b) {
    return a.dim_ == b.dim_ && a.terms_ == b.terms_;
  }
  LogPolynomial pow(int n) const;

 private:
  int dim_ = 0;
  TermMap terms_;
};

/// sum P_{A,B} dz_A ^ dzbar_B with A, B strictly increasing.
class ConjForm {
 public:
  struct Basis {
    std::vector<int> dz;
    std::vector<int> dzbar;
    auto operator<=>(const Basis&) const = default;
  };
  using TermMap = std::map<Basis, ConjPolynomial>;

  ConjForm() = default;
  explicit ConjForm(int dimension) : dim_(dimension) {}
  /// coefficient * dz_A ^ dzbar_B; A and B may be unsorted (sign applied) and
  /// a repeated index yields zero.
  static ConjForm basis(int dimension, std::vector<int> dz, std::vector<int> dzbar,
                        const ConjPolynomial& coefficient);
  static ConjForm function(const ConjPolynomial& f);
  static ConjForm dz(int dimension, int j);
  static ConjForm dzbar(int dimension, int j);

  int dimension() const { return dim_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// (p,q) when every term has that bidegree; nullopt for mixed or zero forms.
  std::optional<std::pair<int, int>> bidegree() const;
  ConjPolynomial coefficient(const Basis& b) const;
  /// Coefficient of dz_V ^ dzbar_V for the given variable set.
  ConjPolynomial top_coefficient(const VarSet& vars) const;
  void add_term(const Basis& b, const ConjPolynomial& p);

  ConjForm operator-() const;
  ConjForm& operator+=(const ConjForm& o);
  ConjForm& operator-=(const ConjForm& o);
  friend ConjForm operator+(ConjForm a, const ConjForm& b) { return a += b; }
  friend ConjForm operator-(ConjForm a, const ConjForm& b) { return a -= b; }
  friend bool operator==(const ConjForm& a, const ConjForm& b) {
    return a.dim_ == b.dim_ && a.terms_ == b.terms_;
  }
  /// Multiplies every coefficient by f.
  ConjForm times(const ConjPolynomial& f) const;
  /// Applies a coefficient-wise linear map.
  template <class Fn>
  ConjForm map_coefficients(Fn&& fn) const {
    ConjForm r(dim_);
    for (const auto& [b, p] : terms_) r.add_term(b, fn(p));
    return r;
  }

  ConjForm dbar() const;
  ConjForm del() const;
  ConjForm conj() const;
  /// Pullback to {z_j = 0, j in vars}: drops dz_j, dzbar_j and restricts
  /// coefficients.
  ConjForm restrict_zero(const VarSet& vars) const;
  int degree() const;  // p + q of a homogeneous form, -1 if zero/mixed

 private:
  int dim_ = 0;
  TermMap terms_;
};

ConjForm wedge(const ConjForm& a, const ConjForm& b);

/// Sign of dz_1^..^dz_n ^ dzbar_1^..^dzbar_n relative to
/// prod_j (dz_j ^ dzbar_j): (-1)^{n(n-1)/2}.
int block_orientation_sign(int n);

}  // namespace qmc
