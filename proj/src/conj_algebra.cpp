#include "qmc/conj_algebra.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace qmc {

namespace {

void check_same_dimension(int a, int b) {
  if (a != b)
    throw std::invalid_argument("dimension mismatch: " + std::to_string(a) + " vs " +
                                std::to_string(b));
}

// Sorts `v` in place by adjacent transpositions; returns the parity sign, or 0
// when an index repeats.
int sort_sign(std::vector<int>& v) {
  int sign = 1;
  for (size_t i = 1; i < v.size(); ++i) {
    for (size_t k = i; k > 0 && v[k - 1] >= v[k]; --k) {
      if (v[k - 1] == v[k]) return 0;
      std::swap(v[k - 1], v[k]);
      sign = -sign;
    }
  }
  return sign;
}

}  // namespace

int block_orientation_sign(int n) { return ((n * (n - 1) / 2) % 2 == 0) ? 1 : -1; }

// ---------------------------------------------------------------------------

ConjPolynomial ConjPolynomial::constant(int dimension, const Gaussian& c) {
  ConjPolynomial p(dimension);
  p.add_term({MultiIndex(static_cast<size_t>(dimension)), MultiIndex(static_cast<size_t>(dimension))}, c);
  return p;
}

ConjPolynomial ConjPolynomial::monomial(int dimension, MultiIndex z, MultiIndex zbar,
                                        const Gaussian& c) {
  if (static_cast<int>(z.size()) != dimension || static_cast<int>(zbar.size()) != dimension)
    throw std::invalid_argument("monomial exponent length differs from dimension");
  for (int e : z)
    if (e < 0) throw std::invalid_argument("negative exponent");
  for (int e : zbar)
    if (e < 0) throw std::invalid_argument("negative exponent");
  ConjPolynomial p(dimension);
  p.add_term({std::move(z), std::move(zbar)}, c);
  return p;
}

ConjPolynomial ConjPolynomial::z(int dimension, int j) {
  MultiIndex a(static_cast<size_t>(dimension)), b(static_cast<size_t>(dimension));
  a.at(static_cast<size_t>(j)) = 1;
  return monomial(dimension, a, b, 1);
}

ConjPolynomial ConjPolynomial::zbar(int dimension, int j) {
  MultiIndex a(static_cast<size_t>(dimension)), b(static_cast<size_t>(dimension));
  b.at(static_cast<size_t>(j)) = 1;
  return monomial(dimension, a, b, 1);
}

ConjPolynomial ConjPolynomial::bump(int dimension, int j, int power) {
  ConjPolynomial p(dimension);
  for (int k = 0; k <= power; ++k) {
    MultiIndex a(static_cast<size_t>(dimension)), b(static_cast<size_t>(dimension));
    a.at(static_cast<size_t>(j)) = k;
    b.at(static_cast<size_t>(j)) = k;
    Rational c = binomial(power, k);
    if (k % 2) c = -c;
    p.add_term({a, b}, c);
  }
  return p;
}

Gaussian ConjPolynomial::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Gaussian() : it->second;
}

Gaussian ConjPolynomial::constant_term() const {
  return coefficient({MultiIndex(static_cast<size_t>(dim_)), MultiIndex(static_cast<size_t>(dim_))});
}

void ConjPolynomial::add_term(const Monomial& m, const Gaussian& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

ConjPolynomial ConjPolynomial::operator-() const {
  ConjPolynomial r(*this);
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

ConjPolynomial& ConjPolynomial::operator+=(const ConjPolynomial& o) {
  if (o.is_zero()) return *this;
  if (is_zero() && dim_ == 0) dim_ = o.dim_;
  check_same_dimension(dim_, o.dim_);
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

ConjPolynomial& ConjPolynomial::operator-=(const ConjPolynomial& o) {
  if (o.is_zero()) return *this;
  if (is_zero() && dim_ == 0) dim_ = o.dim_;
  check_same_dimension(dim_, o.dim_);
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

ConjPolynomial& ConjPolynomial::operator*=(const Gaussian& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

ConjPolynomial operator*(const ConjPolynomial& a, const ConjPolynomial& b) {
  check_same_dimension(a.dim_, b.dim_);
  ConjPolynomial r(a.dim_);
  Monomial m;
  m.z.resize(static_cast<size_t>(a.dim_));
  m.zbar.resize(static_cast<size_t>(a.dim_));
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) {
      for (size_t j = 0; j < m.z.size(); ++j) {
        m.z[j] = ma.z[j] + mb.z[j];
        m.zbar[j] = ma.zbar[j] + mb.zbar[j];
      }
      r.add_term(m, ca * cb);
    }
  return r;
}

ConjPolynomial ConjPolynomial::pow(int n) const {
  if (n < 0) throw std::invalid_argument("negative polynomial power");
  ConjPolynomial r = constant(dim_, 1);
  for (int k = 0; k < n; ++k) r = r * *this;
  return r;
}

ConjPolynomial ConjPolynomial::d_dz(int j) const {
  if (j < 0 || j >= dim_) throw std::out_of_range("variable index out of range");
  ConjPolynomial r(dim_);
  for (const auto& [m, c] : terms_) {
    int e = m.z[static_cast<size_t>(j)];
    if (e == 0) continue;
    Monomial n = m;
    n.z[static_cast<size_t>(j)] = e - 1;
    r.add_term(n, c * Gaussian(e));
  }
  return r;
}

ConjPolynomial ConjPolynomial::d_dzbar(int j) const {
  if (j < 0 || j >= dim_) throw std::out_of_range("variable index out of range");
  ConjPolynomial r(dim_);
  for (const auto& [m, c] : terms_) {
    int e = m.zbar[static_cast<size_t>(j)];
    if (e == 0) continue;
    Monomial n = m;
    n.zbar[static_cast<size_t>(j)] = e - 1;
    r.add_term(n, c * Gaussian(e));
  }
  return r;
}

ConjPolynomial ConjPolynomial::derivative(const MultiIndex& J, const MultiIndex& K) const {
  // falling factorials applied termwise
  ConjPolynomial r(dim_);
  for (const auto& [m, c] : terms_) {
    Monomial n = m;
    Rational f = 1;
    bool vanishes = false;
    for (size_t j = 0; j < static_cast<size_t>(dim_) && !vanishes; ++j) {
      int dj = j < J.size() ? J[j] : 0;
      int kj = j < K.size() ? K[j] : 0;
      if (m.z[j] < dj || m.zbar[j] < kj) {
        vanishes = true;
        break;
      }
      for (int t = 0; t < dj; ++t) f *= m.z[j] - t;
      for (int t = 0; t < kj; ++t) f *= m.zbar[j] - t;
      n.z[j] -= dj;
      n.zbar[j] -= kj;
    }
    if (!vanishes) r.add_term(n, c * Gaussian(f));
  }
  return r;
}

ConjPolynomial ConjPolynomial::restrict_zero(const VarSet& vars) const {
  ConjPolynomial r(dim_);
  for (const auto& [m, c] : terms_) {
    bool keep = std::all_of(vars.begin(), vars.end(), [&](int j) {
      return m.z.at(static_cast<size_t>(j)) == 0 && m.zbar.at(static_cast<size_t>(j)) == 0;
    });
    if (keep) r.terms_.emplace(m, c);
  }
  return r;
}

ConjPolynomial ConjPolynomial::conj() const {
  ConjPolynomial r(dim_);
  for (const auto& [m, c] : terms_) r.terms_.emplace(Monomial{m.zbar, m.z}, c.conj());
  return r;
}

bool ConjPolynomial::is_real_valued() const { return conj() == *this; }

ConjPolynomial ConjPolynomial::rescaled(int j, const Gaussian& c) const {
  ConjPolynomial r(dim_);
  Gaussian cb = c.conj();
  for (const auto& [m, v] : terms_) {
    Gaussian f = gaussian_pow(c, m.z.at(static_cast<size_t>(j))) *
                 gaussian_pow(cb, m.zbar.at(static_cast<size_t>(j)));
    r.add_term(m, v * f);
  }
  return r;
}

ConjPolynomial ConjPolynomial::diagonal_part() const {
  ConjPolynomial r(dim_);
  for (const auto& [m, c] : terms_)
    if (m.is_diagonal()) r.terms_.emplace(m, c);
  return r;
}

ConjPolynomial ConjPolynomial::times_monomial(const MultiIndex& a, const MultiIndex& b) const {
  ConjPolynomial r(dim_);
  for (const auto& [m, c] : terms_) {
    Monomial n = m;
    for (size_t j = 0; j < n.z.size(); ++j) {
      n.z[j] += a.at(j);
      n.zbar[j] += b.at(j);
    }
    r.terms_.emplace(std::move(n), c);
  }
  return r;
}

int ConjPolynomial::bump_order(int j, int cap) const {
  auto idx = static_cast<size_t>(j);
  ConjPolynomial p = *this;
  for (int q = 0; q < cap; ++q) {
    if (p.is_zero()) return cap;
    // Chains z^{a+k} zbar^{b+k}; p is divisible by (1 - u) iff every chain
    // sums to zero, and the quotient holds the prefix sums.
    std::map<Monomial, std::vector<std::pair<int, Gaussian>>> chains;
    for (const auto& [m, c] : p.terms_) {
      int k = std::min(m.z[idx], m.zbar[idx]);
      Monomial base = m;
      base.z[idx] -= k;
      base.zbar[idx] -= k;
      chains[base].emplace_back(k, c);
    }
    ConjPolynomial quotient(dim_);
    for (auto& [base, levels] : chains) {
      std::sort(levels.begin(), levels.end(),
                [](const auto& x, const auto& y) { return x.first < y.first; });
      Gaussian total;
      for (const auto& [k, c] : levels) total += c;
      if (!total.is_zero()) return q;
      int top = levels.back().first;
      Gaussian prefix;
      size_t pos = 0;
      for (int k = 0; k < top; ++k) {
        while (pos < levels.size() && levels[pos].first == k) prefix += levels[pos++].second;
        Monomial m = base;
        m.z[idx] += k;
        m.zbar[idx] += k;
        quotient.add_term(m, prefix);
      }
    }
    p = std::move(quotient);
  }
  return cap;
}

int ConjPolynomial::degree_in(int j) const {
  int d = 0;
  for (const auto& [m, c] : terms_)
    d = std::max(d, m.z.at(static_cast<size_t>(j)) + m.zbar.at(static_cast<size_t>(j)));
  return d;
}

int ConjPolynomial::total_degree() const {
  int d = 0;
  for (const auto& [m, c] : terms_) {
    int s = std::accumulate(m.z.begin(), m.z.end(), 0) + std::accumulate(m.zbar.begin(), m.zbar.end(), 0);
    d = std::max(d, s);
  }
  return d;
}

// ---------------------------------------------------------------------------

LogPolynomial::LogPolynomial(const ConjPolynomial& p) : dim_(p.dimension()) {
  MultiIndex zero(static_cast<size_t>(dim_));
  for (const auto& [m, c] : p.terms()) terms_.emplace(Key{m, zero}, c);
}

LogPolynomial LogPolynomial::log_monomial(int dimension, MultiIndex logs, const Gaussian& c) {
  if (static_cast<int>(logs.size()) != dimension)
    throw std::invalid_argument("log exponent length differs from dimension");
  LogPolynomial r(dimension);
  MultiIndex zero(static_cast<size_t>(dimension));
  r.add_term({{zero, zero}, std::move(logs)}, c);
  return r;
}

LogPolynomial LogPolynomial::log_sum(const MultiIndex& weights) {
  int d = static_cast<int>(weights.size());
  LogPolynomial r(d);
  for (int j = 0; j < d; ++j) {
    if (weights[static_cast<size_t>(j)] == 0) continue;
    MultiIndex logs(static_cast<size_t>(d));
    logs[static_cast<size_t>(j)] = 1;
    r += log_monomial(d, logs, weights[static_cast<size_t>(j)]);
  }
  return r;
}

void LogPolynomial::add_term(const Key& k, const Gaussian& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(k, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

LogPolynomial& LogPolynomial::operator+=(const LogPolynomial& o) {
  if (o.is_zero()) return *this;
  if (is_zero() && dim_ == 0) dim_ = o.dim_;
  check_same_dimension(dim_, o.dim_);
  for (const auto& [k, c] : o.terms_) add_term(k, c);
  return *this;
}

LogPolynomial& LogPolynomial::operator*=(const Gaussian& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [k, v] : terms_) v *= c;
  return *this;
}

LogPolynomial operator*(const LogPolynomial& a, const LogPolynomial& b) {
  check_same_dimension(a.dim_, b.dim_);
  LogPolynomial r(a.dim_);
  for (const auto& [ka, ca] : a.terms_)
    for (const auto& [kb, cb] : b.terms_) {
      LogPolynomial::Key k = ka;
      for (size_t j = 0; j < k.logs.size(); ++j) {
        k.mono.z[j] += kb.mono.z[j];
        k.mono.zbar[j] += kb.mono.zbar[j];
        k.logs[j] += kb.logs[j];
      }
      r.add_term(k, ca * cb);
    }
  return r;
}

LogPolynomial operator*(const LogPolynomial& a, const ConjPolynomial& p) {
  return a * LogPolynomial(p);
}

LogPolynomial LogPolynomial::pow(int n) const {
  if (n < 0) throw std::invalid_argument("negative power");
  LogPolynomial r = log_monomial(dim_, MultiIndex(static_cast<size_t>(dim_)), 1);
  for (int k = 0; k < n; ++k) r = r * *this;
  return r;
}

// ---------------------------------------------------------------------------

ConjForm ConjForm::basis(int dimension, std::vector<int> dz, std::vector<int> dzbar,
                         const ConjPolynomial& coefficient) {
  ConjForm f(dimension);
  for (int j : dz)
    if (j < 0 || j >= dimension) throw std::out_of_range("dz index out of range");
  for (int j : dzbar)
    if (j < 0 || j >= dimension) throw std::out_of_range("dzbar index out of range");
  int s = sort_sign(dz) * sort_sign(dzbar);
  if (s == 0 || coefficient.is_zero()) return f;
  ConjPolynomial c = coefficient;
  if (s < 0) c = -c;
  f.add_term({std::move(dz), std::move(dzbar)}, c);
  return f;
}

ConjForm ConjForm::function(const ConjPolynomial& f) {
  return basis(f.dimension(), {}, {}, f);
}

ConjForm ConjForm::dz(int dimension, int j) {
  return basis(dimension, {j}, {}, ConjPolynomial::constant(dimension, 1));
}

ConjForm ConjForm::dzbar(int dimension, int j) {
  return basis(dimension, {}, {j}, ConjPolynomial::constant(dimension, 1));
}

std::optional<std::pair<int, int>> ConjForm::bidegree() const {
  std::optional<std::pair<int, int>> bd;
  for (const auto& [b, p] : terms_) {
    std::pair<int, int> here{static_cast<int>(b.dz.size()), static_cast<int>(b.dzbar.size())};
    if (bd && *bd != here) return std::nullopt;
    bd = here;
  }
  return bd;
}

int ConjForm::degree() const {
  auto bd = bidegree();
  return bd ? bd->first + bd->second : -1;
}

ConjPolynomial ConjForm::coefficient(const Basis& b) const {
  auto it = terms_.find(b);
  return it == terms_.end() ? ConjPolynomial(dim_) : it->second;
}

ConjPolynomial ConjForm::top_coefficient(const VarSet& vars) const {
  std::vector<int> v(vars.begin(), vars.end());
  return coefficient({v, v});
}

void ConjForm::add_term(const Basis& b, const ConjPolynomial& p) {
  if (p.is_zero()) return;
  check_same_dimension(dim_, p.dimension());
  auto [it, inserted] = terms_.try_emplace(b, p);
  if (!inserted) {
    it->second += p;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

ConjForm ConjForm::operator-() const {
  ConjForm r(dim_);
  for (const auto& [b, p] : terms_) r.terms_.emplace(b, -p);
  return r;
}

ConjForm& ConjForm::operator+=(const ConjForm& o) {
  if (o.is_zero()) return *this;
  if (is_zero() && dim_ == 0) dim_ = o.dim_;
  check_same_dimension(dim_, o.dim_);
  for (const auto& [b, p] : o.terms_) add_term(b, p);
  return *this;
}

ConjForm& ConjForm::operator-=(const ConjForm& o) { return *this += -o; }

ConjForm ConjForm::times(const ConjPolynomial& f) const {
  ConjForm r(dim_);
  for (const auto& [b, p] : terms_) r.add_term(b, p * f);
  return r;
}

ConjForm wedge(const ConjForm& a, const ConjForm& b) {
  check_same_dimension(a.dimension(), b.dimension());
  ConjForm r(a.dimension());
  for (const auto& [ba, pa] : a.terms())
    for (const auto& [bb, pb] : b.terms()) {
      // dz_A dzbar_B dz_C dzbar_D = (-1)^{|B||C|} dz_A dz_C dzbar_B dzbar_D
      int s = ((ba.dzbar.size() * bb.dz.size()) % 2) ? -1 : 1;
      std::vector<int> dz = ba.dz;
      dz.insert(dz.end(), bb.dz.begin(), bb.dz.end());
      std::vector<int> dzbar = ba.dzbar;
      dzbar.insert(dzbar.end(), bb.dzbar.begin(), bb.dzbar.end());
      s *= sort_sign(dz) * sort_sign(dzbar);
      if (s == 0) continue;
      ConjPolynomial c = pa * pb;
      if (s < 0) c = -c;
      r.add_term({std::move(dz), std::move(dzbar)}, c);
    }
  return r;
}

ConjForm ConjForm::dbar() const {
  ConjForm r(dim_);
  for (int j = 0; j < dim_; ++j) {
    ConjForm dj = map_coefficients([j](const ConjPolynomial& p) { return p.d_dzbar(j); });
    if (!dj.is_zero()) r += wedge(dzbar(dim_, j), dj);
  }
  return r;
}

ConjForm ConjForm::del() const {
  ConjForm r(dim_);
  for (int j = 0; j < dim_; ++j) {
    ConjForm dj = map_coefficients([j](const ConjPolynomial& p) { return p.d_dz(j); });
    if (!dj.is_zero()) r += wedge(dz(dim_, j), dj);
  }
  return r;
}

ConjForm ConjForm::conj() const {
  // conj(dz_A ^ dzbar_B) = dzbar_A ^ dz_B = (-1)^{|A||B|} dz_B ^ dzbar_A
  ConjForm r(dim_);
  for (const auto& [b, p] : terms_) {
    ConjPolynomial c = p.conj();
    if ((b.dz.size() * b.dzbar.size()) % 2) c = -c;
    r.add_term({b.dzbar, b.dz}, c);
  }
  return r;
}

ConjForm ConjForm::restrict_zero(const VarSet& vars) const {
  ConjForm r(dim_);
  for (const auto& [b, p] : terms_) {
    bool touches = std::any_of(vars.begin(), vars.end(), [&](int j) {
      return std::find(b.dz.begin(), b.dz.end(), j) != b.dz.end() ||
             std::find(b.dzbar.begin(), b.dzbar.end(), j) != b.dzbar.end();
    });
    if (touches) continue;
    r.add_term(b, p.restrict_zero(vars));
  }
  return r;
}

}  // namespace qmc
