// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <array>
#include <chrono>
#include <functional>
#include <future>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <thread>

#include "qmc/continuation.hpp"
#include "qmc/fuzz.hpp"
#include "qmc/moments.hpp"
#include "qmc/oracle.hpp"
#include "qmc/residues.hpp"
#include "test_support.hpp"

using namespace qmc;
using test_support::uniform;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail << "first failure: " << what << "; ";
    pass = pass && ok;
  }
};

ExactValue pi_i(const Rational& c) { return {Gaussian(0, c), 1}; }

ConjPolynomial constant(int d, const Gaussian& c) { return ConjPolynomial::constant(d, c); }

FuzzConfig corpus_config() { return {3, 3, 3, 0, 0, 1}; }

Outcome golden_instance() {
  Outcome o;
  QMIntegrand w = QMIntegrand::from_psi({{1}, {1}}, ConjPolynomial::bump(1, 0, 2));
  Section s{{1}};
  CoefficientReport cont = laurent_coeffs(w, s);
  OracleLaurent ol = laurent(build_F(w, s));
  o.require(cont.coefficient(-1) == pi_i(-2), "continuation C-1");
  o.require(cont.coefficient(0) == pi_i(3), "continuation C0");
  o.require(ol.window.coefficient(-1) == pi_i(-2), "oracle C-1");
  o.require(ol.window.coefficient(0) == pi_i(3), "oracle C0");
  o.require(canonical_current(w) == pi_i(-2), "canonical current");
  CheckReport r = check_thm_aeppli(top_form(w.psi), w.pole, ConjForm::function(constant(1, 1)));
  o.require(r.pass && r.difference().is_zero(), "thm_aeppli difference");
  o.detail << "C-1 = " << to_text(cont.coefficient(-1)) << ", C0 = " << to_text(cont.coefficient(0))
           << ", canonical = " << to_text(canonical_current(w));
  return o;
}

std::vector<Instance> fuzz_corpus(int count, std::uint64_t seed) {
  std::vector<Instance> out;
  for (int i = 0; i < count; ++i) {
    auto rng = instance_rng(seed, static_cast<std::uint64_t>(i));
    out.push_back(assemble(random_problem(rng, corpus_config())));
  }
  return out;
}

Outcome pathway_agreement(const std::vector<Instance>& corpus) {
  Outcome o;
  int with_metric = 0, coefficients = 0;
  for (size_t i = 0; i < corpus.size(); ++i) {
    const Instance& inst = corpus[i];
    with_metric += !inst.omega.metric.is_zero();
    CoefficientReport cont = laurent_coeffs(inst.omega, inst.section);
    OracleLaurent ol = laurent(build_F(inst.omega, inst.section));
    for (int r = 0; r <= cont.kappa; ++r, ++coefficients)
      o.require(ExactValue(Gaussian(cont.o_s)) * cont.coefficient(-r) == ol.window.coefficient(-r),
                "instance " + std::to_string(i) + " C" + std::to_string(-r));
  }
  o.detail << corpus.size() << " instances (" << with_metric << " with a metric), " << coefficients
           << " coefficients compared";
  return o;
}

Outcome pole_structure(const std::vector<Instance>& corpus) {
  Outcome o;
  int vanishing = 0, audited = 0;
  for (size_t i = 0; i < corpus.size(); ++i) {
    const Instance& inst = corpus[i];
    const PoleData& pole = inst.omega.pole;
    std::string tag = "instance " + std::to_string(i);
    OracleF f = build_F(inst.omega, inst.section);
    OracleLaurent l = laurent(f);
    o.require(l.within_kappa && l.pole_order <= kappa(pole), tag + " pole order");
    int kap = kappa(pole), p = p_of(pole);
    auto g = g_derivative_table(inst.omega, inst.section.I, p - kap - 1);
    for (const auto& v : g) o.require(v.is_zero(), tag + " g-vanishing");
    vanishing += static_cast<int>(g.size());
    // poles are roots of linear factors with rational coefficients by construction
    for (const auto& pole_info : f.F.poles()) o.require(pole_info.order > 0, tag + " pole list");
    OracleF f0 = inst.omega.metric.is_zero() ? f : build_F(inst.omega.with_metric({}), inst.section);
    PoleAudit audit = pole_audit(f0.F, pole, inst.section);
    o.require(audit.all_satisfied(), tag + " pole bound");
    audited += static_cast<int>(audit.entries.size());
  }
  o.detail << corpus.size() << " instances, " << vanishing << " vanishing derivatives, " << audited
           << " poles audited";
  return o;
}

Outcome section_independence() {
  Outcome o;
  int n = 0, nonzero = 0;
  for (std::uint64_t i = 0; n < 60; ++i) {
    auto rng = instance_rng(404, i);
    ProblemData p = random_problem(rng, corpus_config());
    if (p.pole.polar_support().empty()) continue;
    if (i % 2 == 0) {
      // plant the monomial that feeds the leading coefficient
      MultiIndex a(p.pole.J.size()), b(a);
      for (size_t u = 0; u < a.size(); ++u) {
        bool both = p.pole.J[u] > 0 && p.pole.K[u] > 0;
        a[u] = both ? p.pole.J[u] - 1 : p.pole.J[u];
        b[u] = both ? p.pole.K[u] - 1 : p.pole.K[u];
      }
      p.numerator.add_term({a, b}, Gaussian(1, uniform(rng, -2, 2)));
    }
    Instance inst = assemble(p);
    Section alt = inst.section;
    for (int j : p.pole.polar_support()) alt.I[static_cast<size_t>(j)] = uniform(rng, 1, 4);
    if (alt == inst.section) alt.I[static_cast<size_t>(*p.pole.polar_support().begin())] += 1;
    int kap = kappa(p.pole);
    ExactValue a = laurent(build_F(inst.omega, inst.section)).window.coefficient(-kap);
    ExactValue b = laurent(build_F(inst.omega, alt)).window.coefficient(-kap);
    o.require(a == b, "instance " + std::to_string(i));
    o.require(a == canonical_current(inst.omega), "canonical current, instance " + std::to_string(i));
    nonzero += !a.is_zero();
    ++n;
  }
  o.detail << n << " instances with two sections, " << nonzero << " with a nonzero leading coefficient";
  return o;
}

/// Pole data with entries <= 3 of the requested kind.
PoleData random_pole(std::mt19937_64& rng, int d, const std::string& kind) {
  PoleData pole = PoleData::none(d);
  for (size_t u = 0; u < static_cast<size_t>(d); ++u) {
    if (kind == "general") {
      pole.J[u] = uniform(rng, 0, 3) * uniform(rng, 0, 1);
      pole.K[u] = uniform(rng, 0, 3) * uniform(rng, 0, 1);
    } else if (kind == "equal" && uniform(rng, 0, 1)) {
      pole.J[u] = uniform(rng, 1, 3);
      pole.K[u] = uniform(rng, 1, 3);
    }
  }
  if (kind == "single") {
    auto u = static_cast<size_t>(uniform(rng, 0, d - 1));
    pole.J[u] = uniform(rng, 1, 3);
    pole.K[u] = uniform(rng, 1, 3);
  }
  return pole;
}

MultiIndex bump_for(const PoleData& pole, int extra) {
  MultiIndex q(pole.J.size());
  for (size_t u = 0; u < q.size(); ++u) q[u] = pole.J[u] + pole.K[u] + extra;
  return q;
}

struct IdentityTally {
  int thm_residue = 0, thm_aeppli = 0, thm_aeppli2 = 0, cor_main = 0, aeppli_poincare = 0, semi = 0;
  int nonzero = 0;
};

Outcome identity_suite() {
  Outcome o;
  IdentityTally t;
  auto record = [&](const CheckReport& r, int& counter, std::uint64_t seed) {
    o.require(r.pass && r.difference().is_zero(), r.check + " seed " + std::to_string(seed));
    t.nonzero += !r.lhs.is_zero();
    ++counter;
  };
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    std::mt19937_64 rng(seed * 7919 + 1);
    int d = uniform(rng, 1, 3);

    // <dbar[alpha], xi> = <[dbar alpha], xi> + 2 pi i int Res(alpha ^ xi)
    {
      int j = uniform(rng, 0, d - 1), m = uniform(rng, 1, 3);
      int p = uniform(rng, 0, d), q = uniform(rng, 0, d - 1);
      ConjForm alpha = test_support::random_form(rng, d, p, q, 3);
      MultiIndex qb(static_cast<size_t>(d), 2);
      qb[static_cast<size_t>(j)] = m + 2;
      ConjForm xi = test_support::random_form(rng, d, d - p, d - q - 1, 3).times(test_support::bumps(d, qb));
      if (alpha.is_zero()) alpha = ConjForm::basis(d, test_support::random_subset(rng, d, p),
                                                   test_support::random_subset(rng, d, q), constant(d, 1));
      record(check_thm_residue({alpha, j, m}, xi), t.thm_residue, seed);
    }
    // polar forms against random bump test functions
    auto test_function = [&](const PoleData& pole) {
      return ConjForm::function(test_support::random_polynomial(rng, d, 3) * test_support::bumps(d, bump_for(pole, uniform(rng, 0, 1))));
    };
    {
      PoleData pole = random_pole(rng, d, "single");
      ConjForm num = top_form(test_support::random_polynomial(rng, d, 3));
      record(check_thm_aeppli(num, pole, test_function(pole)), t.thm_aeppli, seed);
    }
    {
      PoleData pole = random_pole(rng, d, "general");
      ConjForm num = top_form(test_support::random_polynomial(rng, d, 3));
      record(check_thm_aeppli2(num, pole, test_function(pole)), t.thm_aeppli2, seed);
    }
    {
      PoleData pole = random_pole(rng, d, "equal");
      ConjForm num = top_form(test_support::random_polynomial(rng, d, 3));
      record(check_cor_main(num, pole, test_function(pole)), t.cor_main, seed);
    }
    {
      int j = uniform(rng, 0, d - 1), m = uniform(rng, 1, 3);
      ConjForm top = ConjForm::basis(d, test_support::random_subset(rng, d, d), {}, constant(d, 1));
      ConjPolynomial a = test_support::random_polynomial(rng, d, 3);
      ConjPolynomial b(d);
      ConjPolynomial source = test_support::random_polynomial(rng, d, 3);
      for (const auto& [mono, c] : source.terms())
        b.add_term({mono.z, MultiIndex(static_cast<size_t>(d))}, c);
      record(check_aeppli_poincare({top.times(a), j, m}, {top.times(b), j, 1}), t.aeppli_poincare, seed);
    }
    {
      PoleData pole = random_pole(rng, d, "general");
      int j = uniform(rng, 0, d - 1);
      auto u = static_cast<size_t>(j);
      (uniform(rng, 0, 1) ? pole.J[u] : pole.K[u]) = 0;
      (pole.J[u] == 0 ? pole.K[u] : pole.J[u]) = uniform(rng, 1, 3);
      ConjPolynomial psi = test_support::random_polynomial(rng, d, 5, 6);
      auto rep = res_aeppli(representative(top_form(psi), pole), j);
      o.require(rep.form.is_zero(), "semi-meromorphic seed " + std::to_string(seed));
      ++t.semi;
    }
  }
  int least = std::min({t.thm_residue, t.thm_aeppli, t.thm_aeppli2, t.cor_main, t.aeppli_poincare, t.semi});
  o.require(least >= 50, "fewer than 50 instances for some identity");
  o.detail << "thm_residue " << t.thm_residue << ", thm_aeppli " << t.thm_aeppli << ", thm_aeppli2 " << t.thm_aeppli2
           << ", cor_main " << t.cor_main << ", aeppli_poincare " << t.aeppli_poincare << ", semi-meromorphic "
           << t.semi << "; " << t.nonzero << " checks with a nonzero side";
  return o;
}

Outcome metric_dependence() {
  Outcome o;
  int instances = 0, checks = 0, closed_forms = 0;
  int by_kappa[3] = {0, 0, 0};
  for (std::uint64_t i = 0; instances < 30; ++i) {
    auto rng = instance_rng(606, i);
    int kap = 1 + static_cast<int>(i % 2);
    FuzzConfig cfg{3, 3, 3, 0, 0, 1};
    ProblemShape shape{true, true, kap, uniform(rng, kap, 3)};
    ProblemData p = random_problem(rng, cfg, shape);
    p.metric = random_metric(rng, p.dimension);
    Instance inst = assemble(p);
    if (kappa(inst.omega.pole) != kap) continue;
    for (const auto& r : check_metric_dependence(inst.omega.with_metric({}), inst.section, p.metric)) {
      o.require(r.pass, r.check + " instance " + std::to_string(i));
      ++checks;
      closed_forms += r.check == "metric_residue_C-1" || r.check == "metric_slope_C0";
    }
    ++by_kappa[kap];
    ++instances;
  }
  o.require(by_kappa[1] > 0 && by_kappa[2] > 0, "both kappa values covered");
  o.detail << instances << " instances (kappa 1: " << by_kappa[1] << ", kappa 2: " << by_kappa[2] << "), " << checks
           << " checks, " << closed_forms << " of them kappa = 1 closed forms";
  return o;
}

ExactValue canonical_pairing(const ConjPolynomial& xi, int m, int n) {
  return canonical_current(QMIntegrand::from_psi({{m}, {n}}, xi));
}

Outcome current_algebra() {
  Outcome o;
  int numerators = 0, identities = 0;
  for (std::uint64_t seed = 0; seed < 24; ++seed) {
    std::mt19937_64 rng(seed + 1000);
    ConjPolynomial xi = test_support::random_polynomial(rng, 1, 4, 5) * ConjPolynomial::bump(1, 0, uniform(rng, 6, 8));
    for (int m = 1; m <= 3; ++m)
      for (int n = 1; n <= 3; ++n) {
        std::string tag = "seed " + std::to_string(seed) + " m=" + std::to_string(m) + " n=" + std::to_string(n);
        ConjPolynomial zm = ConjPolynomial::monomial(1, {m}, {0}, 1);
        o.require(canonical_pairing(zm * xi, m, n).is_zero(), tag + " annihilation");
        ++identities;
        if (m >= 2 && n >= 2) {
          o.require(canonical_pairing(ConjPolynomial::z(1, 0) * xi, m, n) == canonical_pairing(xi, m - 1, n),
                    tag + " z-multiplication");
          ++identities;
        }
      }
    ++numerators;
  }
  o.detail << numerators << " numerators, " << identities << " identities";
  return o;
}

Outcome foundations() {
  Outcome o;
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    std::mt19937_64 rng(seed + 2000);
    ConjPolynomial psi = test_support::random_polynomial(rng, 1, 3) * ConjPolynomial::bump(1, 0, uniform(rng, 3, 5));
    LogPolynomial L = LogPolynomial::log_monomial(1, {1}, 1) * psi.d_dz(0).d_dzbar(0);
    // psi(0) = -(1/(2 pi i)) int log|z|^2 d^2 psi / dz dzbar
    o.require(integrate_logpoly(L) == pi_i(-2) * ExactValue(psi.constant_term()), "Cauchy-Green seed " + std::to_string(seed));
  }
  std::vector<std::array<int, 3>> per_variable;
  for (int I = 0; I <= 3; ++I)
    for (int J = 0; J <= 3; ++J)
      for (int K = 0; K <= 3; ++K)
        if (I > 0 || J + K == 0) per_variable.push_back({I, J, K});
  const long n = static_cast<long>(per_variable.size());
  long lemma = 0;
  for (int d = 1; d <= 3; ++d) {
    long count = 1;
    for (int k = 0; k < d; ++k) count *= n;
    unsigned workers = std::max(1u, std::thread::hardware_concurrency());
    std::vector<std::future<long>> parts;
    for (unsigned w = 0; w < workers; ++w) {
      parts.push_back(std::async(std::launch::async, [&, w, d, count] {
        for (long index = w; index < count; index += workers) {
          MultiIndex I, J, K;
          for (long rest = index, k = 0; k < d; ++k, rest /= n) {
            const auto& v = per_variable[static_cast<size_t>(rest % n)];
            I.push_back(v[0]);
            J.push_back(v[1]);
            K.push_back(v[2]);
          }
          if (!verify_lemma_multi(I, J, K)) return index;
        }
        return -1L;
      }));
    }
    for (auto& part : parts) {
      long bad = part.get();
      o.require(bad < 0, "h-factor identity d=" + std::to_string(d) + " index " + std::to_string(bad));
    }
    lemma += count;
  }
  o.detail << "25 Cauchy-Green instances, " << lemma << " (I, J, K) triples";
  return o;
}

}  // namespace

int main() {
  auto corpus = fuzz_corpus(200, 42);
  std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"worked instance", golden_instance},
      {"pathway agreement", [&] { return pathway_agreement(corpus); }},
      {"pole structure at the origin", [&] { return pole_structure(corpus); }},
      {"section independence", section_independence},
      {"residue identity suite", identity_suite},
      {"metric dependence", metric_dependence},
      {"current algebra", current_algebra},
      {"foundations", foundations},
  };
  bool all = true;
  for (size_t i = 0; i < criteria.size(); ++i) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "exception: " << e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << i + 1 << " (" << criteria[i].first
              << "): " << o.detail.str() << " [" << std::fixed << std::setprecision(2) << secs << "s]" << std::endl;
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
