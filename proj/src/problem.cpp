#include "qmc/problem.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <sstream>

#include "qmc/continuation.hpp"
#include "qmc/oracle.hpp"

namespace qmc {

const std::vector<std::string> kTaskNames = {"laurent", "canonical", "pv", "aeppli", "dolbeault",
                                             "verify-all", "pole-audit", "metric-dependence"};

namespace {

CheckReport flag_report(std::string name, bool pass, std::string note = {}) {
  CheckReport r;
  r.check = std::move(name);
  r.pass = pass;
  r.note = std::move(note);
  return r;
}

const Json& required(const Json& j, const std::string& key) {
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(key, "missing field");
  return *it;
}

Json window_json(const LaurentWindow& w) { return to_json(w); }

std::string coefficient_name(int order) { return "C" + std::to_string(order); }

}  // namespace

ProblemFile problem_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("$", "problem file must be a JSON object");
  ProblemFile pf;
  const Json& dim = required(j, "dimension");
  if (!dim.is_number_integer() || dim.get<int>() < 1) throw ParseError("dimension", "expected a positive integer");
  int d = dim.get<int>();
  pf.data.dimension = d;
  pf.data.section.I = multi_index_from_json(required(j, "section_exponents"), "section_exponents", d);
  pf.data.pole.J = multi_index_from_json(required(j, "holo_pole"), "holo_pole", d);
  pf.data.pole.K = multi_index_from_json(required(j, "anti_pole"), "anti_pole", d);
  pf.data.numerator = polynomial_from_json(required(j, "numerator"), "numerator", d);
  pf.data.bump_exponents = multi_index_from_json(required(j, "bump_exponents"), "bump_exponents", d);
  pf.data.metric = j.contains("metric_weight") ? polynomial_from_json(j["metric_weight"], "metric_weight", d)
                                               : ConjPolynomial(d);
  if (j.contains("tasks")) {
    const Json& t = j["tasks"];
    if (!t.is_array()) throw ParseError("tasks", "expected an array of task names");
    for (size_t i = 0; i < t.size(); ++i) {
      std::string path = "tasks[" + std::to_string(i) + "]";
      if (!t[i].is_string()) throw ParseError(path, "expected a string");
      std::string name = t[i].get<std::string>();
      if (std::find(kTaskNames.begin(), kTaskNames.end(), name) == kTaskNames.end())
        throw ParseError(path, "unknown task \"" + name + "\"");
      pf.tasks.push_back(name);
    }
  }
  if (j.contains("truncation")) {
    if (!j["truncation"].is_number_integer() || j["truncation"].get<int>() < 0)
      throw ParseError("truncation", "expected a non-negative integer");
    pf.truncation = j["truncation"].get<int>();
  }
  if (j.contains("dolbeault")) {
    const Json& dj = j["dolbeault"];
    if (!dj.is_object()) throw ParseError("dolbeault", "expected an object");
    DolbeaultData dd;
    if (dj.contains("variable")) {
      if (!dj["variable"].is_number_integer() || dj["variable"].get<int>() < 1 || dj["variable"].get<int>() > d)
        throw ParseError("dolbeault.variable", "expected a 1-based variable index");
      dd.variable = dj["variable"].get<int>() - 1;
    }
    if (!dj.contains("pole_order") || !dj["pole_order"].is_number_integer() || dj["pole_order"].get<int>() < 0)
      throw ParseError("dolbeault.pole_order", "expected a non-negative integer");
    dd.pole_order = dj["pole_order"].get<int>();
    if (!dj.contains("alpha")) throw ParseError("dolbeault.alpha", "missing field");
    if (!dj.contains("xi")) throw ParseError("dolbeault.xi", "missing field");
    dd.alpha = form_from_json(dj["alpha"], "dolbeault.alpha", d);
    dd.xi = form_from_json(dj["xi"], "dolbeault.xi", d);
    pf.dolbeault = std::move(dd);
  }
  return pf;
}

Json to_json(const ProblemFile& p) {
  Json j;
  j["dimension"] = p.data.dimension;
  j["section_exponents"] = p.data.section.I;
  j["holo_pole"] = p.data.pole.J;
  j["anti_pole"] = p.data.pole.K;
  j["numerator"] = to_json(p.data.numerator);
  j["bump_exponents"] = p.data.bump_exponents;
  j["metric_weight"] = to_json(p.data.metric);
  j["tasks"] = p.tasks;
  if (p.truncation >= 0) j["truncation"] = p.truncation;
  if (p.dolbeault) {
    Json dj;
    dj["variable"] = p.dolbeault->variable + 1;
    dj["pole_order"] = p.dolbeault->pole_order;
    dj["alpha"] = to_json(p.dolbeault->alpha);
    dj["xi"] = to_json(p.dolbeault->xi);
    j["dolbeault"] = std::move(dj);
  }
  return j;
}

ProblemFile load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, "cannot open file");
  std::stringstream buffer;
  buffer << in.rdbuf();
  std::string text = buffer.str();
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    size_t byte = std::min(e.byte, text.size());
    size_t line = 1 + static_cast<size_t>(std::count(text.begin(), text.begin() + static_cast<long>(byte), '\n'));
    size_t last_nl = text.rfind('\n', byte == 0 ? 0 : byte - 1);
    size_t column = last_nl == std::string::npos ? byte : byte - last_nl - 1;
    throw ParseError(path + ":" + std::to_string(line) + ":" + std::to_string(column), "invalid JSON");
  }
  return problem_from_json(j);
}

bool all_pass(const std::vector<CheckReport>& reports) {
  return std::all_of(reports.begin(), reports.end(), [](const CheckReport& r) { return r.pass; });
}

std::vector<CheckReport> verify_instance(const ProblemData& data, const std::optional<DolbeaultData>& dolbeault) {
  Instance inst = assemble(data);
  const QMIntegrand& w = inst.omega;
  const Section& s = inst.section;
  const PoleData& pole = w.pole;
  int d = w.dimension();
  int kap = kappa(pole);
  int p = p_of(pole);
  std::vector<CheckReport> out;

  CoefficientReport cont = laurent_coeffs(w, s);
  OracleF of = build_F(w, s);
  OracleLaurent ol = laurent(of);
  ExactValue o(Gaussian(cont.o_s));
  for (int r = kap; r >= 0; --r)
    out.push_back(make_report("pathway_agreement[" + coefficient_name(-r) + "]", o * cont.coefficient(-r),
                              ol.window.coefficient(-r)));
  out.push_back(flag_report("pole_order_at_zero", ol.within_kappa,
                            "order " + std::to_string(ol.pole_order) + ", kappa " + std::to_string(kap)));

  auto g = g_derivative_table(w, s.I, p - kap - 1);
  for (size_t k = 0; k < g.size(); ++k)
    out.push_back(make_report("g_vanishing[k=" + std::to_string(k) + "]", g[k], {}));

  OracleF f0 = w.metric.is_zero() ? of : build_F(w.with_metric({}), s);
  PoleAudit audit = pole_audit(f0.F, pole, s);
  out.push_back(flag_report("pole_bound", audit.all_satisfied()));
  out.push_back(flag_report("lemma_multi", verify_lemma_multi(s.I, pole.J, pole.K)));

  ExactValue canonical = canonical_current(w);
  out.push_back(make_report("canonical_vs_leading[I]", canonical, ol.window.coefficient(-kap)));
  Section alt = s;
  for (int j : pole.polar_support()) alt.I[static_cast<size_t>(j)] += 1;
  if (!(alt == s)) {
    OracleLaurent alt_l = laurent(build_F(w, alt));
    out.push_back(make_report("canonical_vs_leading[I']", canonical, alt_l.window.coefficient(-kap)));
  }

  ConjForm top = top_form(w.psi);
  ConjForm one = ConjForm::function(ConjPolynomial::constant(d, 1));
  out.push_back(check_thm_aeppli2(top, pole, one));
  if (pole.holomorphic_support() == pole.anti_support()) out.push_back(check_cor_main(top, pole, one));
  if (pole.polar_support().size() == 1 && kap == 1) out.push_back(check_thm_aeppli(top, pole, one));
  for (int j : pole.polar_support()) {
    if (pole.two_sided(j)) continue;
    auto rep = res_aeppli(representative(top, pole), j);
    out.push_back(flag_report("semi_meromorphic_residue[z" + std::to_string(j + 1) + "]", rep.form.is_zero()));
  }
  if (pole.holomorphic_support() == pole.anti_support() && kap >= 1 && !w.metric.is_zero()) {
    auto md = check_metric_dependence(w.with_metric({}), s, w.metric);
    out.insert(out.end(), md.begin(), md.end());
  }

  QMIntegrand wc = w;
  std::swap(wc.pole.J, wc.pole.K);
  wc.psi = w.psi.conj();
  RationalFunctionLambda conj_expected = of.F.conj();
  if (d % 2) conj_expected *= ExactValue(Gaussian(-1));
  out.push_back(flag_report("conjugation_symmetry", (build_F(wc, s).F - conj_expected).is_zero()));

  if (dolbeault)
    out.push_back(check_thm_residue({dolbeault->alpha, dolbeault->variable, dolbeault->pole_order}, dolbeault->xi));
  return out;
}

RunResult run_problem(const ProblemFile& problem, const RunOptions& options) {
  Instance inst = assemble(problem.data);
  const QMIntegrand& w = inst.omega;
  const Section& s = inst.section;
  RunResult result;
  Json tasks = Json::array();

  for (const auto& task : problem.tasks) {
    auto start = std::chrono::steady_clock::now();
    Json t;
    t["task"] = task;
    bool pass = true;
    if (task == "laurent") {
      CoefficientReport cont = laurent_coeffs(w, s);
      OracleF of = build_F(w, s, problem.truncation);
      OracleLaurent ol = laurent(of);
      t["kappa"] = cont.kappa;
      t["p"] = cont.p;
      t["o_s"] = cont.o_s;
      t["continuation"] = window_json(cont.window);
      t["oracle"] = window_json(ol.window);
      t["oracle_pole_order"] = ol.pole_order;
      t["F"] = to_json(of.F);
      ExactValue o(Gaussian(cont.o_s));
      for (int r = cont.kappa; r >= 0 && pass; --r)
        pass = o * cont.coefficient(-r) == ol.window.coefficient(-r);
      pass = pass && ol.within_kappa;
      t["pathways_agree"] = pass;
    } else if (task == "canonical") {
      ExactValue v = canonical_current(w);
      t["value"] = to_json(v);
      t["text"] = to_text(v);
    } else if (task == "pv") {
      ExactValue v = principal_value(w, s);
      t["value"] = to_json(v);
      t["text"] = to_text(v);
    } else if (task == "aeppli") {
      ConjForm top = top_form(w.psi);
      ConjForm one = ConjForm::function(ConjPolynomial::constant(w.dimension(), 1));
      VarSet E = w.pole.two_sided_support();
      t["stratum"] = std::vector<int>();
      for (int j : E) t["stratum"].push_back(j + 1);
      t["representative"] = to_json(res_aeppli_iter(representative(top, w.pole), E));
      std::vector<CheckReport> checks{check_thm_aeppli2(top, w.pole, one)};
      if (w.pole.holomorphic_support() == w.pole.anti_support()) checks.push_back(check_cor_main(top, w.pole, one));
      if (w.pole.polar_support().size() == 1 && E.size() == 1) checks.push_back(check_thm_aeppli(top, w.pole, one));
      t["checks"] = Json::array();
      for (const auto& c : checks) t["checks"].push_back(to_json(c));
      pass = all_pass(checks);
    } else if (task == "dolbeault") {
      if (!problem.dolbeault) throw ParseError("dolbeault", "task \"dolbeault\" needs a \"dolbeault\" section");
      const auto& dd = *problem.dolbeault;
      PolarForm alpha{dd.alpha, dd.variable, dd.pole_order};
      PolarForm product{wedge(dd.alpha, dd.xi), dd.variable, dd.pole_order};
      bool front = std::all_of(dd.alpha.terms().begin(), dd.alpha.terms().end(), [&](const auto& term) {
        const auto& dz = term.first.dz;
        return std::find(dz.begin(), dz.end(), dd.variable) != dz.end();
      });
      t["residue_alpha"] = front ? to_json(res_dolbeault(alpha)) : Json(nullptr);
      t["residue_alpha_xi"] = to_json(res_dolbeault(product));
      CheckReport c = check_thm_residue(alpha, dd.xi);
      t["check"] = to_json(c);
      pass = c.pass;
    } else if (task == "verify-all") {
      auto checks = verify_instance(problem.data, problem.dolbeault);
      t["checks"] = Json::array();
      for (const auto& c : checks) t["checks"].push_back(to_json(c));
      pass = all_pass(checks);
    } else if (task == "pole-audit") {
      OracleF f0 = build_F(w.with_metric({}), s);
      PoleAudit audit = pole_audit(f0.F, w.pole, s);
      t["audit"] = to_json(audit);
      pass = audit.all_satisfied();
    } else if (task == "metric-dependence") {
      auto checks = check_metric_dependence(w.with_metric({}), s, w.metric);
      t["checks"] = Json::array();
      for (const auto& c : checks) t["checks"].push_back(to_json(c));
      pass = all_pass(checks);
    }
    t["pass"] = pass;
    if (options.timing) {
      auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
      t["elapsed_ms"] = ms;
    }
    result.pass = result.pass && pass;
    tasks.push_back(std::move(t));
  }
  result.report["tasks"] = std::move(tasks);
  result.report["pass"] = result.pass;
  return result;
}

namespace {

std::string exact_text(const Json& j) { return to_text(exact_from_json(j, "report")); }

void render_check(std::ostringstream& os, const Json& c) {
  os << "  " << (c["pass"].get<bool>() ? "PASS " : "FAIL ") << c["check"].get<std::string>();
  if (!c["lhs"].empty() || !c["rhs"].empty())
    os << ": " << exact_text(c["lhs"]) << " vs " << exact_text(c["rhs"]);
  if (c.contains("note")) os << " (" << c["note"].get<std::string>() << ")";
  os << "\n";
}

void render_window(std::ostringstream& os, const std::string& label, const Json& w) {
  os << "  " << label << ":";
  for (const auto& c : w["coefficients"])
    os << " C" << c["order"].get<int>() << " = " << c["text"].get<std::string>() << ";";
  os << "\n";
}

}  // namespace

std::string render_text(const Json& report) {
  std::ostringstream os;
  for (const auto& t : report["tasks"]) {
    std::string name = t["task"].get<std::string>();
    os << name << (t["pass"].get<bool>() ? "" : "  [FAIL]") << "\n";
    if (name == "laurent") {
      os << "  kappa = " << t["kappa"] << ", p = " << t["p"] << ", o(s) = " << t["o_s"] << "\n";
      render_window(os, "continuation (bare)", t["continuation"]);
      render_window(os, "oracle (times o(s))", t["oracle"]);
    } else if (name == "canonical" || name == "pv") {
      os << "  value = " << t["text"].get<std::string>() << "\n";
    } else if (name == "dolbeault") {
      render_check(os, t["check"]);
    } else if (name == "pole-audit") {
      const Json& a = t["audit"];
      os << "  bound = " << (a["bound"].is_null() ? "none" : a["bound"].get<std::string>()) << "\n";
      for (const auto& p : a["poles"])
        os << "  pole at " << p["location"].get<std::string>() << " of order " << p["order"] << " "
           << (p["bound_satisfied"].get<bool>() ? "ok" : "VIOLATES BOUND") << "\n";
    }
    if (t.contains("checks"))
      for (const auto& c : t["checks"]) render_check(os, c);
    if (t.contains("elapsed_ms")) os << "  elapsed_ms = " << t["elapsed_ms"] << "\n";
  }
  os << (report["pass"].get<bool>() ? "PASS" : "FAIL") << "\n";
  return os.str();
}

}  // namespace qmc
