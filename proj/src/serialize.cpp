#include "qmc/serialize.hpp"

namespace qmc {

namespace {

std::string at(const std::string& path, const std::string& key) { return path + "." + key; }
std::string at(const std::string& path, size_t i) { return path + "[" + std::to_string(i) + "]"; }

const Json& field(const Json& obj, const std::string& path, const std::string& key) {
  if (!obj.is_object()) throw ParseError(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(at(path, key), "missing field");
  return *it;
}

Json index_list(const std::vector<int>& v) {
  Json out = Json::array();
  for (int j : v) out.push_back(j + 1);
  return out;
}

void put_coefficient(Json& term, const Gaussian& c) {
  term["re"] = to_string(c.re());
  term["im"] = to_string(c.im());
}

Gaussian term_coefficient(const Json& term, const std::string& path) {
  Rational re = term.contains("re") ? rational_from_json(term["re"], at(path, "re")) : Rational(0);
  Rational im = term.contains("im") ? rational_from_json(term["im"], at(path, "im")) : Rational(0);
  return {re, im};
}

std::vector<int> index_list_from_json(const Json& j, const std::string& path, int dimension) {
  if (!j.is_array()) throw ParseError(path, "expected an array of 1-based indices");
  std::vector<int> out;
  for (size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number_integer()) throw ParseError(at(path, i), "expected an integer");
    int v = j[i].get<int>();
    if (v < 1 || v > dimension) throw ParseError(at(path, i), "index out of range 1.." + std::to_string(dimension));
    out.push_back(v - 1);
  }
  return out;
}

}  // namespace

Json to_json(const Rational& r) { return to_string(r); }

Json to_json(const Gaussian& g) {
  Json out;
  put_coefficient(out, g);
  return out;
}

Json to_json(const ExactValue& v) {
  Json out = Json::array();
  for (const auto& [k, c] : v.terms()) {
    Json t;
    t["pi_power"] = k;
    put_coefficient(t, c);
    out.push_back(std::move(t));
  }
  return out;
}

Json to_json(const ConjPolynomial& p) {
  Json out = Json::array();
  for (const auto& [m, c] : p.terms()) {
    Json t;
    t["z"] = m.z;
    t["zbar"] = m.zbar;
    put_coefficient(t, c);
    out.push_back(std::move(t));
  }
  return out;
}

Json to_json(const ConjForm& f) {
  Json out = Json::array();
  for (const auto& [b, p] : f.terms())
    for (const auto& [m, c] : p.terms()) {
      Json t;
      t["dz"] = index_list(b.dz);
      t["dzbar"] = index_list(b.dzbar);
      t["z"] = m.z;
      t["zbar"] = m.zbar;
      put_coefficient(t, c);
      out.push_back(std::move(t));
    }
  return out;
}

Json to_json(const LaurentWindow& w) {
  Json out;
  out["lowest_order"] = w.lowest_order();
  out["validity_order"] = w.validity_order();
  Json coeffs = Json::array();
  for (int k = w.lowest_order(); k <= w.validity_order(); ++k) {
    Json c;
    c["order"] = k;
    c["value"] = to_json(w.coefficient(k));
    c["text"] = to_text(w.coefficient(k));
    coeffs.push_back(std::move(c));
  }
  out["coefficients"] = std::move(coeffs);
  return out;
}

Json to_json(const RationalFunctionLambda& f) {
  Json out = Json::array();
  RationalFunctionLambda normalized = f.normalized();
  for (const auto& t : normalized.terms()) {
    Json term;
    Json num = Json::array();
    for (const auto& c : t.numerator.coefficients()) num.push_back(to_json(c));
    term["numerator"] = std::move(num);
    Json roots = Json::array();
    for (const auto& lf : t.denominator) roots.push_back(to_string(lf.root()));
    term["denominator_roots"] = std::move(roots);
    out.push_back(std::move(term));
  }
  return out;
}

Json to_json(const CheckReport& r) {
  Json out;
  out["check"] = r.check;
  out["lhs"] = to_json(r.lhs);
  out["rhs"] = to_json(r.rhs);
  out["difference"] = to_json(r.difference());
  out["pass"] = r.pass;
  if (!r.note.empty()) out["note"] = r.note;
  return out;
}

Json to_json(const ResidueRepresentative& r) {
  Json out;
  out["base"] = index_list(std::vector<int>(r.base.begin(), r.base.end()));
  out["form"] = to_json(r.form);
  out["residual_holo_pole"] = r.residual_pole.J;
  out["residual_anti_pole"] = r.residual_pole.K;
  return out;
}

Json to_json(const PoleAudit& a) {
  Json out;
  out["bound"] = a.bound ? Json(to_string(*a.bound)) : Json(nullptr);
  Json poles = Json::array();
  for (const auto& e : a.entries) {
    Json p;
    p["location"] = to_string(e.location);
    p["order"] = e.order;
    p["bound_satisfied"] = e.bound_satisfied;
    poles.push_back(std::move(p));
  }
  out["poles"] = std::move(poles);
  out["pass"] = a.all_satisfied();
  return out;
}

Rational rational_from_json(const Json& j, const std::string& path) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (!j.is_string()) throw ParseError(path, "expected a rational string \"p/q\"");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw ParseError(path, e.what());
  }
}

Gaussian gaussian_from_json(const Json& j, const std::string& path) {
  if (!j.is_object()) throw ParseError(path, "expected {\"re\", \"im\"}");
  return term_coefficient(j, path);
}

ExactValue exact_from_json(const Json& j, const std::string& path) {
  if (!j.is_array()) throw ParseError(path, "expected a list of {pi_power, re, im}");
  ExactValue v;
  for (size_t i = 0; i < j.size(); ++i) {
    std::string p = at(path, i);
    const Json& k = field(j[i], p, "pi_power");
    if (!k.is_number_integer() || k.get<int>() < 0) throw ParseError(at(p, "pi_power"), "expected a non-negative integer");
    v += ExactValue(term_coefficient(j[i], p), k.get<int>());
  }
  return v;
}

MultiIndex multi_index_from_json(const Json& j, const std::string& path, int dimension) {
  if (!j.is_array()) throw ParseError(path, "expected an array");
  if (static_cast<int>(j.size()) != dimension)
    throw ParseError(path, "length " + std::to_string(j.size()) + " != dimension " + std::to_string(dimension));
  MultiIndex out;
  for (size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number_integer()) throw ParseError(at(path, i), "expected an integer");
    int v = j[i].get<int>();
    if (v < 0) throw ParseError(at(path, i), "negative entry");
    out.push_back(v);
  }
  return out;
}

ConjPolynomial polynomial_from_json(const Json& j, const std::string& path, int dimension) {
  if (!j.is_array()) throw ParseError(path, "expected a list of terms");
  ConjPolynomial p(dimension);
  for (size_t i = 0; i < j.size(); ++i) {
    std::string tp = at(path, i);
    MultiIndex a = multi_index_from_json(field(j[i], tp, "z"), at(tp, "z"), dimension);
    MultiIndex b = multi_index_from_json(field(j[i], tp, "zbar"), at(tp, "zbar"), dimension);
    p.add_term({a, b}, term_coefficient(j[i], tp));
  }
  return p;
}

ConjForm form_from_json(const Json& j, const std::string& path, int dimension) {
  if (!j.is_array()) throw ParseError(path, "expected a list of form terms");
  ConjForm f(dimension);
  for (size_t i = 0; i < j.size(); ++i) {
    std::string tp = at(path, i);
    auto dz = index_list_from_json(field(j[i], tp, "dz"), at(tp, "dz"), dimension);
    auto dzbar = index_list_from_json(field(j[i], tp, "dzbar"), at(tp, "dzbar"), dimension);
    MultiIndex a = multi_index_from_json(field(j[i], tp, "z"), at(tp, "z"), dimension);
    MultiIndex b = multi_index_from_json(field(j[i], tp, "zbar"), at(tp, "zbar"), dimension);
    auto coef = ConjPolynomial::monomial(dimension, a, b, term_coefficient(j[i], tp));
    f += ConjForm::basis(dimension, dz, dzbar, coef);
  }
  return f;
}

}  // namespace qmc
