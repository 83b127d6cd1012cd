#pragma once

// JSON encodings.  Rationals are strings "p/q"; variable indices in dz/dzbar
// lists are 1-based.

#include <json.hpp>
#include <string>

#include "qmc/continuation.hpp"
#include "qmc/oracle.hpp"
#include "qmc/residues.hpp"

namespace qmc {

using Json = nlohmann::ordered_json;

/// Thrown for malformed input; `path` names the offending JSON field.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string path, const std::string& message)
      : std::runtime_error(path + ": " + message), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

Json to_json(const Rational& r);
Json to_json(const Gaussian& g);
Json to_json(const ExactValue& v);
Json to_json(const ConjPolynomial& p);
Json to_json(const ConjForm& f);
Json to_json(const LaurentWindow& w);
Json to_json(const RationalFunctionLambda& f);
Json to_json(const CheckReport& r);
Json to_json(const ResidueRepresentative& r);
Json to_json(const PoleAudit& a);

Rational rational_from_json(const Json& j, const std::string& path);
Gaussian gaussian_from_json(const Json& j, const std::string& path);
ExactValue exact_from_json(const Json& j, const std::string& path);
MultiIndex multi_index_from_json(const Json& j, const std::string& path, int dimension);
ConjPolynomial polynomial_from_json(const Json& j, const std::string& path, int dimension);
ConjForm form_from_json(const Json& j, const std::string& path, int dimension);

}  // namespace qmc
