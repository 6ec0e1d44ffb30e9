#pragma once

#include <string>

#include <json.hpp>

#include "normlab/claims.hpp"

namespace normlab {

// Insertion-ordered JSON keeps reports byte-stable and readable.
using json = nlohmann::ordered_json;

// {"n": 2, "re": [[...],[...]], "im": [[...],[...]]}; "im" omitted means
// an all-zero imaginary part.
json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const json& j);
HermitianMatrix hermitian_from_json(const json& j);

json function_to_json(const ScalarFunction& f);
ScalarFunction function_from_json(const json& j);

json norm_spec_to_json(const NormSpec& s);
NormSpec norm_spec_from_json(const json& j);

// {"claim": "...", "f": {...}, "terms": [{"A": {...}, "Z": {...}}, ...]}
// with "Z" omitted meaning the identity; optional "k" for eq9.
json instance_to_json(const Instance& inst);
Instance instance_from_json(const json& j);

json certificate_to_json(const UnitaryCertificate& c);
json verdict_to_json(const Verdict& v);

json load_json_file(const std::string& path);
void write_json_file(const std::string& path, const json& j);

}  // namespace normlab
