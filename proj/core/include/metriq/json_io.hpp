#pragma once

#include <metriq/ext/json.hpp>

#include "metriq/abelian.hpp"
#include "metriq/cyclotomic.hpp"
#include "metriq/metric.hpp"

namespace metriq {

// Serialization schemas:
//   cyclotomic : {"order": n, "coeffs": [[exponent, numerator, denominator], ...], "str": "..."}
//                with exponents strictly increasing and only nonzero coefficients listed
//   metric     : {"orders": [...], "modulus": M, "q": [...]} plus optional "chi": [...]
//   subgroup   : {"generators": [[...], ...], "order": n}
//                (the parser only requires "generators")
// All emitters produce objects with lexicographically sorted keys.

nlohmann::json cyclotomic_to_json(const Cyclotomic& c);
Cyclotomic cyclotomic_from_json(const nlohmann::json& j);

nlohmann::json metric_to_json(const MetricGroup& m);
MetricGroup metric_from_json(const nlohmann::json& j);

nlohmann::json ribbon_to_json(const RibbonPointedData& r);
// Reads {"orders","modulus","q"} with optional "chi"; chi_exp empty when absent.
bool json_has_chi(const nlohmann::json& j);
RibbonPointedData ribbon_from_json(const nlohmann::json& j);

nlohmann::json subgroup_to_json(const Subgroup& s);
Subgroup subgroup_from_json(const FinAbGroup& g, const nlohmann::json& j);

} // namespace metriq
