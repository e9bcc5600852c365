#pragma once

// JSON documents for every exchanged type.
//
//   algebra    {"blocks": [{"dim": n, "weight": w}, ...]}
//   operator   {"blocks": [ [[ [re, im], ... ], ...], ... ]}  row-major per block
//   linear map {"domain": algebra, "codomain": algebra,
//               "matrix": [[ [re, im], ... ], ...]}           row-major
//   problem    {"source": algebra, "target": algebra, "u_map": linear map}
//   instance   problem + {"ground_truth": linear map, "h": operator}
//
// Non-finite reals are written as null and read back as NaN (infinity for
// lower_bound_k). Parse failures throw ParseError with a JSON pointer.

#include <string>

#include <nlohmann/json.hpp>

#include "projext/algebra.hpp"
#include "projext/extension.hpp"
#include "projext/generators.hpp"
#include "projext/maps.hpp"
#include "projext/report.hpp"
#include "projext/surjectivity.hpp"

namespace projext {

using Json = nlohmann::json;

Json to_json(const AlgebraDescriptor& a);
AlgebraDescriptor algebra_from_json(const Json& j, const std::string& path = "");

Json to_json(const Operator& x);
Operator operator_from_json(const Json& j, const AlgebraDescriptor& algebra,
                            const std::string& path = "");

Json to_json(const LinearMapMatrix& m);
LinearMapMatrix linear_map_from_json(const Json& j,
                                     const std::string& path = "");

Json to_json(const BatteryReport& r);
BatteryReport battery_from_json(const Json& j, const std::string& path = "");

/// Witnesses carry their algebra: {"algebra": ..., "blocks": ...}.
Json to_json(const CertificateReport& c);
CertificateReport certificate_from_json(const Json& j,
                                        const std::string& path = "");

Json to_json(const ExtensionProblem& p);
ExtensionProblem problem_from_json(const Json& j, const std::string& path = "");

Json to_json(const ExtensionResult& r);
ExtensionResult result_from_json(const Json& j, const std::string& path = "");

Json to_json(const InstanceBundle& b);
InstanceBundle instance_from_json(const Json& j, const std::string& path = "");

Json to_json(const SurjectivityReport& r);

/// Parses text; syntax errors become ParseError at the document root.
Json parse_document(const std::string& text);

/// Deterministic text: keys sorted, two-space indentation, every non-integer
/// number printed with %.17g.
std::string dump_canonical(const Json& j);

}  // namespace projext
