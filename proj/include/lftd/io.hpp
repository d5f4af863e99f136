#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lftd/autgroup.hpp"
#include "lftd/lftdom.hpp"
#include "lftd/verify.hpp"

namespace lftd {

using Json = nlohmann::ordered_json;

/// {"rows": m, "cols": n, "re": [[...]], "im": [[...]]}. Doubles are written in
/// shortest round-trip form, so parse(dump(M)) reproduces M exactly.
Json matrix_to_json(const Matrix& m);
/// Throws InvalidArgument on malformed documents and NonFinite on NaN or infinity.
Matrix matrix_from_json(const Json& j);

/// {"space": "full" | {"basis": [matrix, ...]}, "C": matrix, "D": matrix, "Z0": matrix}.
DomainSpec domain_from_json(const Json& j, const Tolerance& tol);
Json domain_to_json(const DomainSpec& dom);

/// A bare array of matrices or {"path": [...]}.
std::vector<Matrix> path_from_json(const Json& j);

/// {"waypoints": [...], "factors": [{"M": matrix}, ...], "residual": r, ...}.
Json chain_to_json(const AutomorphismChain& chain);

Json report_to_json(const Report& report, bool include_timing);
std::string report_to_text(const Report& report, bool include_timing);

/// Parses JSON text; syntax errors become InvalidArgument.
Json parse_json(const std::string& text, const std::string& what);
Json read_json_file(const std::string& path);

}  // namespace lftd
