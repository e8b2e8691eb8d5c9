#pragma once

#include <json.hpp>

#include "silt/path_algebra.hpp"
#include "silt/silting.hpp"

namespace silt {

using Json = nlohmann::ordered_json;

/// "Q" (default) or "fp:<prime>".
Field parse_field(const std::string& s);
std::string field_to_string(const Field& f);

/// Algebra files: {field, quiver{vertices, arrows[{name,from,to}]},
/// relations[[{coef, path[arrow names, rightmost applied first]}]],
/// composition:"right_to_left"[, max_path_length]}.
PathAlgebraPtr algebra_from_json(const Json& j, std::optional<Field> field_override = std::nullopt);
Json algebra_to_json(const PathAlgebra& a);

/// Complex files: {terms: degree -> [{vertex, mult}], differentials:
/// degree -> matrix of path linear combinations}. Owners must be path
/// algebras (input complexes live over the loaded algebra).
ProjComplex complex_from_json(const Json& j, const PathAlgebraPtr& a);
Json complex_to_json(const ProjComplex& x);

/// Silting files: either a single complex or {summands: [complex...]}.
std::vector<ProjComplex> silting_summands_from_json(const Json& j, const PathAlgebraPtr& a);
Json silting_to_json(const SiltingObject& t);

/// Module files: {dims per vertex, action matrix per arrow}.
FdModule module_from_json(const Json& j, const PathAlgebraPtr& a);
Json module_to_json(const FdModule& m);
/// {modules: [module...]} or a single module object.
std::vector<FdModule> modules_from_json(const Json& j, const PathAlgebraPtr& a);

Json load_json_file(const std::string& path);

/// FNV-1a 64-bit digest, hex; deterministic input fingerprints for reports.
std::string content_digest(const std::string& bytes);

} // namespace silt
