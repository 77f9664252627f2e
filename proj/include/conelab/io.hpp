#pragma once

// JSON forms of scalars, vectors and cones.
//
// Rationals are strings "p/q" (or "p"); quadratic scalars are objects
// {"a":"p/q","b":"p/q","d":7}. A cone file carries "ambient_dim" plus any of
// "rays", "lineality", "inequalities", "equations"; arrays that are absent
// mean that side was not provided.

#include <filesystem>
#include <string>

#include <json.hpp>

#include "conelab/cone.hpp"

namespace conelab {

nlohmann::json to_json(const Scalar& x);
nlohmann::json to_json(const Vector& x);
nlohmann::json to_json(const std::vector<Vector>& xs);

/// `path` is the JSON pointer of `j`, used in ParseError messages.
Scalar scalar_from_json(const nlohmann::json& j, const std::string& path);
Vector vector_from_json(const nlohmann::json& j, std::size_t n, const std::string& path);

/// "rational" or "quadratic(d)".
std::string field_name(const Cone& k);

/// Both canonical sides.
nlohmann::json cone_to_json(const Cone& k);
Cone cone_from_json(const nlohmann::json& j);
Cone read_cone_file(const std::filesystem::path& path);

}  // namespace conelab
