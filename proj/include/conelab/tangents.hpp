#pragma once

// Tangent and normal cones at faces, tangential exposure, and the family of
// iterated (lexicographic) tangent cones.

#include <map>
#include <string>
#include <vector>

#include "conelab/facelat.hpp"

namespace conelab {

/// T(F;K) = {d : <a_i,d> >= 0 for i in active(F)} together with the equations of K.
Cone tangent_cone(const Cone& k, const Face& f);

/// N(F;K) = polar(T(F;K)).
Cone normal_cone(const Cone& k, const Face& f);

/// T(G';T(F;K)) for a face G' of the tangent cone.
Cone second_order_tangent(const Cone& k, const Face& f, const Face& g_in_tangent);

/// For every face F != K and every nonempty face G of F, compares
/// T(G;K) cap span F with T(G;F). One certificate per pair; the witness names
/// both active sets, dim F, and for failures a generator on the larger side.
CheckReport is_tangentially_exposed(const Cone& k);

struct TangentFamily {
  // levels[k] maps canonical keys to cones; levels[0] == {K}.
  std::vector<std::map<std::string, Cone>> levels;
  std::size_t depth = 0;
  bool stabilized = false;

  /// The last level, i.e. the whole family once stabilized.
  const std::map<std::string, Cone>& members() const { return levels.back(); }
  nlohmann::json to_json() const;
};

/// Iterates tangent formation to a fixed point. Throws DepthBoundViolated if
/// the depth would exceed dim(K).
TangentFamily lex_tangent_family(const Cone& k);
std::size_t tangential_depth(const Cone& k);

/// Tangential exposure of every member of the (stabilized) family.
CheckReport is_strongly_tangentially_exposed(const Cone& k);
CheckReport is_strongly_tangentially_exposed(const TangentFamily& family);

}  // namespace conelab
