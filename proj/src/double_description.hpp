#pragma once

#include <span>
#include <vector>

#include "conelab/exact.hpp"

namespace conelab::detail {

struct ExtremeRays {
  std::vector<Vector> rays;       // one representative per extreme ray of the pointed part
  std::vector<Vector> lineality;  // a basis of the lineality space
};

/// Double description method for {x : <a,x> >= 0 (a in inequalities),
/// <e,x> = 0 (e in equations)} in R^n.
ExtremeRays extreme_rays(std::span<const Vector> inequalities, std::span<const Vector> equations,
                         std::size_t n);

}  // namespace conelab::detail
