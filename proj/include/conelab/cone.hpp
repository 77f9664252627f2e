#pragma once

// Polyhedral cones with lazily synchronized generator and halfspace sides.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "conelab/exact.hpp"

namespace conelab {

/// cone(rays) + span(lineality)
struct Generators {
  std::vector<Vector> rays;
  std::vector<Vector> lineality;
  friend bool operator==(const Generators&, const Generators&) = default;
};

/// {x : <a,x> >= 0 for a in inequalities, <e,x> = 0 for e in equations}
struct Halfspaces {
  std::vector<Vector> inequalities;
  std::vector<Vector> equations;
  friend bool operator==(const Halfspaces&, const Halfspaces&) = default;
};

/// Lineality basis in reduced row echelon form, pointed-part rays reduced
/// modulo the lineality space and sorted, and the same for equations and facet
/// normals. Two cones are equal as sets iff their canonical forms are equal.
struct CanonicalForm {
  Generators generators;
  Halfspaces halfspaces;

  friend bool operator==(const CanonicalForm&, const CanonicalForm&) = default;
  /// Deterministic text key, suitable for ordered containers.
  std::string key() const;
};

class Cone {
 public:
  /// The trivial cone {0} in R^0.
  Cone();

  static Cone from_generators(std::vector<Vector> rays, std::vector<Vector> lineality,
                              std::size_t n);
  static Cone from_halfspaces(std::vector<Vector> inequalities, std::vector<Vector> equations,
                              std::size_t n);
  static Cone full_space(std::size_t n) { return from_halfspaces({}, {}, n); }
  static Cone zero(std::size_t n) { return from_generators({}, {}, n); }
  /// The subspace span(basis) as a cone with full lineality.
  static Cone subspace(std::vector<Vector> basis, std::size_t n) {
    return from_generators({}, std::move(basis), n);
  }

  std::size_t ambient_dim() const;

  /// The sides supplied at construction (or by a conversion), if any.
  const std::optional<Generators>& given_generators() const;
  const std::optional<Halfspaces>& given_halfspaces() const;

  /// Minimal canonical descriptions; computed on first use and cached.
  const Generators& generators() const;
  const Halfspaces& halfspaces() const;
  const CanonicalForm& canonical() const;
  /// Both sides are available without running a conversion.
  bool is_converted() const;

  std::string name;

 private:
  struct State;
  explicit Cone(std::shared_ptr<State> state);
  std::shared_ptr<State> state_;

  friend Cone dd_convert(const Cone& k);
  friend Cone dual(const Cone& k);
  friend Cone polar(const Cone& k);
  friend Cone make_converted(CanonicalForm form, std::size_t n);
  friend Cone from_matching_sides(Generators gen, Halfspaces half, std::size_t n);
};

/// Builds a cone from two descriptions already known to agree, without a
/// conversion. `gen` must include every extreme ray and `half` every facet;
/// redundant entries are pruned by incidence and rank.
Cone from_matching_sides(Generators gen, Halfspaces half, std::size_t n);

/// Returns a cone with both sides populated, minimal and canonical.
Cone dd_convert(const Cone& k);

/// {s : <s,x> >= 0 for all x in K}
Cone dual(const Cone& k);

/// Cone specialization of the polar set {s : <s,x> <= 1}: {s : <s,x> <= 0},
/// that is, the negative of the dual.
Cone polar(const Cone& k);

Cone intersect(const Cone& k1, const Cone& k2);
Cone minkowski_sum(const Cone& k1, const Cone& k2);

/// {A x : x in K} for A with K.ambient_dim() columns.
Cone linear_image(const Cone& k, const Matrix& a);

struct PointedDecomposition {
  Matrix lineality;  // basis of the lineality space L
  Cone pointed;      // C, contained in the orthogonal complement of L
  bool certified;    // C is pointed, C is orthogonal to L, and C + L == K
};

PointedDecomposition decompose_pointed(const Cone& k);

/// Exact membership; uses the supplied halfspace side when there is one.
bool contains(const Cone& k, const Vector& x);
bool equals(const Cone& k1, const Cone& k2);
std::size_t dim(const Cone& k);
std::size_t lineality_dim(const Cone& k);
bool is_pointed(const Cone& k);

}  // namespace conelab
