#pragma once

// Faces of polyhedral cones, identified by their active facet sets.

#include <optional>
#include <string>
#include <vector>

#include "conelab/cone.hpp"
#include "conelab/report.hpp"

namespace conelab {

/// A face of `parent`. Indices refer to parent.halfspaces().inequalities
/// (active_set) and parent.generators().rays (member_rays).
struct Face {
  Cone parent;
  std::vector<std::size_t> active_set;
  std::vector<std::size_t> member_rays;
  Matrix span_basis;   // RREF basis of span F
  bool empty = false;  // only produced on request by enumerate_faces

  std::size_t dim() const { return empty ? 0 : span_basis.rows(); }
  bool is_whole_cone() const { return !empty && active_set.empty(); }

  /// cone(member rays) + lineality of the parent.
  Cone as_cone() const;
  /// Basis of F^perp.
  Matrix orthogonal_basis() const;

  nlohmann::json to_json() const;
};

/// Face from an active set; the set is closed up to every facet tight on the face.
Face face_from_active_set(const Cone& k, std::vector<std::size_t> active);

/// All nonempty faces in order of increasing dimension, then by active set.
/// The empty face is appended last when requested.
std::vector<Face> enumerate_faces(const Cone& k, bool include_empty = false);

/// Smallest face of K containing every point of S. Throws NotMember.
Face minimal_face(const std::vector<Vector>& s, const Cone& k);

/// G is a face of F (both faces of the same cone).
bool is_subface(const Face& g, const Face& f);

/// F and G meet in a face of K; its active set is the closure of the union.
Face intersect_faces(const Face& f, const Face& g);

/// Sum of the member rays; zero for the lineality face.
Vector relative_interior_point(const Face& f);

struct ExposureCertificate {
  enum class Kind { exposed, unexposed };
  Kind kind = Kind::exposed;
  Vector normal;       // u in dual(K) with K cap u^perp == F
  bool improper = false;  // F == K, exposed by u = 0
  std::string witness;    // set when unexposed

  bool exposed() const { return kind == Kind::exposed; }
};

/// u in dual(K) and K cap u^perp == F, decided exactly.
bool exposes(const Face& f, const Vector& u);

ExposureCertificate is_exposed(const Face& f);

/// Runs is_exposed on every nonempty face.
CheckReport is_facially_exposed(const Cone& k);

}  // namespace conelab
