#pragma once

// Facial dual completeness through restricted and projected duals.
//
// Chart convention: with B the RREF basis of span F, a point x in span F has
// coordinates c with x = sum_j c_j B_j, and a dual vector s is represented by
// (<B_j, s>)_j. Pairings are then the plain dot product of chart vectors.

#include <optional>
#include <vector>

#include "conelab/facelat.hpp"

namespace conelab {

/// F in chart coordinates.
Cone face_in_chart(const Face& f);

/// Dual of F computed inside span F, in chart coordinates.
Cone restricted_dual(const Face& f);

/// Image of dual(K) under s -> (<B_j, s>)_j.
Cone projected_dual(const Cone& k, const Face& f);

/// dual(K) + F^perp.
Cone sum_with_perp(const Cone& k, const Face& f);

struct FaceFdcRecord {
  Face face;
  Cone restricted;
  Cone projected;
  bool equal = false;
  bool perp_equal = false;         // sum_with_perp(K,F) == dual(F)
  std::optional<Vector> witness;   // chart generator of the restricted dual missing from the projection
};

struct FdcReport {
  std::vector<FaceFdcRecord> faces;  // nonempty proper faces, ordered like enumerate_faces
  bool verdict = true;
  bool characterizations_agree = true;

  nlohmann::json to_json() const;
};

FdcReport is_fdc(const Cone& k);

struct ExposingLift {
  Vector g;      // in dual(K), chart projection equal to u
  Scalar alpha;  // g = u0 + alpha * s
  Vector s;      // exposing normal of F used for the lift
};

/// Lifts u (chart coordinates, strictly positive on F minus the origin) to
/// g in dual(K) with the same chart projection. Throws NoLift when u fails
/// the preconditions.
ExposingLift find_exposing_lift(const Cone& k, const Face& f, const Vector& u);

struct ExposureClassification {
  bool facially_exposed = false;
  bool tangentially_exposed = false;
  bool lex_tangents_facially_exposed = false;
  bool strongly_tangentially_exposed = false;
  bool fdc = false;
  bool low_dim_faces_tangentially_exposed = false;  // faces of dimension < 2
  std::vector<std::string> violations;              // implications that failed

  bool consistent() const { return violations.empty(); }
  nlohmann::json to_json() const;
};

ExposureClassification classify_exposure(const Cone& k);

}  // namespace conelab
