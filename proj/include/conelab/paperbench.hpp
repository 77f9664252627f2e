#pragma once

// Sampled and exact verifiers for three curved (non-polyhedral) cones, each the
// homogenization cone{C x {1}} of a compact set C = conv(curves) in R^3:
//
//   roshchina: four circular arcs on [0, pi/4]
//   cubic:     twisted cubic (-s,-s^2,-s^3) and parabola (-t,t^2,0)
//   circles:   quarter circle at height 1 and half circle at height -1
//
// Every sampled certificate evaluates a closed form next to the direct inner
// product and requires agreement before it looks at the sign.

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "conelab/cone.hpp"
#include "conelab/report.hpp"

namespace conelab {

struct ParamCurve {
  std::string name;
  double a = 0.0;
  double b = 1.0;
  std::function<std::array<double, 3>(double)> eval;

  /// Exact point at a parameter in Q or Q(sqrt 7); empty for trigonometric curves.
  std::function<Vector(const Scalar&)> exact_eval;

  /// Exact point number k of n on a rational parameter grid covering the curve
  /// (or a slightly shorter piece of it when the endpoint is irrational). For
  /// circular arcs the grid is in the half-angle tangent m = tan(t/2), which
  /// keeps the points rational.
  std::function<Vector(std::size_t k, std::size_t n)> rational_point;

  bool exact_mode() const { return static_cast<bool>(exact_eval); }
};

std::vector<ParamCurve> roshchina_curves();
std::vector<ParamCurve> cubic_curves();
std::vector<ParamCurve> circle_curves();

struct BenchOptions {
  std::size_t samples = 2001;
  double tol = 1e-9;
  bool exact = true;  // polynomial identities in Q(sqrt 7) instead of float64
};

/// A zero-locus band: strict sign claims within this distance of a known zero
/// are relaxed to |value| <= tol.
inline constexpr double kZeroBand = 1e-6;

CheckReport verify_roshchina(const BenchOptions& opts = {});
CheckReport verify_cubic(const BenchOptions& opts = {});
CheckReport verify_circles(const BenchOptions& opts = {});

/// Runs one of the three verifiers by name ("roshchina", "cubic", "circles").
/// Throws std::invalid_argument for other names.
CheckReport verify_example(const std::string& name, const BenchOptions& opts = {});

/// cone{(x,1)} over n rational samples of every curve; duplicates removed.
Cone homogenize_and_sample(std::span<const ParamCurve> curves, std::size_t n);

/// Polar-side certificates of the cubic example that are exact in Q(sqrt 7):
/// (w,0) for F1, e3, the F11 normals and q(s) for s in {1/4,1/2,3/4,1}.
/// Each satisfies <g,x> <= 0 on the homogenized curves.
std::vector<std::pair<std::string, Vector>> cubic_polar_certificates();

/// Listed generators of the polar of the circles cone, sampled: the two
/// circular families at `per_family` points each plus the five fixed rays.
std::vector<std::array<double, 4>> circles_polar_generators(std::size_t per_family);

/// Every exact polar certificate lies in the polar of the sampled cone, for
/// each N in ns (cubic exactly, circles at tolerance `tol`).
CheckReport verify_sandwich(std::span<const std::size_t> ns, double tol = 1e-9);

/// {"example", "verdict", "conclusion", "tolerance", "certificates": [...]}.
nlohmann::json bench_json(const CheckReport& report);

}  // namespace conelab
