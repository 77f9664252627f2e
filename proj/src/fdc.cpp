#include "conelab/fdc.hpp"

#include <algorithm>

#include "conelab/io.hpp"
#include "conelab/parallel.hpp"
#include "conelab/tangents.hpp"

namespace conelab {

namespace {

std::vector<Vector> to_chart(const std::vector<Vector>& xs, const Matrix& basis) {
  std::vector<Vector> out;
  out.reserve(xs.size());
  for (const auto& x : xs) out.push_back(chart_coordinates(x, basis));
  return out;
}

}  // namespace

Cone face_in_chart(const Face& f) {
  if (f.empty) throw EmptyFace("chart of the empty face");
  const auto& g = f.parent.generators();
  std::vector<Vector> rays;
  for (auto r : f.member_rays) rays.push_back(g.rays[r]);
  // A normal a pulls back to the chart as (<a, B_j>)_j; the active ones vanish there.
  const auto& ineqs = f.parent.halfspaces().inequalities;
  std::vector<Vector> chart_normals;
  for (std::size_t i = 0; i < ineqs.size(); ++i) {
    if (!std::binary_search(f.active_set.begin(), f.active_set.end(), i)) {
      chart_normals.push_back(f.span_basis.apply(ineqs[i]));
    }
  }
  return from_matching_sides({to_chart(rays, f.span_basis), to_chart(g.lineality, f.span_basis)},
                             {std::move(chart_normals), {}}, f.span_basis.rows());
}

Cone restricted_dual(const Face& f) { return dual(face_in_chart(f)); }

Cone projected_dual(const Cone& k, const Face& f) {
  if (f.empty) throw EmptyFace("projection onto the span of the empty face");
  return linear_image(dual(k), f.span_basis);
}

Cone sum_with_perp(const Cone& k, const Face& f) {
  if (f.empty) throw EmptyFace("perp of the empty face");
  return minkowski_sum(dual(k), Cone::subspace(f.orthogonal_basis().row_vectors(), k.ambient_dim()));
}

nlohmann::json FdcReport::to_json() const {
  nlohmann::json out;
  out["verdict"] = verdict;
  out["characterizations_agree"] = characterizations_agree;
  out["faces"] = nlohmann::json::array();
  for (const auto& r : faces) {
    nlohmann::json j{{"active_set", r.face.to_json()["active_set"]},
                     {"equal", r.equal},
                     {"witness", r.witness ? conelab::to_json(*r.witness) : nlohmann::json(nullptr)}};
    out["faces"].push_back(std::move(j));
  }
  return out;
}

FdcReport is_fdc(const Cone& k) {
  FdcReport report;
  std::vector<Face> faces;
  for (auto& f : enumerate_faces(k)) {
    if (!f.is_whole_cone()) faces.push_back(std::move(f));
  }
  std::vector<std::optional<FaceFdcRecord>> records(faces.size());
  parallel_for(faces.size(), [&](std::size_t i) {
    const Face& f = faces[i];
    FaceFdcRecord r{f, restricted_dual(f), projected_dual(k, f), false, false, std::nullopt};
    r.equal = equals(r.restricted, r.projected);
    if (!r.equal) {
      for (const auto& g : r.restricted.generators().rays) {
        if (!contains(r.projected, g)) {
          r.witness = g;
          break;
        }
      }
    }
    r.perp_equal = equals(sum_with_perp(k, f), dual(f.as_cone()));
    records[i] = std::move(r);
  });
  for (auto& r : records) {
    report.verdict = report.verdict && r->equal;
    report.characterizations_agree = report.characterizations_agree && (r->equal == r->perp_equal);
    report.faces.push_back(std::move(*r));
  }
  return report;
}

ExposingLift find_exposing_lift(const Cone& k, const Face& f, const Vector& u) {
  const Matrix& basis = f.span_basis;
  const std::size_t m = basis.rows();
  const std::size_t n = k.ambient_dim();
  if (u.size() != m) throw DimensionMismatch("u must have one coordinate per span basis vector");
  const auto& gen = k.generators();

  // u must be positive on every ray of F and vanish nowhere else on F.
  if (!gen.lineality.empty() && m > 0) throw NoLift("F contains a line, so u^perp meets F");
  for (auto r : f.member_rays) {
    if (dot(u, chart_coordinates(gen.rays[r], basis)).sign() <= 0) {
      throw NoLift("u is not strictly positive on F minus the origin");
    }
  }

  ExposureCertificate exposure = is_exposed(f);
  if (!exposure.exposed()) throw NoLift("F is not exposed");
  const Vector& s = exposure.normal;

  // u0 in span F with <B_j, u0> = u_j.
  Vector u0 = zero_vector(n);
  if (m > 0) {
    Matrix gram(m);
    for (std::size_t i = 0; i < m; ++i) {
      Vector row;
      for (std::size_t j = 0; j < m; ++j) row.push_back(dot(basis.row(i), basis.row(j)));
      gram.push_back(std::move(row));
    }
    Vector lambda = solve(gram, u);
    for (std::size_t j = 0; j < m; ++j) u0 = add(u0, scale(basis.row(j), lambda[j]));
  }

  // Ratio test over the rays outside F, where <s, r> > 0.
  Scalar alpha(0);
  for (const auto& r : gen.rays) {
    Scalar sr = dot(s, r);
    if (sr.is_zero()) continue;
    Scalar need = -dot(u0, r) / sr;
    if (need > alpha) alpha = need;
  }
  Vector g = add(u0, scale(s, alpha));
  if (!contains(dual(k), g)) throw NoLift("lift left the dual cone");
  return ExposingLift{std::move(g), std::move(alpha), s};
}

nlohmann::json ExposureClassification::to_json() const {
  return {{"facially_exposed", facially_exposed},
          {"tangentially_exposed", tangentially_exposed},
          {"lex_tangents_facially_exposed", lex_tangents_facially_exposed},
          {"strongly_tangentially_exposed", strongly_tangentially_exposed},
          {"fdc", fdc},
          {"low_dim_faces_tangentially_exposed", low_dim_faces_tangentially_exposed},
          {"consistent", consistent()},
          {"violations", violations}};
}

ExposureClassification classify_exposure(const Cone& k) {
  ExposureClassification c;
  c.facially_exposed = is_facially_exposed(k).passed();

  CheckReport tangential = is_tangentially_exposed(k);
  c.tangentially_exposed = tangential.passed();
  c.low_dim_faces_tangentially_exposed = std::all_of(
      tangential.certificates.begin(), tangential.certificates.end(), [](const Certificate& cert) {
        return cert.witness.at("face_dim").get<std::size_t>() >= 2 || cert.status != Status::fail;
      });

  TangentFamily family = lex_tangent_family(k);
  c.lex_tangents_facially_exposed = true;
  for (const auto& [key, member] : family.members()) {
    if (!is_facially_exposed(member).passed()) c.lex_tangents_facially_exposed = false;
  }
  c.strongly_tangentially_exposed = is_strongly_tangentially_exposed(family).passed();
  c.fdc = is_fdc(k).verdict;

  if (c.strongly_tangentially_exposed && !c.fdc) c.violations.push_back("strong tangential exposure without FDC");
  if (c.fdc && !c.tangentially_exposed) c.violations.push_back("FDC without tangential exposure");
  if (c.facially_exposed && !c.low_dim_faces_tangentially_exposed) {
    c.violations.push_back("facially exposed but a face of dimension < 2 is not tangentially exposed");
  }
  return c;
}

}  // namespace conelab
