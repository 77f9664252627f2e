#include "conelab/facelat.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include <boost/dynamic_bitset.hpp>

#include "conelab/io.hpp"

namespace conelab {

namespace {

std::vector<Vector> pick(const std::vector<Vector>& vs, const std::vector<std::size_t>& idx) {
  std::vector<Vector> out;
  out.reserve(idx.size());
  for (auto i : idx) out.push_back(vs[i]);
  return out;
}

nlohmann::json indices_json(const std::vector<std::size_t>& idx) {
  nlohmann::json out = nlohmann::json::array();
  for (auto i : idx) out.push_back(i);
  return out;
}

}  // namespace

Cone Face::as_cone() const {
  const std::size_t n = parent.ambient_dim();
  if (empty) throw EmptyFace("the empty face is not a cone");
  // F = K cut by the equations of its active facets; its facets come from the rest.
  const auto& half = parent.halfspaces();
  std::vector<Vector> equations = half.equations;
  std::vector<Vector> inequalities;
  for (std::size_t i = 0; i < half.inequalities.size(); ++i) {
    bool active = std::binary_search(active_set.begin(), active_set.end(), i);
    (active ? equations : inequalities).push_back(half.inequalities[i]);
  }
  return from_matching_sides({pick(parent.generators().rays, member_rays), parent.generators().lineality},
                             {std::move(inequalities), std::move(equations)}, n);
}

Matrix Face::orthogonal_basis() const {
  return orthogonal_complement(span_basis.row_vectors(), parent.ambient_dim());
}

nlohmann::json Face::to_json() const {
  nlohmann::json out{{"active_set", indices_json(active_set)},
                     {"member_rays", indices_json(member_rays)},
                     {"dim", dim()}};
  if (empty) out["empty"] = true;
  return out;
}

namespace {

using Bits = boost::dynamic_bitset<>;

// Ray/facet incidence of a cone, computed once.
struct Incidence {
  std::vector<Bits> rays_on_facet;  // per facet: the rays it vanishes on
  std::size_t ray_count = 0;

  explicit Incidence(const Cone& k) {
    const auto& ineqs = k.halfspaces().inequalities;
    const auto& rays = k.generators().rays;
    ray_count = rays.size();
    rays_on_facet.assign(ineqs.size(), Bits(ray_count));
    for (std::size_t i = 0; i < ineqs.size(); ++i) {
      for (std::size_t r = 0; r < ray_count; ++r) {
        if (dot(ineqs[i], rays[r]).is_zero()) rays_on_facet[i].set(r);
      }
    }
  }

  // Closure of an active set: the rays it cuts out, then every facet tight on them.
  std::pair<Bits, std::vector<std::size_t>> close(const std::vector<std::size_t>& active) const {
    Bits members(ray_count);
    members.set();
    for (auto i : active) members &= rays_on_facet[i];
    std::vector<std::size_t> closed;
    for (std::size_t i = 0; i < rays_on_facet.size(); ++i) {
      if (members.is_subset_of(rays_on_facet[i])) closed.push_back(i);
    }
    return {std::move(members), std::move(closed)};
  }
};

Face build_face(const Cone& k, const Bits& members, std::vector<std::size_t> closed) {
  const std::size_t n = k.ambient_dim();
  const auto& rays = k.generators().rays;
  Face f{k, std::move(closed), {}, Matrix(n), false};
  for (std::size_t r = 0; r < members.size(); ++r) {
    if (members.test(r)) f.member_rays.push_back(r);
  }
  std::vector<Vector> span = pick(rays, f.member_rays);
  span.insert(span.end(), k.generators().lineality.begin(), k.generators().lineality.end());
  f.span_basis = span_basis(span, n);
  return f;
}

}  // namespace

Face face_from_active_set(const Cone& k, std::vector<std::size_t> active) {
  Incidence inc(k);
  auto [members, closed] = inc.close(active);
  return build_face(k, members, std::move(closed));
}

std::vector<Face> enumerate_faces(const Cone& k, bool include_empty) {
  const std::size_t facets = k.halfspaces().inequalities.size();
  Incidence inc(k);
  std::vector<std::pair<Bits, std::vector<std::size_t>>> found;
  std::set<std::vector<std::size_t>> seen;
  std::deque<std::size_t> queue;
  found.push_back(inc.close({}));
  seen.insert(found.front().second);
  queue.push_back(0);
  while (!queue.empty()) {
    std::size_t at = queue.front();
    queue.pop_front();
    for (std::size_t i = 0; i < facets; ++i) {
      const auto& active = found[at].second;
      if (std::binary_search(active.begin(), active.end(), i)) continue;
      std::vector<std::size_t> next = active;
      next.insert(std::upper_bound(next.begin(), next.end(), i), i);
      auto closed = inc.close(next);
      if (seen.insert(closed.second).second) {
        found.push_back(std::move(closed));
        queue.push_back(found.size() - 1);
      }
    }
  }
  std::vector<Face> faces;
  faces.reserve(found.size());
  for (auto& [members, closed] : found) faces.push_back(build_face(k, members, std::move(closed)));
  std::sort(faces.begin(), faces.end(), [](const Face& a, const Face& b) {
    if (a.dim() != b.dim()) return a.dim() < b.dim();
    return a.active_set > b.active_set;
  });
  if (include_empty) {
    Face e{k, {}, {}, Matrix(k.ambient_dim()), true};
    for (std::size_t i = 0; i < facets; ++i) e.active_set.push_back(i);
    faces.push_back(std::move(e));
  }
  return faces;
}

Face minimal_face(const std::vector<Vector>& s, const Cone& k) {
  const auto& ineqs = k.halfspaces().inequalities;
  std::vector<std::size_t> active;
  for (const auto& x : s) {
    if (!contains(k, x)) throw NotMember("point is not in the cone");
  }
  for (std::size_t i = 0; i < ineqs.size(); ++i) {
    bool tight = std::all_of(s.begin(), s.end(), [&](const Vector& x) { return dot(ineqs[i], x).is_zero(); });
    if (tight) active.push_back(i);
  }
  return face_from_active_set(k, std::move(active));
}

bool is_subface(const Face& g, const Face& f) {
  if (g.empty) return true;
  if (f.empty) return false;
  return std::includes(g.active_set.begin(), g.active_set.end(), f.active_set.begin(),
                       f.active_set.end());
}

Face intersect_faces(const Face& f, const Face& g) {
  if (f.empty) return f;
  if (g.empty) return g;
  std::vector<std::size_t> active;
  std::set_union(f.active_set.begin(), f.active_set.end(), g.active_set.begin(), g.active_set.end(),
                 std::back_inserter(active));
  return face_from_active_set(f.parent, std::move(active));
}

Vector relative_interior_point(const Face& f) {
  if (f.empty) throw EmptyFace("the empty face has no relative interior");
  const auto& rays = f.parent.generators().rays;
  Vector x = zero_vector(f.parent.ambient_dim());
  for (auto r : f.member_rays) x = add(x, rays[r]);
  return x;
}

bool exposes(const Face& f, const Vector& u) {
  const Cone& k = f.parent;
  const auto& g = k.generators();
  for (const auto& l : g.lineality) {
    if (!dot(u, l).is_zero()) return false;
  }
  std::vector<std::size_t> zero;
  for (std::size_t r = 0; r < g.rays.size(); ++r) {
    int s = dot(u, g.rays[r]).sign();
    if (s < 0) return false;
    if (s == 0) zero.push_back(r);
  }
  if (f.empty) return false;
  return zero == f.member_rays;
}

ExposureCertificate is_exposed(const Face& f) {
  ExposureCertificate cert;
  const Cone& k = f.parent;
  const std::size_t n = k.ambient_dim();
  if (f.empty) {
    // Polyhedral cones contain 0 in every face, so only an empty-set
    // hyperplane could expose the empty face.
    cert.kind = ExposureCertificate::Kind::unexposed;
    cert.witness = "every supporting hyperplane of a cone passes through the apex";
    return cert;
  }
  const auto& ineqs = k.halfspaces().inequalities;
  Vector u = zero_vector(n);
  for (auto i : f.active_set) u = add(u, ineqs[i]);
  cert.improper = f.is_whole_cone();
  if (exposes(f, u)) {
    cert.normal = std::move(u);
    return cert;
  }
  // Fallback: a relative interior point of dual(K) cap F^perp.
  Cone normals = intersect(dual(k), Cone::from_halfspaces({}, f.span_basis.row_vectors(), n));
  Face top = face_from_active_set(normals, {});
  Vector w = relative_interior_point(top);
  if (exposes(f, w)) {
    cert.normal = std::move(w);
    return cert;
  }
  cert.kind = ExposureCertificate::Kind::unexposed;
  cert.witness = "the minimal face of the normal cone meets K in a strictly larger face";
  return cert;
}

CheckReport is_facially_exposed(const Cone& k) {
  CheckReport report;
  report.subject = k.name;
  report.check = "facially_exposed";
  for (const auto& f : enumerate_faces(k)) {
    ExposureCertificate cert = is_exposed(f);
    nlohmann::json w = f.to_json();
    if (cert.exposed()) {
      w["normal"] = to_json(cert.normal);
      if (cert.improper) w["improper"] = true;
    } else {
      w["reason"] = cert.witness;
    }
    report.add("face " + w["active_set"].dump(), cert.exposed(), std::move(w));
  }
  return report;
}

}  // namespace conelab
