#include "conelab/tangents.hpp"

#include <algorithm>

#include "conelab/io.hpp"
#include "conelab/parallel.hpp"

namespace conelab {

namespace {

nlohmann::json indices_json(const std::vector<std::size_t>& idx) {
  nlohmann::json out = nlohmann::json::array();
  for (auto i : idx) out.push_back(i);
  return out;
}

// First generator of `bigger` (rays, then lineality in both directions) that
// is outside `smaller`, if any.
std::optional<Vector> escaping_generator(const Cone& bigger, const Cone& smaller) {
  const auto& g = bigger.generators();
  for (const auto& r : g.rays)
    if (!contains(smaller, r)) return r;
  for (const auto& l : g.lineality) {
    if (!contains(smaller, l)) return l;
    if (!contains(smaller, negate(l))) return negate(l);
  }
  return std::nullopt;
}

}  // namespace

Cone tangent_cone(const Cone& k, const Face& f) {
  if (f.empty) throw EmptyFace("tangent cone at the empty face");
  const auto& ineqs = k.halfspaces().inequalities;
  std::vector<Vector> active;
  active.reserve(f.active_set.size());
  for (auto i : f.active_set) active.push_back(ineqs[i]);
  // Generators of K + span(F): the rays of K, with those of F turned into lines.
  const auto& gen = k.generators();
  std::vector<Vector> lines = gen.lineality;
  for (auto r : f.member_rays) lines.push_back(gen.rays[r]);
  Cone t = from_matching_sides({gen.rays, std::move(lines)},
                               {std::move(active), k.halfspaces().equations}, k.ambient_dim());
  t.name = "T(" + indices_json(f.active_set).dump() + ";" + k.name + ")";
  return t;
}

Cone normal_cone(const Cone& k, const Face& f) {
  Cone nc = polar(tangent_cone(k, f));
  nc.name = "N(" + indices_json(f.active_set).dump() + ";" + k.name + ")";
  return nc;
}

Cone second_order_tangent(const Cone& k, const Face& f, const Face& g_in_tangent) {
  Cone t = tangent_cone(k, f);
  if (!equals(g_in_tangent.parent, t)) {
    throw std::invalid_argument("second face must be a face of the first tangent cone");
  }
  return tangent_cone(g_in_tangent.parent, g_in_tangent);
}

CheckReport is_tangentially_exposed(const Cone& k) {
  CheckReport report;
  report.subject = k.name;
  report.check = "tangentially_exposed";
  const std::size_t n = k.ambient_dim();
  std::vector<Face> faces = enumerate_faces(k);

  struct Pair {
    std::size_t f, g;
  };
  std::vector<Pair> pairs;
  for (std::size_t fi = 0; fi < faces.size(); ++fi) {
    if (faces[fi].is_whole_cone()) continue;
    for (std::size_t gi = 0; gi < faces.size(); ++gi) {
      if (is_subface(faces[gi], faces[fi])) pairs.push_back({fi, gi});
    }
  }

  std::vector<Cone> face_cones(faces.size());
  parallel_for(faces.size(), [&](std::size_t i) {
    face_cones[i] = faces[i].as_cone();
    face_cones[i].canonical();
  });

  std::vector<Certificate> results(pairs.size());
  parallel_for(pairs.size(), [&](std::size_t p) {
    const Face& f = faces[pairs[p].f];
    const Face& g = faces[pairs[p].g];
    const Cone& f_cone = face_cones[pairs[p].f];

    std::vector<Vector> active;
    for (auto i : g.active_set) active.push_back(k.halfspaces().inequalities[i]);
    std::vector<Vector> eqs = k.halfspaces().equations;
    Matrix perp = f.orthogonal_basis();
    eqs.insert(eqs.end(), perp.row_vectors().begin(), perp.row_vectors().end());
    Cone lhs = Cone::from_halfspaces(std::move(active), std::move(eqs), n);

    Face g_in_f = minimal_face({relative_interior_point(g)}, f_cone);
    Cone rhs = tangent_cone(f_cone, g_in_f);

    Certificate& c = results[p];
    c.name = "pair " + indices_json(f.active_set).dump() + " > " + indices_json(g.active_set).dump();
    c.samples = 1;
    c.witness = {{"face", indices_json(f.active_set)},
                 {"subface", indices_json(g.active_set)},
                 {"face_dim", f.dim()}};
    bool ok = equals(lhs, rhs);
    c.status = ok ? Status::pass : Status::fail;
    if (!ok) {
      if (auto d = escaping_generator(lhs, rhs)) c.witness["direction"] = to_json(*d);
    }
  });
  report.certificates = std::move(results);
  return report;
}

nlohmann::json TangentFamily::to_json() const {
  nlohmann::json out;
  out["depth"] = depth;
  out["stabilized"] = stabilized;
  std::map<std::string, std::size_t> ids;
  out["cones"] = nlohmann::json::array();
  for (const auto& [key, cone] : members()) {
    ids.emplace(key, ids.size());
    nlohmann::json j = cone_to_json(cone);
    j["id"] = ids[key];
    out["cones"].push_back(std::move(j));
  }
  out["levels"] = nlohmann::json::array();
  for (const auto& level : levels) {
    nlohmann::json ref = nlohmann::json::array();
    for (const auto& [key, cone] : level) ref.push_back(ids.at(key));
    out["levels"].push_back(std::move(ref));
  }
  return out;
}

TangentFamily lex_tangent_family(const Cone& k) {
  TangentFamily family;
  const std::size_t bound = dim(k);
  family.levels.push_back({{k.canonical().key(), k}});
  std::vector<Cone> frontier{k};
  while (true) {
    // Tangents of cones already processed are already present, so only the
    // newest members need expanding.
    std::vector<std::vector<Cone>> produced(frontier.size());
    parallel_for(frontier.size(), [&](std::size_t i) {
      for (const auto& g : enumerate_faces(frontier[i])) {
        Cone t = tangent_cone(frontier[i], g);
        t.canonical();
        produced[i].push_back(std::move(t));
      }
    });
    std::map<std::string, Cone> next = family.levels.back();
    std::vector<Cone> fresh;
    for (auto& batch : produced) {
      for (auto& t : batch) {
        if (next.emplace(t.canonical().key(), t).second) fresh.push_back(t);
      }
    }
    family.levels.push_back(std::move(next));
    if (fresh.empty()) {
      family.stabilized = true;
      family.depth = family.levels.size() - 2;
      return family;
    }
    if (family.levels.size() - 1 > bound) {
      throw DepthBoundViolated("tangent family still growing at level " +
                               std::to_string(family.levels.size() - 1) + " for a cone of dimension " +
                               std::to_string(bound));
    }
    frontier = std::move(fresh);
  }
}

std::size_t tangential_depth(const Cone& k) { return lex_tangent_family(k).depth; }

CheckReport is_strongly_tangentially_exposed(const TangentFamily& family) {
  CheckReport report;
  report.subject = family.levels.front().begin()->second.name;
  report.check = "strongly_tangentially_exposed";
  std::vector<Cone> members;
  for (const auto& [key, cone] : family.members()) members.push_back(cone);
  std::vector<Certificate> results(members.size());
  for (std::size_t i = 0; i < members.size(); ++i) {
    CheckReport sub = is_tangentially_exposed(members[i]);
    Certificate& c = results[i];
    c.name = "member " + std::to_string(i);
    c.samples = sub.certificates.size();
    c.status = sub.passed() ? Status::pass : Status::fail;
    c.witness = {{"cone", cone_to_json(members[i])}};
    if (const Certificate* bad = sub.first_failure()) c.witness["failure"] = bad->witness;
  }
  report.certificates = std::move(results);
  return report;
}

CheckReport is_strongly_tangentially_exposed(const Cone& k) {
  return is_strongly_tangentially_exposed(lex_tangent_family(k));
}

}  // namespace conelab
