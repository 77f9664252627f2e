#include "conelab/cone.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <mutex>
#include <sstream>

#include <boost/dynamic_bitset.hpp>

#include "double_description.hpp"

namespace conelab {

namespace {

using Bits = boost::dynamic_bitset<>;

void check_dims(const std::vector<Vector>& vs, std::size_t n, const char* what) {
  for (const auto& v : vs) {
    if (v.size() != n) {
      throw DimensionMismatch(std::string(what) + " has length " + std::to_string(v.size()) +
                              ", expected " + std::to_string(n));
    }
  }
}

void sort_unique(std::vector<Vector>& vs) {
  std::sort(vs.begin(), vs.end(), [](const Vector& x, const Vector& y) { return lex_compare(x, y) < 0; });
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
}

// Reduces each vector modulo span(basis) and rescales canonically; zero vectors are dropped.
std::vector<Vector> reduce_all(const std::vector<Vector>& vs, const RowReduction& basis) {
  std::vector<Vector> out;
  for (const auto& v : vs) {
    Vector r = normalize_ray(reduce_modulo(v, basis.basis_of_rowspace, basis.pivots));
    if (!is_zero(r)) out.push_back(std::move(r));
  }
  sort_unique(out);
  return out;
}

RowReduction reduce_basis(const std::vector<Vector>& vs, std::size_t n) {
  if (vs.empty()) return RowReduction{0, Matrix(n), Matrix::identity(n), {}};
  return row_reduce(Matrix(vs, n));
}

std::vector<Vector> concat(std::vector<Vector> a, const std::vector<Vector>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

// Canonical form of a pair of minimal descriptions (no conversion performed).
CanonicalForm canonicalize(const Generators& gen, const Halfspaces& half, std::size_t n) {
  CanonicalForm form;
  RowReduction lin = reduce_basis(gen.lineality, n);
  RowReduction eq = reduce_basis(half.equations, n);
  form.generators.lineality = lin.basis_of_rowspace.row_vectors();
  form.generators.rays = reduce_all(gen.rays, lin);
  form.halfspaces.equations = eq.basis_of_rowspace.row_vectors();
  form.halfspaces.inequalities = reduce_all(half.inequalities, eq);
  return form;
}

// Keeps the elements of `candidates` whose tight sets against `against` define
// faces of the wanted rank, one per tight set.
std::vector<Vector> filter_by_incidence(const std::vector<Vector>& candidates,
                                        const std::vector<Vector>& against,
                                        const std::vector<Vector>& extra_rows, std::size_t n,
                                        std::size_t wanted_rank) {
  std::vector<Bits> tight(candidates.size(), Bits(against.size()));
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    for (std::size_t j = 0; j < against.size(); ++j) {
      if (dot(candidates[c], against[j]).is_zero()) tight[c].set(j);
    }
  }
  std::vector<Vector> kept;
  std::vector<Bits> seen;
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    // A tight set strictly inside another candidate's cannot be maximal.
    bool dominated = false;
    for (std::size_t o = 0; o < candidates.size() && !dominated; ++o) {
      dominated = tight[c] != tight[o] && tight[c].is_subset_of(tight[o]);
    }
    if (dominated) continue;
    if (std::find(seen.begin(), seen.end(), tight[c]) != seen.end()) continue;
    std::vector<Vector> rows = extra_rows;
    for (std::size_t j = 0; j < against.size(); ++j) {
      if (tight[c].test(j)) rows.push_back(against[j]);
    }
    if (rank(rows, n) != wanted_rank) continue;
    seen.push_back(tight[c]);
    kept.push_back(candidates[c]);
  }
  return kept;
}

CanonicalForm convert_from_halfspaces(const Halfspaces& half, std::size_t n) {
  auto ext = detail::extreme_rays(half.inequalities, half.equations, n);
  Generators gen{ext.rays, ext.lineality};
  std::vector<Vector> all = concat(gen.rays, gen.lineality);
  const std::size_t dim_k = rank(all, n);

  Halfspaces minimal;
  minimal.equations = orthogonal_complement(all, n).row_vectors();
  if (!gen.rays.empty()) {
    // Facets: tight rays together with the lineality span a hyperplane of span(K).
    std::vector<Vector> nontrivial;
    for (const auto& a : half.inequalities) {
      bool all_tight = std::all_of(gen.rays.begin(), gen.rays.end(),
                                   [&](const Vector& r) { return dot(a, r).is_zero(); });
      if (!all_tight) nontrivial.push_back(a);
    }
    minimal.inequalities =
        filter_by_incidence(nontrivial, gen.rays, gen.lineality, n, dim_k - 1);
  }
  return canonicalize(gen, minimal, n);
}

CanonicalForm convert_from_generators(const Generators& gen, std::size_t n) {
  auto ext = detail::extreme_rays(gen.rays, gen.lineality, n);
  Halfspaces half{ext.rays, ext.lineality};
  std::vector<Vector> normals = concat(half.inequalities, half.equations);
  Generators minimal;
  minimal.lineality = orthogonal_complement(normals, n).row_vectors();
  const std::size_t lin_dim = minimal.lineality.size();
  if (lin_dim < n) {
    RowReduction lin = reduce_basis(minimal.lineality, n);
    std::vector<Vector> candidates;
    for (const auto& r : gen.rays) {
      Vector reduced = reduce_modulo(r, lin.basis_of_rowspace, lin.pivots);
      if (!is_zero(reduced)) candidates.push_back(std::move(reduced));
    }
    // Extreme rays: the tight facets cut out a face of dimension lin_dim + 1.
    minimal.rays =
        filter_by_incidence(candidates, half.inequalities, half.equations, n, n - lin_dim - 1);
  }
  return canonicalize(minimal, half, n);
}

// Canonical form from two descriptions of the same cone, pruning redundancy
// by incidence instead of converting.
CanonicalForm prune_matching(const Generators& gen, const Halfspaces& half, std::size_t n) {
  RowReduction lin = reduce_basis(gen.lineality, n);
  RowReduction eq = reduce_basis(half.equations, n);
  const std::size_t lin_dim = lin.rank;
  const std::size_t dim_k = n - eq.rank;
  Generators g{{}, lin.basis_of_rowspace.row_vectors()};
  Halfspaces h{{}, eq.basis_of_rowspace.row_vectors()};
  if (dim_k > lin_dim) {
    std::vector<Vector> ineqs = reduce_all(half.inequalities, eq);
    g.rays = filter_by_incidence(reduce_all(gen.rays, lin), ineqs, h.equations, n, n - lin_dim - 1);
    h.inequalities = filter_by_incidence(ineqs, g.rays, g.lineality, n, dim_k - 1);
  }
  return canonicalize(g, h, n);
}

}  // namespace

std::string CanonicalForm::key() const {
  std::ostringstream out;
  auto emit = [&out](char tag, const std::vector<Vector>& vs) {
    out << tag << '[';
    for (const auto& v : vs) {
      out << '(';
      for (std::size_t i = 0; i < v.size(); ++i) out << (i ? "," : "") << v[i].to_string();
      out << ')';
    }
    out << ']';
  };
  emit('L', generators.lineality);
  emit('R', generators.rays);
  emit('E', halfspaces.equations);
  emit('I', halfspaces.inequalities);
  return out.str();
}

struct Cone::State {
  std::size_t n = 0;
  std::optional<Generators> given_generators;
  std::optional<Halfspaces> given_halfspaces;
  std::once_flag once;
  CanonicalForm form;
  std::atomic<bool> converted = false;

  void ensure_converted() {
    std::call_once(once, [this] {
      if (given_generators && given_halfspaces) {
        form = prune_matching(*given_generators, *given_halfspaces, n);
      } else if (given_generators) {
        form = convert_from_generators(*given_generators, n);
      } else {
        form = convert_from_halfspaces(*given_halfspaces, n);
      }
      converted.store(true, std::memory_order_release);
    });
  }
};

Cone::Cone() : Cone(from_generators({}, {}, 0)) {}

Cone::Cone(std::shared_ptr<State> state) : state_(std::move(state)) {}

Cone Cone::from_generators(std::vector<Vector> rays, std::vector<Vector> lineality, std::size_t n) {
  check_dims(rays, n, "ray");
  check_dims(lineality, n, "lineality generator");
  auto state = std::make_shared<State>();
  state->n = n;
  std::erase_if(rays, [](const Vector& r) { return is_zero(r); });
  state->given_generators = Generators{std::move(rays), std::move(lineality)};
  return Cone(std::move(state));
}

Cone Cone::from_halfspaces(std::vector<Vector> inequalities, std::vector<Vector> equations,
                           std::size_t n) {
  check_dims(inequalities, n, "inequality");
  check_dims(equations, n, "equation");
  auto state = std::make_shared<State>();
  state->n = n;
  state->given_halfspaces = Halfspaces{std::move(inequalities), std::move(equations)};
  return Cone(std::move(state));
}

Cone make_converted(CanonicalForm form, std::size_t n) {
  auto state = std::make_shared<Cone::State>();
  state->n = n;
  state->given_generators = form.generators;
  state->given_halfspaces = form.halfspaces;
  std::call_once(state->once, [&] {
    state->form = std::move(form);
    state->converted.store(true, std::memory_order_release);
  });
  return Cone(std::move(state));
}

Cone from_matching_sides(Generators gen, Halfspaces half, std::size_t n) {
  check_dims(gen.rays, n, "ray");
  check_dims(gen.lineality, n, "lineality vector");
  check_dims(half.inequalities, n, "inequality");
  check_dims(half.equations, n, "equation");
  auto state = std::make_shared<Cone::State>();
  state->n = n;
  state->given_generators = std::move(gen);
  state->given_halfspaces = std::move(half);
  return Cone(std::move(state));
}

std::size_t Cone::ambient_dim() const { return state_->n; }

const std::optional<Generators>& Cone::given_generators() const { return state_->given_generators; }
const std::optional<Halfspaces>& Cone::given_halfspaces() const { return state_->given_halfspaces; }

const CanonicalForm& Cone::canonical() const {
  state_->ensure_converted();
  return state_->form;
}

const Generators& Cone::generators() const { return canonical().generators; }
const Halfspaces& Cone::halfspaces() const { return canonical().halfspaces; }

bool Cone::is_converted() const { return state_->converted.load(std::memory_order_acquire); }

Cone dd_convert(const Cone& k) {
  Cone c = make_converted(k.canonical(), k.ambient_dim());
  c.name = k.name;
  return c;
}

Cone dual(const Cone& k) {
  const std::size_t n = k.ambient_dim();
  if (k.given_generators() && k.given_halfspaces()) {
    return from_matching_sides({k.given_halfspaces()->inequalities, k.given_halfspaces()->equations},
                               {k.given_generators()->rays, k.given_generators()->lineality}, n);
  }
  if (k.is_converted()) {
    const CanonicalForm& f = k.canonical();
    CanonicalForm d;
    d.generators = Generators{f.halfspaces.inequalities, f.halfspaces.equations};
    d.halfspaces = Halfspaces{f.generators.rays, f.generators.lineality};
    return make_converted(std::move(d), n);
  }
  if (k.given_generators()) {
    return Cone::from_halfspaces(k.given_generators()->rays, k.given_generators()->lineality, n);
  }
  return Cone::from_generators(k.given_halfspaces()->inequalities, k.given_halfspaces()->equations,
                               n);
}

Cone polar(const Cone& k) {
  const std::size_t n = k.ambient_dim();
  auto negate_all = [](const std::vector<Vector>& vs) {
    std::vector<Vector> out;
    out.reserve(vs.size());
    for (const auto& v : vs) out.push_back(negate(v));
    return out;
  };
  if (k.given_generators() && k.given_halfspaces()) {
    return from_matching_sides(
        {negate_all(k.given_halfspaces()->inequalities), k.given_halfspaces()->equations},
        {negate_all(k.given_generators()->rays), k.given_generators()->lineality}, n);
  }
  if (k.is_converted()) {
    const CanonicalForm& f = k.canonical();
    Generators gen{negate_all(f.halfspaces.inequalities), f.halfspaces.equations};
    Halfspaces half{negate_all(f.generators.rays), f.generators.lineality};
    return make_converted(canonicalize(gen, half, n), n);
  }
  if (k.given_generators()) {
    return Cone::from_halfspaces(negate_all(k.given_generators()->rays),
                                 k.given_generators()->lineality, n);
  }
  return Cone::from_generators(negate_all(k.given_halfspaces()->inequalities),
                               k.given_halfspaces()->equations, n);
}

namespace {

const Halfspaces& any_halfspaces(const Cone& k) {
  return k.given_halfspaces() ? *k.given_halfspaces() : k.halfspaces();
}

const Generators& any_generators(const Cone& k) {
  return k.given_generators() ? *k.given_generators() : k.generators();
}

void require_same_dim(const Cone& a, const Cone& b) {
  if (a.ambient_dim() != b.ambient_dim()) {
    throw DimensionMismatch("cones live in R^" + std::to_string(a.ambient_dim()) + " and R^" +
                            std::to_string(b.ambient_dim()));
  }
}

}  // namespace

Cone intersect(const Cone& k1, const Cone& k2) {
  require_same_dim(k1, k2);
  const Halfspaces& h1 = any_halfspaces(k1);
  const Halfspaces& h2 = any_halfspaces(k2);
  return Cone::from_halfspaces(concat(h1.inequalities, h2.inequalities),
                               concat(h1.equations, h2.equations), k1.ambient_dim());
}

Cone minkowski_sum(const Cone& k1, const Cone& k2) {
  require_same_dim(k1, k2);
  const Generators& g1 = any_generators(k1);
  const Generators& g2 = any_generators(k2);
  return Cone::from_generators(concat(g1.rays, g2.rays), concat(g1.lineality, g2.lineality),
                               k1.ambient_dim());
}

Cone linear_image(const Cone& k, const Matrix& a) {
  if (a.cols() != k.ambient_dim()) throw DimensionMismatch("linear map has wrong column count");
  const Generators& g = any_generators(k);
  std::vector<Vector> rays, lin;
  for (const auto& r : g.rays) rays.push_back(a.apply(r));
  for (const auto& l : g.lineality) lin.push_back(a.apply(l));
  return Cone::from_generators(std::move(rays), std::move(lin), a.rows());
}

PointedDecomposition decompose_pointed(const Cone& k) {
  const std::size_t n = k.ambient_dim();
  const Generators& g = k.generators();
  Matrix basis(g.lineality, n);
  std::vector<Vector> rays;
  for (const auto& r : g.rays) rays.push_back(normalize_ray(subtract(r, project_onto_span(r, basis))));
  Cone pointed = Cone::from_generators(rays, {}, n);
  bool orthogonal = std::all_of(rays.begin(), rays.end(), [&](const Vector& r) {
    return std::all_of(g.lineality.begin(), g.lineality.end(),
                       [&](const Vector& l) { return dot(r, l).is_zero(); });
  });
  bool certified = orthogonal && is_pointed(pointed) &&
                   equals(minkowski_sum(pointed, Cone::subspace(g.lineality, n)), k);
  return PointedDecomposition{std::move(basis), std::move(pointed), certified};
}

bool contains(const Cone& k, const Vector& x) {
  if (x.size() != k.ambient_dim()) throw DimensionMismatch("point has wrong dimension");
  const Halfspaces& h = any_halfspaces(k);
  return std::all_of(h.inequalities.begin(), h.inequalities.end(),
                     [&](const Vector& a) { return dot(a, x).sign() >= 0; }) &&
         std::all_of(h.equations.begin(), h.equations.end(),
                     [&](const Vector& e) { return dot(e, x).is_zero(); });
}

namespace {

// Sufficient test for h == c, with h given by halfspaces and c converted:
// c's generators satisfy h, and every constraint of c is a positive multiple of
// one of h's modulo h's equations. False means "not shown", not "different".
bool equal_by_certificate(const Halfspaces& h, const Cone& c) {
  const std::size_t n = c.ambient_dim();
  const Generators& g = any_generators(c);
  auto in_h = [&](const Vector& x) {
    return std::all_of(h.inequalities.begin(), h.inequalities.end(),
                       [&](const Vector& a) { return dot(a, x).sign() >= 0; }) &&
           std::all_of(h.equations.begin(), h.equations.end(),
                       [&](const Vector& e) { return dot(e, x).is_zero(); });
  };
  if (!std::all_of(g.rays.begin(), g.rays.end(), in_h)) return false;
  for (const auto& l : g.lineality) {
    if (!in_h(l) || !in_h(negate(l))) return false;
  }
  RowReduction eq = reduce_basis(h.equations, n);
  auto reduced = [&](const Vector& a) {
    return normalize_ray(reduce_modulo(a, eq.basis_of_rowspace, eq.pivots));
  };
  const Halfspaces& ch = any_halfspaces(c);
  for (const auto& e : ch.equations) {
    if (!is_zero(reduced(e))) return false;
  }
  std::vector<Vector> own;
  own.reserve(h.inequalities.size());
  for (const auto& a : h.inequalities) own.push_back(reduced(a));
  for (const auto& ci : ch.inequalities) {
    if (std::find(own.begin(), own.end(), reduced(ci)) == own.end()) return false;
  }
  return true;
}

// The same test from the generator side: h's generators lie in c, and every
// generator of c is a positive multiple of one of h's modulo h's lineality.
bool equal_by_certificate(const Generators& h, const Cone& c) {
  const std::size_t n = c.ambient_dim();
  if (!std::all_of(h.rays.begin(), h.rays.end(), [&](const Vector& x) { return contains(c, x); })) {
    return false;
  }
  for (const auto& l : h.lineality) {
    if (!contains(c, l) || !contains(c, negate(l))) return false;
  }
  RowReduction lin = reduce_basis(h.lineality, n);
  auto reduced = [&](const Vector& a) {
    return normalize_ray(reduce_modulo(a, lin.basis_of_rowspace, lin.pivots));
  };
  const Generators& g = any_generators(c);
  for (const auto& l : g.lineality) {
    if (!is_zero(reduced(l))) return false;
  }
  std::vector<Vector> own;
  own.reserve(h.rays.size());
  for (const auto& r : h.rays) own.push_back(reduced(r));
  for (const auto& r : g.rays) {
    if (std::find(own.begin(), own.end(), reduced(r)) == own.end()) return false;
  }
  return true;
}

bool has_both_sides(const Cone& k) {
  return (k.given_generators() && k.given_halfspaces()) || k.is_converted();
}

// k against a cone c whose two sides are both at hand.
bool equal_by_certificate(const Cone& k, const Cone& c) {
  if (!has_both_sides(c)) return false;
  if (k.given_halfspaces()) return equal_by_certificate(*k.given_halfspaces(), c);
  if (k.given_generators()) return equal_by_certificate(*k.given_generators(), c);
  return equal_by_certificate(k.halfspaces(), c);
}

}  // namespace

bool equals(const Cone& k1, const Cone& k2) {
  if (k1.ambient_dim() != k2.ambient_dim()) return false;
  if (equal_by_certificate(k1, k2) || equal_by_certificate(k2, k1)) return true;
  return k1.canonical() == k2.canonical();
}

std::size_t dim(const Cone& k) {
  const Generators& g = any_generators(k);
  return rank(concat(g.rays, g.lineality), k.ambient_dim());
}

std::size_t lineality_dim(const Cone& k) { return k.generators().lineality.size(); }

bool is_pointed(const Cone& k) { return lineality_dim(k) == 0; }

}  // namespace conelab
