#include "conelab/io.hpp"

#include <fstream>
#include <optional>

namespace conelab {

nlohmann::json to_json(const Scalar& x) {
  if (x.is_rational()) return x.rational_part().to_string();
  return {{"a", x.rational_part().to_string()}, {"b", x.surd_coefficient().to_string()}, {"d", x.root()}};
}

nlohmann::json to_json(const Vector& x) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& s : x) out.push_back(to_json(s));
  return out;
}

nlohmann::json to_json(const std::vector<Vector>& xs) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& x : xs) out.push_back(to_json(x));
  return out;
}

namespace {

mpq_class rational_from_string(const std::string& text, const std::string& path) {
  try {
    Scalar s = Scalar::parse(text);
    return s.rational_part().to_mpq();
  } catch (const std::exception& e) {
    throw ParseError(path, "not a rational number: \"" + text + "\"");
  }
}

}  // namespace

Scalar scalar_from_json(const nlohmann::json& j, const std::string& path) {
  if (j.is_number_integer()) return Scalar(j.get<long>());
  if (j.is_string()) return Scalar(rational_from_string(j.get<std::string>(), path));
  if (j.is_object()) {
    if (!j.contains("a") || !j.contains("b") || !j.contains("d")) {
      throw ParseError(path, "quadratic scalar needs \"a\", \"b\" and \"d\"");
    }
    if (!j["a"].is_string() && !j["a"].is_number_integer()) throw ParseError(path + "/a", "expected a rational");
    if (!j["b"].is_string() && !j["b"].is_number_integer()) throw ParseError(path + "/b", "expected a rational");
    if (!j["d"].is_number_integer()) throw ParseError(path + "/d", "expected an integer");
    mpq_class a = scalar_from_json(j["a"], path + "/a").rational_part().to_mpq();
    mpq_class b = scalar_from_json(j["b"], path + "/b").rational_part().to_mpq();
    try {
      return Scalar::quadratic(a, b, j["d"].get<long>());
    } catch (const std::exception& e) {
      throw ParseError(path + "/d", e.what());
    }
  }
  if (j.is_number_float()) {
    throw ParseError(path, "floating point literals are not exact; write \"p/q\" or a decimal string");
  }
  throw ParseError(path, "expected a scalar");
}

Vector vector_from_json(const nlohmann::json& j, std::size_t n, const std::string& path) {
  if (!j.is_array()) throw ParseError(path, "expected an array");
  if (j.size() != n) {
    throw ParseError(path, "expected " + std::to_string(n) + " entries, got " + std::to_string(j.size()));
  }
  Vector out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(scalar_from_json(j[i], path + "/" + std::to_string(i)));
  return out;
}

std::string field_name(const Cone& k) {
  long root = 0;
  auto scan = [&root](const std::vector<Vector>& vs) {
    for (const auto& v : vs)
      for (const auto& s : v)
        if (!s.is_rational()) root = s.root();
  };
  if (k.given_generators()) {
    scan(k.given_generators()->rays);
    scan(k.given_generators()->lineality);
  }
  if (k.given_halfspaces()) {
    scan(k.given_halfspaces()->inequalities);
    scan(k.given_halfspaces()->equations);
  }
  return root == 0 ? "rational" : "quadratic(" + std::to_string(root) + ")";
}

nlohmann::json cone_to_json(const Cone& k) {
  const CanonicalForm& f = k.canonical();
  nlohmann::json out;
  out["name"] = k.name;
  out["ambient_dim"] = k.ambient_dim();
  out["field"] = field_name(k);
  out["rays"] = to_json(f.generators.rays);
  out["lineality"] = to_json(f.generators.lineality);
  out["inequalities"] = to_json(f.halfspaces.inequalities);
  out["equations"] = to_json(f.halfspaces.equations);
  return out;
}

Cone cone_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("", "expected a JSON object");
  if (!j.contains("ambient_dim")) throw ParseError("/ambient_dim", "missing");
  if (!j["ambient_dim"].is_number_unsigned()) {
    throw ParseError("/ambient_dim", "expected a nonnegative integer");
  }
  const auto n = j["ambient_dim"].get<std::size_t>();
  auto read_list = [&](const char* key) -> std::optional<std::vector<Vector>> {
    if (!j.contains(key)) return std::nullopt;
    const std::string path = std::string("/") + key;
    if (!j[key].is_array()) throw ParseError(path, "expected an array of vectors");
    std::vector<Vector> out;
    for (std::size_t i = 0; i < j[key].size(); ++i) {
      out.push_back(vector_from_json(j[key][i], n, path + "/" + std::to_string(i)));
    }
    return out;
  };
  auto rays = read_list("rays");
  auto lin = read_list("lineality");
  auto ineqs = read_list("inequalities");
  auto eqs = read_list("equations");
  Cone k;
  if (rays || lin) {
    k = Cone::from_generators(rays.value_or(std::vector<Vector>{}), lin.value_or(std::vector<Vector>{}), n);
  } else if (ineqs || eqs) {
    k = Cone::from_halfspaces(ineqs.value_or(std::vector<Vector>{}), eqs.value_or(std::vector<Vector>{}), n);
  } else {
    throw ParseError("", "no generator or halfspace side given");
  }
  if (j.contains("name")) {
    if (!j["name"].is_string()) throw ParseError("/name", "expected a string");
    k.name = j["name"].get<std::string>();
  }
  if ((rays || lin) && (ineqs || eqs)) {
    // Both sides given: they must describe the same set.
    Cone other = Cone::from_halfspaces(ineqs.value_or(std::vector<Vector>{}),
                                       eqs.value_or(std::vector<Vector>{}), n);
    if (!equals(k, other)) throw ParseError("", "generator and halfspace sides describe different cones");
  }
  return k;
}

Cone read_cone_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("", "cannot open " + path.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("", std::string("invalid JSON: ") + e.what());
  }
  Cone k = cone_from_json(j);
  if (k.name.empty()) k.name = path.stem().string();
  return k;
}

}  // namespace conelab
