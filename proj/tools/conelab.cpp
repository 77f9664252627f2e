// conelab: command-line front end for the cone library.
//
// Exit codes: 0 success, 1 a check failed, 2 usage or request error, 3 input
// could not be parsed.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "conelab/cone.hpp"
#include "conelab/facelat.hpp"
#include "conelab/fdc.hpp"
#include "conelab/io.hpp"
#include "conelab/paperbench.hpp"
#include "conelab/tangents.hpp"

using namespace conelab;

namespace {

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kUsage = 2;
constexpr int kParse = 3;

// Raised for requests that parse fine but cannot be served (bad face index,
// unbounded slice, ...).
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Io {
  std::string in;
  std::string out;

  void write(const std::string& text) const {
    if (out.empty()) {
      std::cout << text;
      return;
    }
    std::ofstream f(out, std::ios::binary);
    if (!f) throw UsageError("cannot write " + out);
    f << text;
  }
  void write(const nlohmann::json& j) const { write(j.dump(2) + "\n"); }
  Cone cone() const { return read_cone_file(in); }
};

void add_io(CLI::App* cmd, Io& io, bool needs_input = true) {
  if (needs_input) cmd->add_option("--in", io.in, "cone JSON file")->required()->check(CLI::ExistingFile);
  cmd->add_option("--out", io.out, "write here instead of stdout");
}

std::vector<std::size_t> parse_index_list(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t pos = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(item, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != item.size() || item[0] == '-') throw UsageError("--face: not an index list: \"" + text + "\"");
    out.push_back(v);
  }
  return out;
}

Face face_arg(const Cone& k, const std::string& text) {
  auto active = parse_index_list(text);
  std::size_t m = k.halfspaces().inequalities.size();
  for (auto i : active) {
    if (i >= m) throw UsageError("--face: index " + std::to_string(i) + " out of range, cone has " +
                                 std::to_string(m) + " inequalities");
  }
  return face_from_active_set(k, std::move(active));
}

int report_exit(bool ok) { return ok ? kOk : kCheckFailed; }

// ---------------------------------------------------------------- slice ---

std::string fmt(double x) {
  if (x == 0) x = 0;  // no "-0"
  std::ostringstream os;
  os << std::setprecision(17) << x;
  return os.str();
}

// Cross-section {x : x_n = h} of a pointed cone whose rays all have a
// positive last coordinate, as an OFF mesh in the first n-1 coordinates.
std::string slice_off(const Cone& k, const Scalar& height) {
  const std::size_t n = k.ambient_dim();
  if (n < 2 || n > 4) throw UsageError("slice needs an ambient dimension between 2 and 4");
  if (height.sign() <= 0) throw UsageError("slice height must be positive");
  const auto& gen = k.generators();
  if (!gen.lineality.empty()) throw UsageError("slice is unbounded: the cone contains a line");
  const std::size_t d = n - 1;
  std::vector<std::array<double, 3>> verts;
  std::vector<Vector> exact;
  for (const auto& r : gen.rays) {
    if (r[d].sign() <= 0) throw UsageError("slice is unbounded or degenerate: a ray has last coordinate <= 0");
    Vector p;
    for (std::size_t i = 0; i < d; ++i) p.push_back(r[i] * height / r[d]);
    std::array<double, 3> x{0, 0, 0};
    for (std::size_t i = 0; i < d; ++i) x[i] = p[i].to_double();
    verts.push_back(x);
    exact.push_back(r);
  }

  std::vector<std::vector<std::size_t>> faces;
  auto order_cycle = [&](std::vector<std::size_t> idx, const std::array<double, 3>& normal) {
    std::array<double, 3> c{0, 0, 0};
    for (auto i : idx)
      for (int j = 0; j < 3; ++j) c[j] += verts[i][j] / static_cast<double>(idx.size());
    // in-plane frame (e1, e2) with e1 x e2 along the outward normal
    std::array<double, 3> a = verts[idx[0]];
    for (int j = 0; j < 3; ++j) a[j] -= c[j];
    std::array<double, 3> b{normal[1] * a[2] - normal[2] * a[1], normal[2] * a[0] - normal[0] * a[2],
                            normal[0] * a[1] - normal[1] * a[0]};
    auto angle = [&](std::size_t i) {
      double x = 0, y = 0;
      for (int j = 0; j < 3; ++j) {
        x += (verts[i][j] - c[j]) * a[j];
        y += (verts[i][j] - c[j]) * b[j];
      }
      return std::atan2(y, x);
    };
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t p, std::size_t q) { return angle(p) < angle(q); });
    return idx;
  };

  if (d == 3) {
    for (const auto& a : k.halfspaces().inequalities) {
      std::vector<std::size_t> tight;
      for (std::size_t i = 0; i < exact.size(); ++i)
        if (dot(a, exact[i]).is_zero()) tight.push_back(i);
      if (tight.size() < 3) continue;
      std::array<double, 3> outward{-a[0].to_double(), -a[1].to_double(), -a[2].to_double()};
      faces.push_back(order_cycle(tight, outward));
    }
  } else if (d == 2 && verts.size() >= 3) {
    std::vector<std::size_t> all(verts.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    faces.push_back(order_cycle(all, {0, 0, 1}));
  } else if (verts.size() >= 2) {
    std::vector<std::size_t> all(verts.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    faces.push_back(all);
  }

  std::ostringstream os;
  os << "OFF\n";
  os << "# non-authoritative: float64 rendering of exact coordinates, for plotting only\n";
  os << "# cone " << (k.name.empty() ? "unnamed" : k.name) << ", slice x" << n << " = " << height.to_string()
     << "\n";
  os << verts.size() << " " << faces.size() << " 0\n";
  for (const auto& v : verts) os << fmt(v[0]) << " " << fmt(v[1]) << " " << fmt(v[2]) << "\n";
  for (const auto& f : faces) {
    os << f.size();
    for (auto i : f) os << " " << i;
    os << "\n";
  }
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"conelab: exact polyhedral cones, faces, tangents and facial dual completeness"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "expand subcommand help");

  Io io;
  std::string face_text;
  bool include_empty = false;
  std::string height_text;
  std::string format = "off";
  std::string check_kind;
  std::string example;
  BenchOptions bench;
  bool no_exact = false;
  int code = kOk;

  auto* dual_cmd = app.add_subcommand("dual", "dual cone {y : <y,x> >= 0 on K}");
  add_io(dual_cmd, io);
  dual_cmd->callback([&] {
    Cone k = io.cone();
    Cone d = dual(k);
    d.name = "dual(" + k.name + ")";
    io.write(cone_to_json(d));
  });

  auto* polar_cmd = app.add_subcommand("polar", "polar cone {y : <y,x> <= 0 on K}");
  add_io(polar_cmd, io);
  polar_cmd->callback([&] {
    Cone k = io.cone();
    Cone p = polar(k);
    p.name = "polar(" + k.name + ")";
    io.write(cone_to_json(p));
  });

  auto* convert_cmd = app.add_subcommand("convert", "complete the missing side (rays <-> inequalities)");
  add_io(convert_cmd, io);
  convert_cmd->callback([&] { io.write(cone_to_json(dd_convert(io.cone()))); });

  auto* faces_cmd = app.add_subcommand("faces", "enumerate the face lattice");
  add_io(faces_cmd, io);
  faces_cmd->add_flag("--include-empty-face", include_empty, "append the empty face");
  faces_cmd->callback([&] {
    Cone k = io.cone();
    nlohmann::json j{{"subject", k.name}, {"faces", nlohmann::json::array()}};
    for (const auto& f : enumerate_faces(k, include_empty)) j["faces"].push_back(f.to_json());
    io.write(j);
  });

  auto* tangent_cmd = app.add_subcommand("tangent", "tangent cone T(F;K) at a face given by its active set");
  add_io(tangent_cmd, io);
  tangent_cmd->add_option("--face", face_text, "comma-separated inequality indices, \"\" for K")->required();
  tangent_cmd->callback([&] {
    Cone k = io.cone();
    io.write(cone_to_json(tangent_cone(k, face_arg(k, face_text))));
  });

  auto* lex_cmd = app.add_subcommand("lextangents", "iterated tangent cones up to stabilization");
  add_io(lex_cmd, io);
  lex_cmd->callback([&] { io.write(lex_tangent_family(io.cone()).to_json()); });

  auto* depth_cmd = app.add_subcommand("depth", "tangential depth");
  add_io(depth_cmd, io);
  depth_cmd->callback([&] { io.write(std::to_string(tangential_depth(io.cone())) + "\n"); });

  auto* check_cmd = app.add_subcommand("check", "run one exposure check; exit 1 when it fails");
  add_io(check_cmd, io);
  check_cmd->add_option("kind", check_kind, "exposed | tangential | strong | fdc")
      ->required()
      ->check(CLI::IsMember({"exposed", "tangential", "strong", "fdc"}));
  check_cmd->callback([&] {
    Cone k = io.cone();
    if (check_kind == "fdc") {
      FdcReport r = is_fdc(k);
      io.write(r.to_json());
      code = report_exit(r.verdict);
      return;
    }
    CheckReport r = check_kind == "exposed"      ? is_facially_exposed(k)
                    : check_kind == "tangential" ? is_tangentially_exposed(k)
                                                 : is_strongly_tangentially_exposed(k);
    io.write(r.to_json());
    code = report_exit(r.passed());
  });

  auto* classify_cmd = app.add_subcommand("classify", "all exposure properties and their implications");
  add_io(classify_cmd, io);
  classify_cmd->callback([&] {
    ExposureClassification c = classify_exposure(io.cone());
    io.write(c.to_json());
    code = report_exit(c.consistent());
  });

  auto* verify_cmd = app.add_subcommand("verify", "certificate checks for the curved examples");
  add_io(verify_cmd, io, false);
  verify_cmd->add_option("example", example, "roshchina | cubic | circles | sandwich")
      ->required()
      ->check(CLI::IsMember({"roshchina", "cubic", "circles", "sandwich"}));
  verify_cmd->add_option("--samples", bench.samples, "parameter samples per interval")
      ->capture_default_str()
      ->check(CLI::Range(std::size_t{2}, std::size_t{10000000}));
  verify_cmd->add_option("--tol", bench.tol, "float tolerance")->capture_default_str()->check(CLI::NonNegativeNumber);
  verify_cmd->add_flag("--exact", bench.exact, "also run the exact Q(sqrt 7) certificates (default)");
  verify_cmd->add_flag("--no-exact", no_exact, "float certificates only");
  verify_cmd->callback([&] {
    if (no_exact) bench.exact = false;
    CheckReport r = verify_example(example, bench);
    io.write(bench_json(r));
    code = report_exit(r.passed());
  });

  auto* slice_cmd = app.add_subcommand("slice", "cross-section x_n = h of a cone in dimension <= 4");
  add_io(slice_cmd, io);
  slice_cmd->add_option("--height", height_text, "h > 0, exact decimal or p/q")->required();
  slice_cmd->add_option("--format", format, "output format")->capture_default_str()->check(CLI::IsMember({"off"}));
  slice_cmd->callback([&] {
    Scalar h;
    try {
      h = Scalar::parse(height_text);
    } catch (const std::exception&) {
      throw UsageError("--height: not a number: \"" + height_text + "\"");
    }
    io.write(slice_off(dd_convert(io.cone()), h));
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  } catch (const ParseError& e) {
    // what() already starts with the JSON path
    std::cerr << "conelab: parse error at " << (e.path().empty() ? "/" : "") << e.what() << "\n";
    return kParse;
  } catch (const std::exception& e) {
    std::cerr << "conelab: " << e.what() << "\n";
    return kUsage;
  }
  return code;
}
