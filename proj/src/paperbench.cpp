#include "conelab/paperbench.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <type_traits>

#include "conelab/parallel.hpp"

namespace conelab {

namespace {

using Point3 = std::array<double, 3>;
using Point4 = std::array<double, 4>;
using Job = std::function<Certificate()>;

constexpr double kPi = std::numbers::pi;

// Number-type shims so one certificate body runs in float64 and in Q(sqrt 7).
template <class T>
struct Num;

template <>
struct Num<double> {
  static double of(long p, long q = 1) { return static_cast<double>(p) / static_cast<double>(q); }
  static double sqrt7() { return std::sqrt(7.0); }
  static double to_d(double x) { return x; }
  static constexpr const char* tag = "/float";
};

template <>
struct Num<Scalar> {
  static Scalar of(long p, long q = 1) { return Scalar(p, q); }
  static Scalar sqrt7() { return Scalar::sqrt_of(7); }
  static double to_d(const Scalar& x) { return x.to_double(); }
  static constexpr const char* tag = "/exact";
};

template <class T, std::size_t N>
T dotn(const std::array<T, N>& x, const std::array<T, N>& y) {
  T s = x[0] * y[0];
  for (std::size_t i = 1; i < N; ++i) s += x[i] * y[i];
  return s;
}

template <class T>
std::array<T, 4> lift(const std::array<T, 3>& x) {
  return {x[0], x[1], x[2], T(1)};
}

template <class T>
T grid(std::size_t k, std::size_t n) {
  return Num<T>::of(static_cast<long>(k), static_cast<long>(n - 1));
}

bool near(double x, double x0) { return std::abs(x - x0) < kZeroBand; }

enum class Sign { any, negative, nonpositive, positive, zero };

// Accumulates one certificate sample by sample. The first failing sample is
// kept as the witness.
template <class W>
nlohmann::json resolve(const W& where) {
  if constexpr (std::is_invocable_v<const W&>) {
    return where();
  } else {
    return nlohmann::json(where);
  }
}

class Tally {
 public:
  Tally(std::string name, double tol) : tol_(tol) { cert_.name = std::move(name); }

  template <class W>
  void sample(double direct, double factored, Sign claim, bool on_zero, const W& where) {
    ++cert_.samples;
    double gap = std::abs(direct - factored);
    note(gap);
    if (!(gap <= tol_)) {
      fail(where, direct, factored, "closed form disagrees");
      return;
    }
    double excess = 0.0;
    bool ok = true;
    if (on_zero || claim == Sign::zero) {
      ok = std::abs(direct) <= tol_;
      excess = std::abs(direct);
    } else {
      switch (claim) {
        case Sign::any: break;
        case Sign::negative: ok = direct < 0; excess = std::max(0.0, direct); break;
        case Sign::nonpositive: ok = direct <= tol_; excess = std::max(0.0, direct); break;
        case Sign::positive: ok = direct > 0; excess = std::max(0.0, -direct); break;
        case Sign::zero: break;
      }
    }
    if (!ok) {
      note(excess);
      fail(where, direct, factored, "sign claim broken");
    }
  }

  template <class W>
  void sample(const Scalar& direct, const Scalar& factored, Sign claim, bool on_zero, const W& where) {
    ++cert_.samples;
    if (direct != factored) {
      note(std::abs((direct - factored).to_double()));
      fail(where, direct.to_double(), factored.to_double(), "closed form disagrees");
      return;
    }
    int s = direct.sign();
    bool ok = true;
    if (claim == Sign::zero) {
      ok = s == 0;
    } else if (on_zero) {
      bool compatible = claim == Sign::positive ? s >= 0 : (claim == Sign::any || s <= 0);
      ok = compatible && std::abs(direct.to_double()) <= tol_;
    } else {
      switch (claim) {
        case Sign::any: break;
        case Sign::negative: ok = s < 0; break;
        case Sign::nonpositive: ok = s <= 0; break;
        case Sign::positive: ok = s > 0; break;
        case Sign::zero: break;
      }
    }
    if (!ok) {
      note(std::abs(direct.to_double()));
      fail(where, direct.to_double(), factored.to_double(), "sign claim broken");
    }
  }

  void sample(double direct, double factored, Sign claim, bool on_zero, const nlohmann::json& where) {
    sample<nlohmann::json>(direct, factored, claim, on_zero, where);
  }
  void sample(const Scalar& direct, const Scalar& factored, Sign claim, bool on_zero,
              const nlohmann::json& where) {
    sample<nlohmann::json>(direct, factored, claim, on_zero, where);
  }
  void require(bool ok, double residual, const nlohmann::json& where) {
    require<nlohmann::json>(ok, residual, where);
  }

  template <class W>
  void require(bool ok, double residual, const W& where) {
    ++cert_.samples;
    note(residual);
    if (!ok && cert_.status != Status::fail) {
      cert_.status = Status::fail;
      cert_.witness = resolve(where);
    }
  }

  void set_witness(nlohmann::json w) {
    if (cert_.status != Status::fail) cert_.witness = std::move(w);
  }
  void mark_note() { cert_.status = Status::note; }
  bool ok() const { return cert_.status != Status::fail; }
  double tol() const { return tol_; }

  Certificate finish() { return std::move(cert_); }

 private:
  void note(double r) {
    if (std::isnan(r)) r = std::numeric_limits<double>::infinity();
    cert_.max_violation = std::max(cert_.max_violation, r);
  }
  template <class W>
  void fail(const W& where, double direct, double factored, const char* why) {
    if (cert_.status == Status::fail) return;
    cert_.status = Status::fail;
    cert_.witness = {{"at", resolve(where)}, {"direct", direct}, {"factored", factored}, {"reason", why}};
  }

  double tol_;
  Certificate cert_;
};

CheckReport run_jobs(std::string subject, double tol, const std::vector<Job>& jobs) {
  std::vector<Certificate> out(jobs.size());
  parallel_for(jobs.size(), [&](std::size_t i) { out[i] = jobs[i](); });
  std::stable_sort(out.begin(), out.end(),
                   [](const Certificate& a, const Certificate& b) { return a.name < b.name; });
  CheckReport r;
  r.subject = std::move(subject);
  r.check = "verify";
  r.tolerance = tol;
  r.certificates = std::move(out);
  return r;
}

bool all_pass(const CheckReport& r, std::initializer_list<const char*> prefixes) {
  for (const auto& c : r.certificates) {
    for (const char* p : prefixes) {
      if (c.name.rfind(p, 0) == 0 && c.status == Status::fail) return false;
    }
  }
  return true;
}

// Rational points on the unit circle from the half-angle tangent m.
std::pair<Scalar, Scalar> circle_cos_sin(const Scalar& m) {
  Scalar m2 = m * m;
  Scalar den = Scalar(1) + m2;
  return {(Scalar(1) - m2) / den, Scalar(2) * m / den};
}

Vector to_vector(std::initializer_list<Scalar> xs) { return Vector(xs); }

// ---------------------------------------------------------------- curves ---

template <class T>
std::array<T, 3> cubic1(const T& s) {
  return {-s, -(s * s), -(s * s * s)};
}

template <class T>
std::array<T, 3> cubic2(const T& t) {
  return {-t, t * t, T(0)};
}

template <class T>
T phi(const T& s) {
  return (2 + Num<T>::sqrt7()) * s / 3;
}

// Rational stand-in for phi(1) = (2+sqrt 7)/3 = 1.54858..., from below.
const Scalar& cubic_t_max() {
  static const Scalar v(387, 250);
  return v;
}

}  // namespace

std::vector<ParamCurve> roshchina_curves() {
  auto rational = [](int which) {
    return [which](std::size_t k, std::size_t n) {
      // m <= 2/5 < tan(pi/8), so the parameter stays inside [0, pi/4].
      Scalar m = Scalar(2 * static_cast<long>(k), 5 * static_cast<long>(n - 1));
      auto [c, s] = circle_cos_sin(m);
      Scalar one(1);
      switch (which) {
        case 1: return to_vector({Scalar(0), -s, c - one});
        case 2: return to_vector({Scalar(0), c - one, -s});
        case 3: return to_vector({-s, one - c, Scalar(0)});
        default: return to_vector({c - one, s, Scalar(0)});
      }
    };
  };
  std::vector<ParamCurve> out(4);
  out[0] = {"gamma1", 0.0, kPi / 4,
            [](double t) { return Point3{0.0, -std::sin(t), std::cos(t) - 1.0}; }, {}, rational(1)};
  out[1] = {"gamma2", 0.0, kPi / 4,
            [](double t) { return Point3{0.0, std::cos(t) - 1.0, -std::sin(t)}; }, {}, rational(2)};
  out[2] = {"gamma3", 0.0, kPi / 4,
            [](double t) { return Point3{-std::sin(t), 1.0 - std::cos(t), 0.0}; }, {}, rational(3)};
  out[3] = {"gamma4", 0.0, kPi / 4,
            [](double t) { return Point3{std::cos(t) - 1.0, std::sin(t), 0.0}; }, {}, rational(4)};
  return out;
}

std::vector<ParamCurve> cubic_curves() {
  auto as_vector = [](const std::array<Scalar, 3>& p) { return Vector(p.begin(), p.end()); };
  std::vector<ParamCurve> out(2);
  out[0].name = "gamma1";
  out[0].a = 0.0;
  out[0].b = 1.0;
  out[0].eval = [](double s) { return cubic1(s); };
  out[0].exact_eval = [as_vector](const Scalar& s) { return as_vector(cubic1(s)); };
  out[0].rational_point = [as_vector](std::size_t k, std::size_t n) {
    return as_vector(cubic1(grid<Scalar>(k, n)));
  };
  out[1].name = "gamma2";
  out[1].a = 0.0;
  out[1].b = phi(1.0);
  out[1].eval = [](double t) { return cubic2(t); };
  out[1].exact_eval = [as_vector](const Scalar& t) { return as_vector(cubic2(t)); };
  out[1].rational_point = [as_vector](std::size_t k, std::size_t n) {
    return as_vector(cubic2(grid<Scalar>(k, n) * cubic_t_max()));
  };
  return out;
}

std::vector<ParamCurve> circle_curves() {
  std::vector<ParamCurve> out(2);
  out[0] = {"gamma1", 0.0, kPi / 2,
            [](double t) { return Point3{std::cos(t), std::sin(t), 1.0}; }, {},
            [](std::size_t k, std::size_t n) {
              auto [c, s] = circle_cos_sin(grid<Scalar>(k, n));
              return to_vector({c, s, Scalar(1)});
            }};
  // The half circle is covered by two quarter arcs, the second one mirrored.
  out[1] = {"gamma2", 0.0, kPi,
            [](double t) { return Point3{std::cos(t), std::sin(t), -1.0}; }, {},
            [](std::size_t k, std::size_t n) {
              Scalar u = Scalar(2 * static_cast<long>(k), static_cast<long>(n - 1));
              bool mirrored = Scalar(1) < u;
              auto [c, s] = circle_cos_sin(mirrored ? Scalar(2) - u : u);
              return to_vector({mirrored ? -c : c, s, Scalar(-1)});
            }};
  return out;
}

Cone homogenize_and_sample(std::span<const ParamCurve> curves, std::size_t n) {
  if (n < 2) throw std::invalid_argument("need at least two samples per curve");
  std::vector<Vector> rays;
  for (const auto& c : curves) {
    for (std::size_t k = 0; k < n; ++k) {
      Vector p = c.rational_point(k, n);
      p.emplace_back(1);
      rays.push_back(normalize_ray(p));
    }
  }
  std::sort(rays.begin(), rays.end(), [](const Vector& a, const Vector& b) { return lex_compare(a, b) < 0; });
  rays.erase(std::unique(rays.begin(), rays.end()), rays.end());
  Cone k = Cone::from_generators(std::move(rays), {}, 4);
  k.name = "sampled";
  return k;
}

// ------------------------------------------------------------- roshchina ---

namespace {

Certificate roshchina_span(double tol) {
  Tally tally("g_in_face_span", tol);
  auto curves = roshchina_curves();
  std::vector<Vector> pts;
  for (std::size_t k = 1; k < 5; ++k) {
    pts.push_back(curves[2].rational_point(k, 5));
    pts.push_back(curves[3].rational_point(k, 5));
  }
  std::size_t r = rank(pts, 3);
  pts.push_back(to_vector({Scalar(0), Scalar(-1), Scalar(0)}));
  std::size_t r_g = rank(pts, 3);
  tally.require(r == 2 && r_g == 2, 0.0, {{"rank_face", r}, {"rank_with_g", r_g}});
  return tally.finish();
}

// gamma1(s)/s against g = (0,-1,0); the Taylor bound s/2 + s^2/6 dominates
// the error, and it drops below tol once s is small enough.
Certificate roshchina_limit(double tol) {
  Tally tally("g_in_tangent_cone_limit", tol);
  double last = 0.0;
  for (int k = 1; k <= 12; ++k) {
    double s = std::pow(10.0, -k);
    double q1 = -std::sin(s) / s;
    double q2 = (std::cos(s) - 1.0) / s;
    double err = std::max(std::abs(q1 + 1.0), std::abs(q2));
    double taylor = s / 2 + s * s / 6;
    // Taylor polynomials of the two components, remainders below s^3.
    double t1 = -1.0 + s * s / 6;
    double t2 = -s / 2 + s * s * s / 24;
    double gap = std::max(std::abs(q1 - t1), std::abs(q2 - t2));
    // (cos s - 1)/s loses about eps/s to cancellation
    double rounding = 4 * std::numeric_limits<double>::epsilon() / s;
    tally.require(gap <= s * s * s + rounding && err <= taylor + rounding, std::max(0.0, err - taylor),
                  {{"s", s}, {"error", err}});
    last = err;
  }
  tally.require(last <= tol, last, {{"s", 1e-12}, {"error", last}});
  return tally.finish();
}

Certificate roshchina_quotient_at(double s, double bound) {
  Tally tally("difference_quotient_at_1e-4", bound);
  double err = std::max(std::abs(-std::sin(s) / s + 1.0), std::abs((std::cos(s) - 1.0) / s));
  tally.require(err <= bound, err,
                {{"s", s}, {"error", err}, {"bound", bound}, {"taylor_bound", s / 2 + s * s / 6}});
  return tally.finish();
}

Certificate roshchina_arc(const BenchOptions& o, bool third) {
  Tally tally(third ? "g_on_gamma3" : "g_on_gamma4", o.tol);
  const Point3 g{0.0, -1.0, 0.0};
  auto curves = roshchina_curves();
  const ParamCurve& c = curves[third ? 2 : 3];
  for (std::size_t k = 0; k < o.samples; ++k) {
    double t = c.a + (c.b - c.a) * static_cast<double>(k) / static_cast<double>(o.samples - 1);
    double direct = dotn(g, c.eval(t));
    double factored = third ? std::cos(t) - 1.0 : -std::sin(t);
    tally.sample(direct, factored, Sign::negative, near(t, 0.0), {{"t", t}});
  }
  return tally.finish();
}

Certificate roshchina_endpoint(double tol) {
  Tally tally("endpoint_values", tol);
  const Point3 g{0.0, -1.0, 0.0};
  auto curves = roshchina_curves();
  for (int i : {2, 3}) {
    double v = dotn(g, curves[i].eval(0.0));
    tally.require(v == 0.0, std::abs(v), {{"curve", curves[i].name}, {"value", v}});
  }
  return tally.finish();
}

// g pairs to 1 with itself but nonpositively with every sample of the face,
// so g is outside the closed cone over the face.
Certificate roshchina_separation(const BenchOptions& o) {
  Tally tally("g_not_in_face_tangent", o.tol);
  const Point3 g{0.0, -1.0, 0.0};
  auto curves = roshchina_curves();
  double worst = -1.0;
  for (int i : {2, 3}) {
    for (std::size_t k = 0; k < o.samples; ++k) {
      double t = curves[i].b * static_cast<double>(k) / static_cast<double>(o.samples - 1);
      worst = std::max(worst, dotn(g, curves[i].eval(t)));
    }
  }
  tally.require(worst <= o.tol && dotn(g, g) > 0, std::max(0.0, worst),
                {{"max_on_face", worst}, {"g_dot_g", dotn(g, g)}});
  return tally.finish();
}

}  // namespace

CheckReport verify_roshchina(const BenchOptions& opts) {
  if (opts.samples < 2) throw std::invalid_argument("samples must be at least 2");
  std::vector<Job> jobs{
      [&] { return roshchina_span(opts.tol); },
      [&] { return roshchina_limit(opts.tol); },
      [&] { return roshchina_quotient_at(1e-4, 1e-7); },
      [&] { return roshchina_arc(opts, true); },
      [&] { return roshchina_arc(opts, false); },
      [&] { return roshchina_endpoint(opts.tol); },
      [&] { return roshchina_separation(opts); },
  };
  CheckReport r = run_jobs("roshchina", opts.tol, jobs);
  if (all_pass(r, {"g_"})) r.conclusion = "TANGENTIAL_EXPOSURE_FAILS";
  return r;
}

// ----------------------------------------------------------------- cubic ---

namespace {

constexpr long kOuter = 20;  // s-grid j/20 for two-parameter certificates

template <class T>
std::array<T, 3> f1_normal() {
  const T r7 = Num<T>::sqrt7();
  return {11 + 4 * r7, 3 * (2 + r7), -17 - 7 * r7};
}

template <class T>
std::array<T, 3> f11_normal(const T& s) {
  return {s * s, -2 * s, T(1)};
}

template <class T>
std::array<T, 3> f12_normal(const T& s) {
  const T r7 = Num<T>::sqrt7();
  return {-2 * (r7 + 1) * s * s, (r7 - 5) * s, T(4)};
}

template <class T>
std::array<T, 4> p_of(const T& s) {
  const T r7 = Num<T>::sqrt7();
  return {-2 * (r7 + 1) * s, r7 - 5, T(0), -(r7 + 3) * s * s};
}

template <class T>
std::array<T, 4> q_of(const T& s) {
  const T r7 = Num<T>::sqrt7();
  return {-2 * (r7 + 1) * s, r7 - 5, 4 / s, -(r7 + 3) * s * s};
}

template <class T>
std::array<T, 4> r_of(const T& s) {
  return {T(0), T(0), -4 / s, T(0)};
}

template <class T>
std::array<T, 4> pbar() {
  return {T(0), Num<T>::sqrt7() - 5, T(0), T(0)};
}

template <class T>
nlohmann::json at(std::initializer_list<std::pair<const char*, T>> xs) {
  nlohmann::json j;
  for (const auto& [k, v] : xs) j[k] = Num<T>::to_d(v);
  return j;
}

template <class T>
Certificate cubic_f1_gamma1(const BenchOptions& o) {
  Tally tally(std::string("F1_normal_on_gamma1") + Num<T>::tag, o.tol);
  const T r7 = Num<T>::sqrt7();
  const auto w = f1_normal<T>();
  for (std::size_t k = 0; k < o.samples; ++k) {
    T s = grid<T>(k, o.samples);
    double sd = Num<T>::to_d(s);
    T factored = s * (s - 1) * (11 + 4 * r7 + 17 * s + 7 * r7 * s);
    tally.sample(dotn(w, cubic1(s)), factored, Sign::negative, near(sd, 0) || near(sd, 1),
                 [&] { return at<T>({{"s", s}}); });
  }
  return tally.finish();
}

template <class T>
Certificate cubic_f1_gamma2(const BenchOptions& o) {
  Tally tally(std::string("F1_normal_on_gamma2") + Num<T>::tag, o.tol);
  const T r7 = Num<T>::sqrt7();
  const auto w = f1_normal<T>();
  for (std::size_t k = 0; k < o.samples; ++k) {
    T s = grid<T>(k, o.samples);
    double sd = Num<T>::to_d(s);
    T factored = s * (s - 1) * (2 + r7) * (11 + 4 * r7) / 3;
    tally.sample(dotn(w, cubic2(phi(s))), factored, Sign::negative, near(sd, 0) || near(sd, 1),
                 [&] { return at<T>({{"s", s}}); });
  }
  return tally.finish();
}

template <class T>
Certificate cubic_f2(const BenchOptions& o) {
  Tally tally(std::string("F2_normal") + Num<T>::tag, o.tol);
  const std::array<T, 3> e3{T(0), T(0), T(1)};
  for (std::size_t k = 0; k < o.samples; ++k) {
    T s = grid<T>(k, o.samples);
    tally.sample(dotn(cubic1(s), e3), -(s * s * s), Sign::negative, near(Num<T>::to_d(s), 0),
                 [&] { return at<T>({{"s", s}}); });
    tally.sample(dotn(cubic2(phi(s)), e3), T(0), Sign::zero, false, [&] { return at<T>({{"t/phi", s}}); });
  }
  return tally.finish();
}

template <class T>
Certificate cubic_f11_gamma1(const BenchOptions& o) {
  Tally tally(std::string("F11_normal_on_gamma1") + Num<T>::tag, o.tol);
  for (long j = 1; j <= kOuter; ++j) {
    T s = Num<T>::of(j, kOuter);
    double sd = Num<T>::to_d(s);
    const auto w = f11_normal(s);
    for (std::size_t k = 0; k < o.samples; ++k) {
      T u = grid<T>(k, o.samples);
      double ud = Num<T>::to_d(u);
      T factored = -u * (u - s) * (u - s);
      tally.sample(dotn(cubic1(u), w), factored, Sign::negative, near(ud, 0) || near(ud, sd),
                   [&] { return at<T>({{"s", s}, {"u", u}}); });
    }
  }
  return tally.finish();
}

template <class T>
Certificate cubic_f11_gamma2(const BenchOptions& o) {
  Tally tally(std::string("F11_normal_on_gamma2") + Num<T>::tag, o.tol);
  for (long j = 1; j <= kOuter; ++j) {
    T s = Num<T>::of(j, kOuter);
    const auto w = f11_normal(s);
    for (std::size_t k = 0; k < o.samples; ++k) {
      T u = grid<T>(k, o.samples);
      T t = phi(u);
      T factored = -s * t * (2 * t + s);
      tally.sample(dotn(cubic2(t), w), factored, Sign::negative, near(Num<T>::to_d(u), 0),
                   [&] { return at<T>({{"s", s}, {"t", t}}); });
    }
  }
  return tally.finish();
}

// f(u) = <gamma1(u), w(s)> for the F12 normal: stationary at u = s and at
// u = -(1+sqrt7)s/6 < 0, with f'' < 0 at u = s, so f' > 0 on [0,s) and
// f' < 0 on (s,1].
template <class T>
Certificate cubic_f12_stationary(const BenchOptions& o) {
  Tally tally(std::string("F12_stationary_points") + Num<T>::tag, o.tol);
  const T r7 = Num<T>::sqrt7();
  auto fprime = [&](const T& s, const T& u) {
    return 2 * (r7 + 1) * s * s - 2 * (r7 - 5) * s * u - 12 * u * u;
  };
  for (long j = 1; j <= kOuter; ++j) {
    T s = Num<T>::of(j, kOuter);
    double sd = Num<T>::to_d(s);
    T other = -(1 + r7) * s / 6;
    tally.sample(fprime(s, s), T(0), Sign::zero, false, [&] { return at<T>({{"s", s}}); });
    tally.sample(fprime(s, other), T(0), Sign::zero, false, [&] { return at<T>({{"s", s}}); });
    tally.sample(other, -(1 + r7) * s / 6, Sign::negative, false, [&] { return at<T>({{"s", s}}); });
    T second = -2 * (r7 - 5) * s - 24 * s;
    tally.sample(second, -(14 + 2 * r7) * s, Sign::negative, false, [&] { return at<T>({{"s", s}}); });
    for (std::size_t k = 0; k < o.samples; ++k) {
      T u = grid<T>(k, o.samples);
      double ud = Num<T>::to_d(u);
      T factored = -12 * (u - s) * (u + (1 + r7) * s / 6);
      tally.sample(fprime(s, u), factored, ud < sd ? Sign::positive : Sign::negative, near(ud, sd),
                   [&] { return at<T>({{"s", s}, {"u", u}}); });
    }
  }
  return tally.finish();
}

template <class T>
Certificate cubic_f12_gamma1(const BenchOptions& o) {
  Tally tally(std::string("F12_normal_on_gamma1") + Num<T>::tag, o.tol);
  const T r7 = Num<T>::sqrt7();
  for (long j = 1; j <= kOuter; ++j) {
    T s = Num<T>::of(j, kOuter);
    double sd = Num<T>::to_d(s);
    const auto w = f12_normal(s);
    const T top = (3 + r7) * s * s * s;
    for (std::size_t k = 0; k < o.samples; ++k) {
      T u = grid<T>(k, o.samples);
      T direct = dotn(cubic1(u), w);
      T listed = 2 * (r7 + 1) * s * s * u - (r7 - 5) * s * u * u - 4 * u * u * u;
      tally.sample(direct, listed, Sign::any, false, [&] { return at<T>({{"s", s}, {"u", u}}); });
      T factored = -(u - s) * (u - s) * (4 * u + (3 + r7) * s);
      tally.sample(direct - top, factored, Sign::negative, near(Num<T>::to_d(u), sd),
                   [&] { return at<T>({{"s", s}, {"u", u}}); });
    }
  }
  return tally.finish();
}

template <class T>
Certificate cubic_f12_gamma2(const BenchOptions& o) {
  Tally tally(std::string("F12_normal_on_gamma2") + Num<T>::tag, o.tol);
  const T r7 = Num<T>::sqrt7();
  for (long j = 1; j <= kOuter; ++j) {
    T s = Num<T>::of(j, kOuter);
    double sd = Num<T>::to_d(s);
    const auto w = f12_normal(s);
    const T top = (3 + r7) * s * s * s;
    for (std::size_t k = 0; k < o.samples; ++k) {
      T u = grid<T>(k, o.samples);
      T direct = dotn(cubic2(phi(u)), w);
      tally.sample(direct, (3 + r7) * (2 * s * s * u - s * u * u), Sign::any, false,
                   [&] { return at<T>({{"s", s}, {"u", u}}); });
      tally.sample(direct - top, -(3 + r7) * s * (u - s) * (u - s), Sign::negative,
                   near(Num<T>::to_d(u), sd), [&] { return at<T>({{"s", s}, {"u", u}}); });
    }
  }
  return tally.finish();
}

// Normals of F12(s) and F1 restricted to the plane of F2 are the normals of
// the parabola arc: positive multiples of (-2 phi(s), -1) and (phi(1), 1).
template <class T>
Certificate cubic_f2_projections(const BenchOptions& o) {
  Tally tally(std::string("F2_normal_projections") + Num<T>::tag, o.tol);
  const T r7 = Num<T>::sqrt7();
  for (std::size_t k = 1; k < o.samples; ++k) {
    T s = grid<T>(k, o.samples);
    auto w = f12_normal(s);
    T a = -2 * phi(s);
    T b = T(-1);
    tally.sample(w[0] * b - w[1] * a, T(0), Sign::zero, false, [&] { return at<T>({{"s", s}}); });
    tally.sample(w[1] / b, (5 - r7) * s, Sign::positive, false, [&] { return at<T>({{"s", s}}); });
  }
  auto w = f1_normal<T>();
  T a = phi(T(1));
  tally.sample(w[0] - w[1] * a, T(0), Sign::zero, false, nlohmann::json("F1"));
  tally.sample(w[1], 3 * (2 + r7), Sign::positive, false, nlohmann::json("F1"));
  return tally.finish();
}

template <class T>
Certificate cubic_fdc_decomposition(const BenchOptions& o) {
  Tally tally(std::string("FDC_p_equals_q_plus_r") + Num<T>::tag, o.tol);
  for (std::size_t k = 1; k < o.samples; ++k) {
    T s = grid<T>(k, o.samples);
    auto p = p_of(s);
    auto q = q_of(s);
    auto r = r_of(s);
    for (std::size_t i = 0; i < 4; ++i) {
      tally.sample(p[i], q[i] + r[i], Sign::any, false, [&] { return at<T>({{"s", s}}); });
    }
  }
  return tally.finish();
}

template <class T>
Certificate cubic_fdc_q_gamma1(const BenchOptions& o) {
  Tally tally(std::string("FDC_q_on_gamma1") + Num<T>::tag, o.tol);
  const T r7 = Num<T>::sqrt7();
  for (long j = 1; j <= kOuter; ++j) {
    T s = Num<T>::of(j, kOuter);
    double sd = Num<T>::to_d(s);
    auto q = q_of(s);
    for (std::size_t k = 0; k < o.samples; ++k) {
      T u = grid<T>(k, o.samples);
      T factored = -(r7 + 3 + 4 * u / s) * (u - s) * (u - s);
      tally.sample(dotn(lift(cubic1(u)), q), factored, Sign::negative, near(Num<T>::to_d(u), sd),
                   [&] { return at<T>({{"s", s}, {"u", u}}); });
    }
  }
  return tally.finish();
}

template <class T>
Certificate cubic_fdc_q_gamma2(const BenchOptions& o) {
  Tally tally(std::string("FDC_q_on_gamma2") + Num<T>::tag, o.tol);
  const T r7 = Num<T>::sqrt7();
  for (long j = 1; j <= kOuter; ++j) {
    T s = Num<T>::of(j, kOuter);
    double sd = Num<T>::to_d(s);
    auto q = q_of(s);
    for (std::size_t k = 0; k < o.samples; ++k) {
      T u = grid<T>(k, o.samples);
      T factored = -(3 + r7) * (u - s) * (u - s);
      tally.sample(dotn(lift(cubic2(phi(u))), q), factored, Sign::negative, near(Num<T>::to_d(u), sd),
                   [&] { return at<T>({{"s", s}, {"u", u}}); });
    }
  }
  return tally.finish();
}

// p(s) - pbar = (-2(sqrt7+1)s, 0, 0, -(sqrt7+3)s^2), which shrinks with s.
template <class T>
Certificate cubic_fdc_limit(const BenchOptions& o) {
  Tally tally(std::string("FDC_p_converges_to_pbar") + Num<T>::tag, o.tol);
  const T r7 = Num<T>::sqrt7();
  long den = 1;
  double last = 1.0;
  for (int k = 1; k <= 12; ++k) {
    den *= 10;
    T s = Num<T>::of(1, den);
    auto p = p_of(s);
    auto pb = pbar<T>();
    std::array<T, 4> expect{-2 * (r7 + 1) * s, T(0), T(0), -(r7 + 3) * s * s};
    double size = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
      tally.sample(p[i] - pb[i], expect[i], Sign::any, false, [&] { return at<T>({{"s", s}}); });
      size = std::max(size, std::abs(Num<T>::to_d(p[i] - pb[i])));
    }
    tally.require(size < last, 0.0, [&] { return at<T>({{"s", s}}); });
    last = size;
  }
  tally.require(last <= o.tol, last, {{"s", 1e-12}, {"distance", last}});
  return tally.finish();
}

template <class T>
Certificate cubic_fdc_pbar(const BenchOptions& o) {
  Tally tally(std::string("FDC_pbar_on_gamma1") + Num<T>::tag, o.tol);
  const T r7 = Num<T>::sqrt7();
  for (std::size_t k = 0; k < o.samples; ++k) {
    T s = grid<T>(k, o.samples);
    tally.sample(dotn(pbar<T>(), lift(cubic1(s))), (5 - r7) * s * s, Sign::positive, near(Num<T>::to_d(s), 0),
                 [&] { return at<T>({{"s", s}}); });
  }
  return tally.finish();
}

// The linear form (5 - sqrt7) s is only right at s = 0 and s = 1; the value
// is quadratic in s. Recorded as a note, it does not decide anything.
Certificate cubic_pbar_linear_note(const BenchOptions& o) {
  Tally tally("FDC_pbar_linear_form_as_listed", o.tol);
  const double r7 = std::sqrt(7.0);
  std::size_t agree = 0;
  double worst = 0.0;
  for (std::size_t k = 0; k < o.samples; ++k) {
    double s = grid<double>(k, o.samples);
    double gap = std::abs(dotn(pbar<double>(), lift(cubic1(s))) - (5 - r7) * s);
    worst = std::max(worst, gap);
    if (gap <= o.tol) ++agree;
  }
  Certificate c = tally.finish();
  c.status = Status::note;
  c.samples = o.samples;
  c.max_violation = worst;
  c.witness = {{"agreeing_samples", agree}, {"value_at_half", (5 - r7) / 4}, {"linear_at_half", (5 - r7) / 2}};
  return c;
}

// pbar + lambda e3 takes a positive value on some point of gamma1 for every
// lambda, so pbar is outside polar(K) + F^perp.
Certificate cubic_pbar_outside(double tol) {
  Tally tally("FDC_pbar_outside_sum", tol);
  for (long lambda : {-1000000L, -1000L, -10L, -1L, 0L, 1L, 2L, 10L, 1000L, 1000000L}) {
    auto x = pbar<Scalar>();
    x[2] = Scalar(lambda);
    Scalar s = lambda <= 0 ? Scalar(1) : Scalar(1, lambda);
    Scalar v = dotn(x, lift(cubic1(s)));
    tally.sample(v, v, Sign::positive, false, {{"lambda", lambda}, {"s", s.to_double()}});
  }
  return tally.finish();
}

// F^perp for F = cone{(gamma2, 1)} from sampled generators, and r(s) inside it.
Certificate cubic_r_in_perp(const BenchOptions& o) {
  Tally tally("FDC_r_in_face_perp", o.tol);
  std::vector<Vector> face;
  for (std::size_t k = 0; k < 11; ++k) {
    auto p = cubic2(phi(grid<Scalar>(k, 11)));
    face.push_back(Vector{p[0], p[1], p[2], Scalar(1)});
  }
  Matrix perp = orthogonal_complement(face, 4);
  bool is_e3 = perp.rows() == 1 && normalize_line(perp.row(0)) == unit_vector(4, 2);
  tally.require(is_e3, 0.0, {{"perp_dim", perp.rows()}});
  for (std::size_t k = 1; k < o.samples; ++k) {
    Scalar s = grid<Scalar>(k, o.samples);
    auto r = r_of(s);
    Vector rv(r.begin(), r.end());
    for (const auto& f : face) tally.sample(dot(rv, f), Scalar(0), Sign::zero, false, {{"s", s.to_double()}});
  }
  return tally.finish();
}

Certificate cubic_endpoints(double tol) {
  Tally tally("F1_normal_endpoints", tol);
  const auto w = f1_normal<Scalar>();
  const Scalar one(1);
  tally.sample(dotn(w, cubic1(one)), Scalar(0), Sign::zero, false, "gamma1(1)");
  tally.sample(dotn(w, cubic2(phi(one))), Scalar(0), Sign::zero, false, "gamma2(phi(1))");
  tally.sample(dotn(w, cubic1(Scalar(0))), Scalar(0), Sign::zero, false, "origin");
  return tally.finish();
}

// The tangent cone at the origin has the slice conv{(-s,-s^2), (t,0)} at
// height x = -1; the scaled curves are gamma_i divided by the parameter.
Certificate cubic_scaled_curves(const BenchOptions& o) {
  Tally tally("second_order_scaled_curves", o.tol);
  for (std::size_t k = 1; k < o.samples; ++k) {
    Scalar s = grid<Scalar>(k, o.samples);
    std::array<Scalar, 3> kappa1{Scalar(-1), -s, -(s * s)};
    std::array<Scalar, 3> kappa2{Scalar(-1), s, Scalar(0)};
    auto g1 = cubic1(s);
    auto g2 = cubic2(s);
    for (std::size_t i = 0; i < 3; ++i) {
      tally.sample(kappa1[i] * s, g1[i], Sign::any, false, {{"s", s.to_double()}});
      tally.sample(kappa2[i] * s, g2[i], Sign::any, false, {{"t", s.to_double()}});
    }
  }
  return tally.finish();
}

// (0,1) supports the slice with value 0 on the whole segment [0, phi(1)] x {0}
// and negative values on the curve, so the origin is an endpoint of an
// exposed edge and hence a face.
Certificate cubic_origin_face(const BenchOptions& o) {
  Tally tally("second_order_origin_is_face", o.tol);
  for (std::size_t k = 0; k < o.samples; ++k) {
    Scalar s = grid<Scalar>(k, o.samples);
    Scalar curve = -(s * s);
    tally.sample(curve, -(s * s), Sign::negative, k == 0, {{"s", s.to_double()}});
    tally.sample(Scalar(0) * phi(s), Scalar(0), Sign::zero, false, {{"t/phi", s.to_double()}});
  }
  return tally.finish();
}

// No normal exposes the origin of the slice. Every rational direction n gets
// a witness: a slice point with <n,x> > 0 (n does not support), or, for
// n = (0,b) with b > 0, the second point (phi(1), 0) on the supporting line.
Certificate cubic_origin_unexposed(double tol) {
  Tally tally("second_order_origin_unexposed", tol);
  std::vector<std::pair<long, long>> normals;
  for (long a = -12; a <= 12; ++a)
    for (long b = -12; b <= 12; ++b)
      if (a != 0 || b != 0) normals.emplace_back(a, b);
  for (long e = 10; e <= 1000000000L; e *= 10) normals.emplace_back(-1, e);
  const Scalar tmax = phi(Scalar(1));
  for (auto [a, b] : normals) {
    Scalar na(a), nb(b);
    nlohmann::json where{{"normal", {a, b}}};
    if (a > 0) {
      tally.sample(na * tmax, na * tmax, Sign::positive, false, where);
    } else if (a == 0 && b > 0) {
      // supports, but the face it cuts out contains (phi(1), 0) as well
      tally.sample(na * tmax + nb * Scalar(0), Scalar(0), Sign::zero, false, where);
    } else {
      Scalar s(1);
      if (b > 0) s = std::min(Scalar(1), Scalar(-a, 2 * b));
      Scalar v = -s * na - s * s * nb;
      tally.sample(v, s * (-na - s * nb), Sign::positive, false, where);
    }
  }
  return tally.finish();
}

template <class T>
void cubic_jobs(const BenchOptions& o, std::vector<Job>& jobs) {
  jobs.push_back([&o] { return cubic_f1_gamma1<T>(o); });
  jobs.push_back([&o] { return cubic_f1_gamma2<T>(o); });
  jobs.push_back([&o] { return cubic_f2<T>(o); });
  jobs.push_back([&o] { return cubic_f11_gamma1<T>(o); });
  jobs.push_back([&o] { return cubic_f11_gamma2<T>(o); });
  jobs.push_back([&o] { return cubic_f12_stationary<T>(o); });
  jobs.push_back([&o] { return cubic_f12_gamma1<T>(o); });
  jobs.push_back([&o] { return cubic_f12_gamma2<T>(o); });
  jobs.push_back([&o] { return cubic_f2_projections<T>(o); });
  jobs.push_back([&o] { return cubic_fdc_decomposition<T>(o); });
  jobs.push_back([&o] { return cubic_fdc_q_gamma1<T>(o); });
  jobs.push_back([&o] { return cubic_fdc_q_gamma2<T>(o); });
  jobs.push_back([&o] { return cubic_fdc_limit<T>(o); });
  jobs.push_back([&o] { return cubic_fdc_pbar<T>(o); });
}

}  // namespace

CheckReport verify_cubic(const BenchOptions& opts) {
  if (opts.samples < 2) throw std::invalid_argument("samples must be at least 2");
  std::vector<Job> jobs;
  cubic_jobs<double>(opts, jobs);
  if (opts.exact) cubic_jobs<Scalar>(opts, jobs);
  jobs.push_back([&] { return cubic_endpoints(opts.tol); });
  jobs.push_back([&] { return cubic_pbar_linear_note(opts); });
  jobs.push_back([&] { return cubic_pbar_outside(opts.tol); });
  jobs.push_back([&] { return cubic_r_in_perp(opts); });
  jobs.push_back([&] { return cubic_scaled_curves(opts); });
  jobs.push_back([&] { return cubic_origin_face(opts); });
  jobs.push_back([&] { return cubic_origin_unexposed(opts.tol); });
  CheckReport r = run_jobs("cubic", opts.tol, jobs);
  if (r.passed()) {
    r.conclusion = "faces F1, F2, F11(s), F12(s) exposed; tangent cone at 0 not facially exposed; K not FDC";
  }
  return r;
}

std::vector<std::pair<std::string, Vector>> cubic_polar_certificates() {
  auto vec = [](const std::array<Scalar, 4>& a) { return Vector(a.begin(), a.end()); };
  std::vector<std::pair<std::string, Vector>> out;
  auto w = f1_normal<Scalar>();
  out.emplace_back("F1", vec({w[0], w[1], w[2], Scalar(0)}));
  out.emplace_back("F2", unit_vector(4, 2));
  for (long j = 1; j <= 4; ++j) {
    Scalar s(j, 4);
    auto f = f11_normal(s);
    out.emplace_back("F11(" + s.to_string() + ")", vec({f[0], f[1], f[2], Scalar(0)}));
    out.emplace_back("q(" + s.to_string() + ")", vec(q_of(s)));
  }
  return out;
}

// --------------------------------------------------------------- circles ---

namespace {

struct Listed {
  std::vector<Point3> points;
  int whole_curve = -1;  // 0 or 1 when a whole curve is the maximizer set
};

struct RegionNormal {
  Point3 v;
  int side;  // +1 above the threshold in v3, -1 below, 0 on it
};

double frac(double x) { return x - std::floor(x); }

// Twenty-four normals per region: eight (v1,v2) pairs, three v3 each (H: twelve
// pairs of opposite v3).
std::vector<RegionNormal> region_normals(char region) {
  std::vector<RegionNormal> out;
  for (int i = 1; i <= (region == 'H' ? 12 : 8); ++i) {
    double a = 0.25 + 1.75 * frac(i * 0.6180339887498949);
    double b = 0.25 + 1.75 * frac(i * 0.7548776662466927);
    double delta = 0.1 + 0.9 * frac(i * 0.5698402909980532);
    double v1 = 0, v2 = 0;
    switch (region) {
      case 'A': v1 = a; v2 = b; break;
      case 'B': v1 = i % 4 == 0 ? 0.0 : -a; v2 = b; break;
      case 'C': v2 = i % 4 == 0 ? 0.0 : -a; v1 = v2 - b; break;
      case 'D': v1 = v2 = -a; break;
      case 'E': v1 = -a; v2 = -a - b; break;
      case 'F': v1 = 0; v2 = -a; break;
      case 'G': v1 = a; v2 = i % 4 == 0 ? 0.0 : -b; break;
      default: break;
    }
    double s = std::hypot(v1, v2);
    double threshold = 0.0;
    switch (region) {
      case 'B': threshold = (s - v2) / 2; break;
      case 'C': threshold = (-v1 - v2) / 2; break;
      case 'D': case 'E': threshold = -v1; break;
      default: break;
    }
    out.push_back({{v1, v2, threshold + delta}, +1});
    out.push_back({{v1, v2, threshold - delta}, -1});
    if (region != 'H') out.push_back({{v1, v2, threshold}, 0});
  }
  return out;
}

Listed listed_argmax(char region, const Point3& v, int side) {
  const double s = std::hypot(v[0], v[1]);
  const Point3 u1{v[0] / s, v[1] / s, 1}, u2{v[0] / s, v[1] / s, -1};
  const Point3 p011{0, 1, 1}, p101{1, 0, 1}, p10m{1, 0, -1}, pm10m{-1, 0, -1};
  auto pick = [side](std::vector<Point3> above, std::vector<Point3> below) {
    if (side > 0) return Listed{above};
    if (side < 0) return Listed{below};
    above.insert(above.end(), below.begin(), below.end());
    return Listed{above};
  };
  switch (region) {
    case 'A': return pick({u1}, {u2});
    case 'B': return pick({p011}, {u2});
    case 'C': return pick({p011}, {pm10m});
    case 'D': return pick({p101, p011}, {pm10m});
    case 'E': return pick({p101}, {pm10m});
    case 'F': return pick({p101}, {p10m, pm10m});
    case 'G': return pick({p101}, {p10m});
    default: return Listed{{}, side > 0 ? 0 : 1};
  }
}

struct CircleGrid {
  std::vector<Point3> pts;
  std::vector<int> curve;
  double step = 0.0;  // largest angular step
};

CircleGrid circle_grid(std::size_t samples) {
  CircleGrid g;
  auto curves = circle_curves();
  for (int c = 0; c < 2; ++c) {
    for (std::size_t k = 0; k < samples; ++k) {
      double t = curves[c].b * static_cast<double>(k) / static_cast<double>(samples - 1);
      g.pts.push_back(curves[c].eval(t));
      g.curve.push_back(c);
    }
    g.step = std::max(g.step, curves[c].b / static_cast<double>(samples - 1));
  }
  return g;
}

double dist(const Point3& x, const Point3& y) {
  return std::hypot(x[0] - y[0], x[1] - y[1], x[2] - y[2]);
}

bool on_curves(const Point3& p, double tol) {
  bool circle = std::abs(p[0] * p[0] + p[1] * p[1] - 1) <= tol;
  if (p[2] == 1) return circle && p[0] >= -tol && p[1] >= -tol;
  if (p[2] == -1) return circle && p[1] >= -tol;
  return false;
}

Certificate circles_region(char region, const BenchOptions& o, const CircleGrid& grid) {
  Tally tally(std::string("region_") + region, o.tol);
  const double radius = 4 * grid.step;
  for (const auto& [v, side] : region_normals(region)) {
    Listed listed = listed_argmax(region, v, side);
    nlohmann::json where{{"v", v}, {"side", side}};
    double top;
    bool ok = true;
    if (listed.whole_curve >= 0) {
      top = listed.whole_curve == 0 ? v[2] : -v[2];
    } else {
      top = dotn(v, listed.points[0]);
      for (const auto& p : listed.points) {
        ok = ok && on_curves(p, o.tol) && std::abs(dotn(v, p) - top) <= o.tol;
      }
    }
    double sampled_max = -std::numeric_limits<double>::infinity();
    double worst_outside = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < grid.pts.size(); ++i) {
      double val = dotn(v, grid.pts[i]);
      sampled_max = std::max(sampled_max, val);
      bool inside;
      if (listed.whole_curve >= 0) {
        inside = grid.curve[i] == listed.whole_curve;
        if (inside) ok = ok && std::abs(val - top) <= o.tol;
      } else {
        inside = std::any_of(listed.points.begin(), listed.points.end(),
                             [&](const Point3& p) { return dist(p, grid.pts[i]) <= radius; });
      }
      if (!inside) worst_outside = std::max(worst_outside, val);
    }
    double bound = std::hypot(v[0], v[1]) * grid.step * grid.step / 8 + o.tol;
    ok = ok && sampled_max <= top + o.tol && top - sampled_max <= bound && worst_outside < top - o.tol;
    tally.require(ok, std::max(0.0, sampled_max - top), where);
  }
  return tally.finish();
}

std::vector<Point4> fixed_polar_rays() {
  return {{0, 0, 1, -1}, {0, 0, -1, -1}, {-1, -1, 1, 0}, {0, -1, 0, 0}, {0, 0, 0, -1}};
}

Point4 polar_s1(double t) { return {std::cos(t), std::sin(t), 0, -1}; }
Point4 polar_s2(double tau) {
  double s = std::sin(tau);
  return {std::cos(tau), s, (1 - s) / 2, (-1 - s) / 2};
}

// Listed polar generators are nonpositive on both lifted curves.
Certificate circles_polar_members(const BenchOptions& o) {
  Tally tally("polar_generators_on_curves", o.tol);
  auto curves = circle_curves();
  std::vector<std::vector<Point4>> lifted(2);
  std::vector<std::vector<double>> params(2);
  for (int c = 0; c < 2; ++c) {
    for (std::size_t k = 0; k < o.samples; ++k) {
      double t = curves[c].b * static_cast<double>(k) / static_cast<double>(o.samples - 1);
      lifted[c].push_back(lift(curves[c].eval(t)));
      params[c].push_back(t);
    }
  }
  for (std::size_t k = 0; k < o.samples; ++k) {
    double t = (kPi / 2) * static_cast<double>(k) / static_cast<double>(o.samples - 1);
    double tau = kPi / 2 + t;
    Point4 g1 = polar_s1(t), g2 = polar_s2(tau);
    for (int c = 0; c < 2; ++c) {
      for (std::size_t i = 0; i < o.samples; ++i) {
        double u = params[c][i];
        double f1 = std::cos(t - u) - 1;
        double f2 = c == 0 ? std::cos(tau - u) - std::sin(tau) : std::cos(tau - u) - 1;
        tally.sample(dotn(g1, lifted[c][i]), f1, Sign::nonpositive, false,
                     [&] { return nlohmann::json{{"t", t}, {"curve", c}, {"u", u}}; });
        tally.sample(dotn(g2, lifted[c][i]), f2, Sign::nonpositive, false,
                     [&] { return nlohmann::json{{"tau", tau}, {"curve", c}, {"u", u}}; });
      }
    }
  }
  for (const auto& g : fixed_polar_rays()) {
    for (int c = 0; c < 2; ++c) {
      for (const auto& x : lifted[c]) {
        double val = dotn(g, x);
        tally.require(val <= o.tol, std::max(0.0, val), [&] { return nlohmann::json{{"g", g}, {"x", x}}; });
      }
    }
  }
  return tally.finish();
}

// An interior point of K pairs negatively with every listed generator, so 0
// is not in their convex hull.
Certificate circles_polar_pointed(const BenchOptions& o) {
  Tally tally("polar_generators_pointed", o.tol);
  const Point4 p{0, 1, 0, 2};
  for (std::size_t k = 0; k < o.samples; ++k) {
    double t = (kPi / 2) * static_cast<double>(k) / static_cast<double>(o.samples - 1);
    tally.sample(dotn(polar_s1(t), p), std::sin(t) - 2, Sign::negative, false, {{"t", t}});
    tally.sample(dotn(polar_s2(kPi / 2 + t), p), -1.0, Sign::negative, false, {{"tau", kPi / 2 + t}});
  }
  for (const auto& g : fixed_polar_rays()) {
    double val = dotn(g, p);
    tally.require(val < 0, std::max(0.0, val), {{"g", g}});
  }
  return tally.finish();
}

// Tangent system at (0,1,1): a union of two pieces, split by the sign of x.
// Returns the largest constraint value divided by |d| (<= 0 means member).
double tangent_system_excess(const Point3& d) {
  auto [x, y, z] = d;
  double n = std::hypot(x, y, z);
  double root = std::sqrt(std::max(0.0, z * z - 4 * x * x));
  double first = std::max({z, -x - y + z, 2 * y - z - root, z - 2 * x, x});
  double second = std::max({z, -x - y + z, y, -x, z - 2 * x});
  return std::min(first, second) / n;
}

// Lattice directions well inside (outside) the listed tangent system must be
// inside (outside) the exact tangent cone of a rational inner approximation.
Certificate circles_tangent_members(double tol) {
  Tally tally("tangent_system_sampled_members", tol);
  constexpr std::size_t kN = 201;
  constexpr double kMargin = 0.05;
  auto curves = circle_curves();
  Vector apex = to_vector({Scalar(0), Scalar(1), Scalar(1)});
  std::vector<Vector> dirs;
  for (const auto& c : curves) {
    for (std::size_t k = 0; k < kN; ++k) {
      Vector d = subtract(c.rational_point(k, kN), apex);
      if (!is_zero(d)) dirs.push_back(normalize_ray(d));
    }
  }
  Cone tangent = Cone::from_generators(dirs, {}, 3);
  std::size_t inside = 0, outside = 0;
  for (long a = -4; a <= 4; ++a) {
    for (long b = -4; b <= 4; ++b) {
      for (long c = -4; c <= 4; ++c) {
        if (a == 0 && b == 0 && c == 0) continue;
        Point3 d{static_cast<double>(a), static_cast<double>(b), static_cast<double>(c)};
        double e = tangent_system_excess(d);
        if (std::abs(e) < kMargin) continue;
        bool member = contains(tangent, to_vector({Scalar(a), Scalar(b), Scalar(c)}));
        bool expect = e < 0;
        (expect ? inside : outside) += 1;
        tally.require(member == expect, 0.0, {{"d", {a, b, c}}, {"excess", e}, {"member", member}});
      }
    }
  }
  tally.set_witness({{"inside", inside}, {"outside", outside}, {"samples_per_curve", kN}});
  return tally.finish();
}

// The family (-sqrt(t(1-t)), -t, -1) lies in the first piece of the tangent
// system, and for p = (u,v,0) with u < 0 the scaled pairing <p,f(t)>/sqrt(t)
// tends to -u > 0, so no such p can expose the subface x = y = 0.
Certificate circles_unexposed_family(const BenchOptions& o) {
  Tally tally("unexposed_subface_family", o.tol);
  // (1,0,-1) sits on the y = 0 face and off the subface, forcing u < 0.
  tally.require(tangent_system_excess({1, 0, -1}) <= o.tol, 0.0, "(1,0,-1)");
  std::vector<double> ts;
  for (int k = 0; k <= 44; ++k) ts.push_back(0.1 * std::pow(10.0, -k / 4.0));
  for (double t : ts) {
    Point3 f{-std::sqrt(t * (1 - t)), -t, -1};
    double e = tangent_system_excess(f);
    tally.require(e <= o.tol, std::max(0.0, e), {{"t", t}});
  }
  for (double u : {-2.0, -1.0, -0.5, -0.1}) {
    for (double v : {-1.0, 0.0, 1.0, 5.0}) {
      for (double t : ts) {
        Point3 f{-std::sqrt(t * (1 - t)), -t, -1};
        double scaled = dotn(Point3{u, v, 0}, f) / std::sqrt(t);
        double factored = -u * std::sqrt(1 - t) - v * std::sqrt(t);
        tally.sample(scaled, factored, Sign::any, false, {{"u", u}, {"v", v}, {"t", t}});
      }
      double t = ts.back();
      Point3 f{-std::sqrt(t * (1 - t)), -t, -1};
      double limit_gap = std::abs(dotn(Point3{u, v, 0}, f) / std::sqrt(t) + u);
      double limit_bound = std::abs(u) * t + std::abs(v) * std::sqrt(t) + o.tol;
      tally.require(limit_gap <= limit_bound, std::max(0.0, limit_gap - limit_bound),
                    {{"u", u}, {"v", v}});
      tally.sample(dotn(Point3{u, v, 0}, f), dotn(Point3{u, v, 0}, f), Sign::positive, false,
                   {{"u", u}, {"v", v}, {"t", t}});
    }
  }
  return tally.finish();
}

Certificate circles_family_note(const BenchOptions& o) {
  Tally tally("unexposed_subface_family_as_listed", o.tol);
  Certificate c = tally.finish();
  double t = 1e-4;
  Point3 f{-std::sqrt(t * (t + 1)), -t, -1};
  double slack = 2 * f[1] - f[2] - std::sqrt(f[2] * f[2] - 4 * f[0] * f[0]);
  c.status = Status::note;
  c.samples = 1;
  c.max_violation = slack;
  c.witness = {{"t", t},
               {"curved_constraint_excess", slack},
               {"unscaled_pairing_at_u=-1", dotn(Point3{-1, 0, 0}, f)}};
  return c;
}

Scalar inv_sqrt2() { return Scalar::quadratic(0, mpq_class(1, 2), 2); }

// Projection of the fixed polar rays onto span F for the top (sign = +1) or
// bottom (sign = -1) face, exact in Q(sqrt 2), then the witness normal.
Certificate circles_witness(bool top, const BenchOptions& o) {
  Tally tally(top ? "top_face_witness" : "bottom_face_witness", o.tol);
  const Scalar r2 = Scalar::sqrt_of(2);
  const Scalar h = inv_sqrt2();
  const long sgn = top ? 1 : -1;
  // F^perp from sampled generators of the face.
  auto curves = circle_curves();
  std::vector<Vector> face;
  for (std::size_t k = 0; k < 9; ++k) {
    Vector p = curves[top ? 0 : 1].rational_point(k, 9);
    p.emplace_back(1);
    face.push_back(p);
  }
  Matrix perp = orthogonal_complement(face, 4);
  Vector expect_perp = normalize_line(to_vector({Scalar(0), Scalar(0), Scalar(1), Scalar(-sgn)}));
  tally.require(perp.rows() == 1 && normalize_line(perp.row(0)) == expect_perp, 0.0, "face_perp");

  const std::array<Vector, 3> basis{unit_vector(4, 0), unit_vector(4, 1),
                                    to_vector({Scalar(0), Scalar(0), h, Scalar(sgn) * h})};
  const std::array<Scalar, 3> w = top ? std::array<Scalar, 3>{Scalar(1), Scalar(1), Scalar(5, 2)}
                                      : std::array<Scalar, 3>{Scalar(0), Scalar(1, 2), Scalar(-1)};
  std::vector<std::array<Scalar, 3>> listed;
  std::vector<Scalar> listed_values;
  if (top) {
    listed = {{Scalar(0), Scalar(0), Scalar(0)}, {Scalar(0), Scalar(0), -r2}, {Scalar(-1), Scalar(-1), h},
              {Scalar(0), Scalar(-1), Scalar(0)}, {Scalar(0), Scalar(0), -h}};
    listed_values = {Scalar(0), Scalar(-5, 2) * r2, Scalar(-2) + Scalar(5, 4) * r2, Scalar(-1),
                     Scalar(-5, 4) * r2};
  } else {
    listed = {{Scalar(0), Scalar(0), r2}, {Scalar(0), Scalar(0), Scalar(0)}, {Scalar(-1), Scalar(-1), h},
              {Scalar(0), Scalar(-1), Scalar(0)}, {Scalar(0), Scalar(0), h}};
    listed_values = {-r2, Scalar(0), Scalar(-1, 2) - h, Scalar(-1, 2), -h};
  }
  std::vector<std::array<long, 4>> fixed{{0, 0, 1, -1}, {0, 0, -1, -1}, {-1, -1, 1, 0}, {0, -1, 0, 0}, {0, 0, 0, -1}};
  for (std::size_t i = 0; i < fixed.size(); ++i) {
    Vector g;
    for (long x : fixed[i]) g.emplace_back(x);
    std::array<Scalar, 3> proj{dot(basis[0], g), dot(basis[1], g), dot(basis[2], g)};
    tally.require(proj == listed[i], 0.0, {{"ray", fixed[i]}});
    Scalar val = dotn(w, proj);
    bool zero_ray = proj == std::array<Scalar, 3>{Scalar(0), Scalar(0), Scalar(0)};
    tally.sample(val, listed_values[i], zero_ray ? Sign::zero : Sign::negative, false, {{"ray", fixed[i]}});
  }
  // The two circular families, in float64.
  const double z = w[2].to_double(), y = w[1].to_double(), hd = 1 / std::sqrt(2.0);
  const Point3 wd{w[0].to_double(), y, z};
  auto project = [&](const Point4& g) { return Point3{g[0], g[1], hd * (g[2] + sgn * g[3])}; };
  for (std::size_t k = 0; k < o.samples; ++k) {
    double t = (kPi / 2) * static_cast<double>(k) / static_cast<double>(o.samples - 1);
    double tau = kPi / 2 + t;
    double f1 = top ? std::cos(t) + std::sin(t) - z * hd : y * std::sin(t) - hd;
    double f2 = top ? std::cos(tau) + std::sin(tau) - z * hd * std::sin(tau) : y * std::sin(tau) - hd;
    tally.sample(dotn(wd, project(polar_s1(t))), f1, Sign::negative, false, {{"t", t}});
    tally.sample(dotn(wd, project(polar_s2(tau))), f2, Sign::negative, false, {{"tau", tau}});
  }
  return tally.finish();
}

}  // namespace

std::vector<Point4> circles_polar_generators(std::size_t per_family) {
  std::vector<Point4> out;
  for (std::size_t k = 0; k < per_family; ++k) {
    double t = (kPi / 2) * static_cast<double>(k) / static_cast<double>(per_family - 1);
    out.push_back(polar_s1(t));
    out.push_back(polar_s2(kPi / 2 + t));
  }
  auto fixed = fixed_polar_rays();
  out.insert(out.end(), fixed.begin(), fixed.end());
  return out;
}

CheckReport verify_circles(const BenchOptions& opts) {
  if (opts.samples < 2) throw std::invalid_argument("samples must be at least 2");
  const CircleGrid grid = circle_grid(opts.samples);
  std::vector<Job> jobs;
  for (char region : std::string("ABCDEFGH")) {
    jobs.push_back([&opts, &grid, region] { return circles_region(region, opts, grid); });
  }
  jobs.push_back([&] { return circles_polar_members(opts); });
  jobs.push_back([&] { return circles_polar_pointed(opts); });
  jobs.push_back([&] { return circles_tangent_members(opts.tol); });
  jobs.push_back([&] { return circles_unexposed_family(opts); });
  jobs.push_back([&] { return circles_family_note(opts); });
  jobs.push_back([&] { return circles_witness(true, opts); });
  jobs.push_back([&] { return circles_witness(false, opts); });
  CheckReport r = run_jobs("circles", opts.tol, jobs);
  if (r.passed()) r.conclusion = "tangent cone at (0,1,1) not facially exposed; K is FDC";
  return r;
}

// -------------------------------------------------------------- sandwich ---

CheckReport verify_sandwich(std::span<const std::size_t> ns, double tol) {
  std::vector<Job> jobs;
  for (std::size_t n : ns) {
    jobs.push_back([n, tol] {
      Tally tally("cubic_N" + std::to_string(n), tol);
      auto curves = cubic_curves();
      Cone p = polar(homogenize_and_sample(curves, n));
      for (const auto& [name, g] : cubic_polar_certificates()) {
        tally.require(contains(p, g), 0.0, {{"certificate", name}});
      }
      return tally.finish();
    });
    jobs.push_back([n, tol] {
      Tally tally("circles_N" + std::to_string(n), tol);
      auto curves = circle_curves();
      Cone k = homogenize_and_sample(curves, n);
      Cone p = polar(k);
      std::vector<std::array<long, 4>> fixed{
          {0, 0, 1, -1}, {0, 0, -1, -1}, {-1, -1, 1, 0}, {0, -1, 0, 0}, {0, 0, 0, -1}};
      for (const auto& f : fixed) {
        Vector g;
        for (long x : f) g.emplace_back(x);
        tally.require(contains(p, g), 0.0, {{"ray", f}});
      }
      std::vector<Point4> rays;
      for (const auto& r : k.generators().rays) {
        auto d = to_doubles(r);
        rays.push_back({d[0], d[1], d[2], d[3]});
      }
      for (const auto& g : circles_polar_generators(201)) {
        double worst = -std::numeric_limits<double>::infinity();
        for (const auto& r : rays) worst = std::max(worst, dotn(g, r));
        tally.require(worst <= tol, std::max(0.0, worst), {{"g", g}});
      }
      return tally.finish();
    });
  }
  CheckReport r = run_jobs("sandwich", tol, jobs);
  if (r.passed()) r.conclusion = "every polar certificate lies in the polar of every sampled cone";
  return r;
}

CheckReport verify_example(const std::string& name, const BenchOptions& opts) {
  if (name == "roshchina") return verify_roshchina(opts);
  if (name == "cubic") return verify_cubic(opts);
  if (name == "circles") return verify_circles(opts);
  if (name == "sandwich") {
    const std::size_t ns[] = {5, 50, 500};
    return verify_sandwich(ns, opts.tol);
  }
  throw std::invalid_argument("unknown example: " + name);
}

nlohmann::json bench_json(const CheckReport& report) {
  nlohmann::json full = report.to_json();
  nlohmann::json out;
  out["example"] = report.subject;
  out["verdict"] = full["verdict"];
  if (!report.conclusion.empty()) out["conclusion"] = report.conclusion;
  out["tolerance"] = report.tolerance;
  out["certificates"] = full["certificates"];
  return out;
}

}  // namespace conelab
