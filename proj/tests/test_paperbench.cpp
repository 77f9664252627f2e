#include "doctest.h"

#include <chrono>
#include <cmath>
#include <numbers>

#include "conelab/paperbench.hpp"

using namespace conelab;

namespace {

const double r7 = std::sqrt(7.0);

const Certificate* find(const CheckReport& r, const std::string& name) {
  for (const auto& c : r.certificates)
    if (c.name == name) return &c;
  return nullptr;
}

template <class F>
double seconds(F&& f) {
  auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Vector ints(std::initializer_list<long> xs) {
  Vector out;
  for (long x : xs) out.emplace_back(x);
  return out;
}

}  // namespace

TEST_CASE("curve samples") {
  auto circles = circle_curves();
  for (std::size_t k = 0; k < 41; ++k) {
    Vector a = circles[0].rational_point(k, 41);
    Vector b = circles[1].rational_point(k, 41);
    CHECK(a[0] * a[0] + a[1] * a[1] == Scalar(1));
    CHECK(b[0] * b[0] + b[1] * b[1] == Scalar(1));
    CHECK(a[0].sign() >= 0);
    CHECK(a[1].sign() >= 0);
    CHECK(b[1].sign() >= 0);
  }
  // the half circle runs from (1,0) to (-1,0)
  CHECK(circles[1].rational_point(0, 41) == ints({1, 0, -1}));
  CHECK(circles[1].rational_point(20, 41) == ints({0, 1, -1}));
  CHECK(circles[1].rational_point(40, 41) == ints({-1, 0, -1}));

  for (const auto& c : roshchina_curves()) {
    for (std::size_t k = 0; k < 11; ++k) {
      auto d = to_doubles(c.rational_point(k, 11));
      // recover the angle from the sine component
      int idx = c.name == "gamma1" ? 1 : c.name == "gamma2" ? 2 : c.name == "gamma3" ? 0 : 1;
      double t = std::asin(std::abs(d[idx]));
      CHECK(t <= std::numbers::pi / 4);
      auto e = c.eval(t);
      for (int i = 0; i < 3; ++i) CHECK(e[i] == doctest::Approx(d[i]).epsilon(1e-12));
    }
  }
}

TEST_CASE("cubic closed forms against brute force") {
  // pbar on gamma1(1), lifted
  double pbar_value = (r7 - 5) * -1.0;
  CHECK(pbar_value == doctest::Approx(2.3542486889354));

  // F12(s) normal: the maximum over both curves is attained at gamma1(s) and
  // at gamma2(phi(s)), with value (3+sqrt7)s^3.
  for (double s : {0.2, 0.5, 0.9}) {
    double w[3] = {-2 * (r7 + 1) * s * s, (r7 - 5) * s, 4};
    double best = -1e300, arg1 = -1, arg2 = -1;
    const int n = 200001;
    double tmax = (2 + r7) / 3;
    for (int k = 0; k < n; ++k) {
      double u = static_cast<double>(k) / (n - 1);
      double v1 = w[0] * -u + w[1] * -u * u + w[2] * -u * u * u;
      double t = tmax * u;
      double v2 = w[0] * -t + w[1] * t * t;
      if (v1 > best) best = v1, arg1 = u;
      if (v2 > best) best = v2;
      if (std::abs(v2 - best) < 1e-12) arg2 = t;
    }
    CHECK(best == doctest::Approx((3 + r7) * s * s * s).epsilon(1e-9));
    CHECK(arg1 == doctest::Approx(s).epsilon(1e-3));
    CHECK(arg2 == doctest::Approx((2 + r7) * s / 3).epsilon(1e-3));
  }

  // F1 normal vanishes at both far endpoints
  double w1[3] = {11 + 4 * r7, 3 * (2 + r7), -17 - 7 * r7};
  CHECK(-w1[0] - w1[1] - w1[2] == doctest::Approx(0).epsilon(1e-12));
  double t = (2 + r7) / 3;
  CHECK(w1[0] * -t + w1[1] * t * t == doctest::Approx(0).scale(10));
}

TEST_CASE("circles witnesses, computed directly") {
  const double h = 1 / std::sqrt(2.0);
  // top face: F spanned by e1, e2, (0,0,1,1)/sqrt2 and w = (1,1,5/2)
  double top_fixed[5][4] = {{0, 0, 1, -1}, {0, 0, -1, -1}, {-1, -1, 1, 0}, {0, -1, 0, 0}, {0, 0, 0, -1}};
  double expect_top[5] = {0, -2.5 * std::sqrt(2.0), -2 + 1.25 * std::sqrt(2.0), -1, -1.25 * std::sqrt(2.0)};
  double expect_bottom[5] = {-std::sqrt(2.0), 0, -0.5 - h, -0.5, -h};
  for (int i = 0; i < 5; ++i) {
    const double* g = top_fixed[i];
    double top = g[0] + g[1] + 2.5 * h * (g[2] + g[3]);
    double bottom = 0.5 * g[1] - h * (g[2] - g[3]);
    CHECK(top == doctest::Approx(expect_top[i]));
    CHECK(bottom == doctest::Approx(expect_bottom[i]));
    if (i != 0) CHECK(top < 0);
    if (i != 1) CHECK(bottom < 0);
  }
  // region H: v = (0,0,1) is maximal on the whole upper arc
  auto c = circle_curves();
  for (double t : {0.0, 0.3, 1.2, std::numbers::pi / 2}) CHECK(c[0].eval(t)[2] == 1.0);
}

TEST_CASE("sampled cones") {
  auto cubic = cubic_curves();
  Cone two = homogenize_and_sample(cubic, 2);
  CHECK(two.generators().rays.size() == 3);  // the two curves share the origin
  CHECK(dim(two) == 3);
  Cone five = homogenize_and_sample(cubic, 5);
  CHECK(dim(five) == 4);
  CHECK(is_pointed(five));
  Cone p = polar(five);
  Scalar s(1, 2);
  Scalar root = Scalar::sqrt_of(7);
  Vector q{Scalar(-2) * (root + Scalar(1)) * s, root - Scalar(5), Scalar(4) / s, -(root + Scalar(3)) * s * s};
  CHECK(contains(p, q));
  // pbar pairs positively with (gamma1(1), 1), so it is not in any inner polar
  Vector pbar{Scalar(0), root - Scalar(5), Scalar(0), Scalar(0)};
  CHECK_FALSE(contains(p, pbar));

  auto circles = circle_curves();
  Cone k50 = homogenize_and_sample(circles, 50);
  Cone p50 = polar(k50);
  for (auto g : {ints({0, 0, 1, -1}), ints({0, 0, -1, -1}), ints({-1, -1, 1, 0}), ints({0, -1, 0, 0})})
    CHECK(contains(p50, g));
  CHECK_FALSE(contains(p50, ints({0, 1, 0, 2})));
  CHECK_THROWS_AS(homogenize_and_sample(circles, 1), std::invalid_argument);
}

TEST_CASE("polar certificates are valid on sampled cones") {
  const std::size_t ns[] = {5, 50, 500};
  CheckReport r = verify_sandwich(ns, 1e-9);
  CHECK(r.passed());
  CHECK(r.certificates.size() == 6);
  for (const auto& [name, g] : cubic_polar_certificates()) CHECK(g.size() == 4);
}

TEST_CASE("roshchina verifier") {
  CheckReport r;
  double dt = seconds([&] { r = verify_roshchina(); });
  CHECK(dt < 10.0);
  CHECK(r.conclusion == "TANGENTIAL_EXPOSURE_FAILS");
  // the 1e-7 bound at s = 1e-4 is tighter than the s/2 Taylor error
  const Certificate* q = find(r, "difference_quotient_at_1e-4");
  REQUIRE(q != nullptr);
  CHECK(q->status == Status::fail);
  CHECK(q->max_violation == doctest::Approx(5e-5).epsilon(1e-3));
  for (const auto& c : r.certificates) {
    if (c.name != q->name) CHECK_MESSAGE(c.status == Status::pass, c.name);
  }
  CHECK_FALSE(r.passed());
}

TEST_CASE("cubic verifier") {
  CheckReport r;
  double dt = seconds([&] { r = verify_cubic(); });
  CHECK(dt < 10.0);
  CHECK(r.passed());
  CHECK_FALSE(r.conclusion.empty());
  const Certificate* note = find(r, "FDC_pbar_linear_form_as_listed");
  REQUIRE(note != nullptr);
  CHECK(note->status == Status::note);
  CHECK(note->max_violation == doctest::Approx((5 - r7) / 4));  // largest gap s(1-s)(5-sqrt7) at s=1/2
  for (const char* name : {"F12_normal_on_gamma1/exact", "FDC_q_on_gamma1/float", "second_order_origin_unexposed"}) {
    const Certificate* c = find(r, name);
    REQUIRE(c != nullptr);
    CHECK(c->samples >= 20);
  }
  BenchOptions fast{.samples = 101, .tol = 1e-9, .exact = false};
  CheckReport f = verify_cubic(fast);
  CHECK(f.passed());
  CHECK(find(f, "F1_normal_on_gamma1/exact") == nullptr);
}

TEST_CASE("circles verifier") {
  CheckReport r;
  double dt = seconds([&] { r = verify_circles(); });
  CHECK(dt < 10.0);
  CHECK(r.passed());
  for (char region : std::string("ABCDEFGH")) {
    const Certificate* c = find(r, std::string("region_") + region);
    REQUIRE(c != nullptr);
    CHECK(c->samples >= 20);
  }
}

TEST_CASE("reports are deterministic") {
  BenchOptions o{.samples = 201};
  for (const char* name : {"roshchina", "cubic", "circles"}) {
    CHECK(bench_json(verify_example(name, o)).dump() == bench_json(verify_example(name, o)).dump());
  }
  auto j = bench_json(verify_example("cubic", o));
  for (const char* key : {"example", "verdict", "conclusion", "tolerance", "certificates"}) CHECK(j.contains(key));
  CHECK_THROWS_AS(verify_example("nope"), std::invalid_argument);
  CHECK_THROWS_AS(verify_cubic({.samples = 1}), std::invalid_argument);
}
