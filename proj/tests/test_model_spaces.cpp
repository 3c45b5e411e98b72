#include <doctest.h>

#include <cmath>

#include "symmlab/errors.hpp"
#include "symmlab/model_space.hpp"
#include "symmlab/rng.hpp"

using namespace symmlab;

namespace {
constexpr double kPi = 3.14159265358979323846;

// Simpson quadrature of the radial area element, used as an independent
// oracle for ball volumes.
template <typename Fn>
double simpson(Fn f, double a, double b, int n) {
  const double h = (b - a) / n;
  double sum = f(a) + f(b);
  for (int i = 1; i < n; ++i) sum += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return sum * h / 3.0;
}
}  // namespace

TEST_CASE("unit sphere volumes") {
  CHECK(unit_sphere_volume(1) == doctest::Approx(2 * kPi).epsilon(1e-14));
  CHECK(unit_sphere_volume(2) == doctest::Approx(4 * kPi).epsilon(1e-14));
  CHECK(unit_sphere_volume(3) ==
        doctest::Approx(2 * kPi * kPi).epsilon(1e-14));
  // Quadrature oracle: V_m = V_{m-1} * int_0^pi sin^{m-1}.
  const double v2 =
      unit_sphere_volume(1) *
      simpson([](double r) { return std::sin(r); }, 0.0, kPi, 2000);
  CHECK(unit_sphere_volume(2) == doctest::Approx(v2).epsilon(1e-10));
  const double v3 =
      unit_sphere_volume(2) *
      simpson([](double r) { return std::sin(r) * std::sin(r); }, 0.0, kPi,
              2000) /
      (4 * kPi) * unit_sphere_volume(2);
  CHECK(unit_sphere_volume(3) == doctest::Approx(v3).epsilon(1e-10));
  CHECK_THROWS_AS(unit_sphere_volume(0), DomainError);
}

TEST_CASE("ball volumes on the three models") {
  const ModelSpace s2 = ModelSpace::sphere_of_volume(2, 4 * kPi);
  CHECK(ball_volume(s2, kPi) == doctest::Approx(4 * kPi).epsilon(1e-12));
  CHECK(ball_volume(s2, kPi / 2) == doctest::Approx(2 * kPi).epsilon(1e-12));
  CHECK(ball_volume(s2, 0.0) == 0.0);

  const ModelSpace e2 = ModelSpace::euclidean(2);
  CHECK(ball_volume(e2, 1.0) == doctest::Approx(kPi).epsilon(1e-13));

  const ModelSpace h2 = ModelSpace::hyperbolic(2);
  CHECK(ball_volume(h2, 1.0) ==
        doctest::Approx(2 * kPi * (std::cosh(1.0) - 1.0)).epsilon(1e-12));
  // Quadrature oracle for a higher dimension with no hand formula here.
  const ModelSpace h3 = ModelSpace::hyperbolic(3);
  const double oracle = simpson(
      [](double t) { return 4 * kPi * std::sinh(t) * std::sinh(t); }, 0.0,
      1.3, 2000);
  CHECK(ball_volume(h3, 1.3) == doctest::Approx(oracle).epsilon(1e-9));

  CHECK_THROWS_AS(ball_volume(e2, -0.1), DomainError);
  CHECK_THROWS_AS(ball_volume(s2, s2.max_radius() * 1.01), DomainError);
}

TEST_CASE("ball volume inversion") {
  const ModelSpace s2 = ModelSpace::sphere_of_volume(2, 4 * kPi);
  CHECK(ball_volume_inverse(s2, 2 * kPi) ==
        doctest::Approx(kPi / 2).epsilon(1e-10));
  CHECK(ball_volume_inverse(ModelSpace::euclidean(2), kPi) ==
        doctest::Approx(1.0).epsilon(1e-10));
  const double r = ball_volume_inverse(s2, kPi);
  CHECK(ball_volume(s2, r) == doctest::Approx(kPi).epsilon(1e-10));
  CHECK_THROWS_AS(ball_volume_inverse(s2, 4 * kPi * 1.01), DomainError);

  SplitMix64 rng(42);
  for (int m = 1; m <= 3; ++m) {
    const ModelSpace models[] = {
        ModelSpace::sphere_of_volume(m, 2.5 * unit_sphere_volume(m)),
        ModelSpace::euclidean(m), ModelSpace::hyperbolic(m)};
    for (const ModelSpace& space : models) {
      const double r_hi = space.kind == ModelKind::SphereOfVolume
                              ? space.max_radius()
                              : 2.0;
      for (int trial = 0; trial < 50; ++trial) {
        const double radius = rng.uniform(0.01, 0.99) * r_hi;
        const double back =
            ball_volume_inverse(space, ball_volume(space, radius));
        CHECK(back == doctest::Approx(radius).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("boundary areas") {
  CHECK(boundary_area(ModelSpace::euclidean(2), 2.0) ==
        doctest::Approx(4 * kPi).epsilon(1e-13));
  const ModelSpace s2 = ModelSpace::sphere_of_volume(2, 4 * kPi);
  CHECK(boundary_area(s2, kPi / 2) == doctest::Approx(2 * kPi).epsilon(1e-12));
  CHECK(boundary_area(ModelSpace::hyperbolic(3), 1.0) ==
        doctest::Approx(4 * kPi * std::sinh(1.0) * std::sinh(1.0))
            .epsilon(1e-12));
  CHECK_THROWS_AS(boundary_area(s2, 0.0), DomainError);

  // Centered finite difference of ball_volume as the oracle.
  SplitMix64 rng(7);
  for (int m = 1; m <= 3; ++m) {
    const ModelSpace models[] = {
        ModelSpace::sphere_of_volume(m, unit_sphere_volume(m)),
        ModelSpace::euclidean(m), ModelSpace::hyperbolic(m)};
    for (const ModelSpace& space : models) {
      const double r_hi = space.kind == ModelKind::SphereOfVolume
                              ? space.max_radius()
                              : 2.0;
      for (int trial = 0; trial < 20; ++trial) {
        const double r = rng.uniform(0.05, 0.95) * r_hi;
        const double h = 1e-6;
        const double fd =
            (ball_volume(space, r + h) - ball_volume(space, r - h)) / (2 * h);
        CHECK(boundary_area(space, r) == doctest::Approx(fd).epsilon(1e-6));
      }
    }
  }
}

TEST_CASE("isoperimetric profile") {
  const ModelSpace s2 = ModelSpace::sphere_of_volume(2, 4 * kPi);
  CHECK(isoperimetric_profile(s2, 0.5) == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(isoperimetric_profile(s2, 1e-6) < 1e-2);
  for (double beta : {0.1, 0.25, 0.4})
    CHECK(isoperimetric_profile(s2, beta) ==
          doctest::Approx(isoperimetric_profile(s2, 1 - beta)).epsilon(1e-10));
  CHECK_THROWS_AS(isoperimetric_profile(s2, 0.0), DomainError);
  CHECK_THROWS_AS(isoperimetric_profile(s2, 1.0), DomainError);
  CHECK_THROWS_AS(isoperimetric_profile(ModelSpace::euclidean(2), 0.5),
                  DomainError);

  // Metric rescaling: scaling the metric by lambda scales the profile by
  // lambda^{-1/2}; the volume scales by lambda^{m/2}.
  const double lambda = 4.0;
  const ModelSpace scaled = ModelSpace::sphere_of_volume(2, 4 * kPi * lambda);
  for (double beta : {0.2, 0.5, 0.7})
    CHECK(isoperimetric_profile(scaled, beta) ==
          doctest::Approx(isoperimetric_profile(s2, beta) / std::sqrt(lambda))
              .epsilon(1e-10));
}

TEST_CASE("max radius closes the sphere") {
  for (int m : {1, 2, 3}) {
    const ModelSpace space = ModelSpace::sphere_of_volume(m, 3.7);
    CHECK(ball_volume(space, space.max_radius()) ==
          doctest::Approx(3.7).epsilon(1e-10));
  }
  CHECK(std::isinf(ModelSpace::euclidean(2).max_radius()));
  CHECK(std::isinf(ModelSpace::hyperbolic(2).max_radius()));
}
