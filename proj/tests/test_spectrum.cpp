#include <doctest.h>

#include <cmath>

#include "symmlab/errors.hpp"
#include "symmlab/manifold.hpp"
#include "symmlab/rng.hpp"
#include "symmlab/spectrum.hpp"

using namespace symmlab;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("circle eigenvalue") {
  const SpectralResult sol = lambda1_closed(make_circle(2 * kPi, 512));
  CHECK(sol.lambda1 == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(sol.residual <= kDefaultSpectralTol);
}

TEST_CASE("circle eigenvalue metric rescaling") {
  double reference = -1.0;
  for (double len : {kPi, 2 * kPi, 4 * kPi}) {
    const SpectralResult sol = lambda1_closed(make_circle(len, 256));
    const double scaled = sol.lambda1 * len * len;
    if (reference < 0.0)
      reference = scaled;
    else
      CHECK(scaled == doctest::Approx(reference).epsilon(0.005));
  }
}

TEST_CASE("icosphere eigenvalue and refinement") {
  double prev_error = 1e9;
  for (int level : {2, 3, 4}) {
    const SpectralResult sol = lambda1_closed(make_icosphere(level));
    const double error = std::abs(sol.lambda1 - 2.0);
    CHECK(error < prev_error);
    prev_error = error;
  }
  CHECK(prev_error < 0.04);
}

TEST_CASE("eigenfield invariants") {
  const DiscreteManifold ico = make_icosphere(3);
  const SpectralResult sol = lambda1_closed(ico);
  double mean = 0.0, norm2 = 0.0, l1 = 0.0;
  for (int v = 0; v < ico.vertex_count(); ++v) {
    mean += ico.measures[v] * sol.eigenfield[v];
    norm2 += ico.measures[v] * sol.eigenfield[v] * sol.eigenfield[v];
    l1 += ico.measures[v] * std::abs(sol.eigenfield[v]);
  }
  CHECK(std::abs(mean) <= 1e-8 * l1);
  CHECK(norm2 == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(rayleigh_quotient(ico, sol.eigenfield, false) ==
        doctest::Approx(sol.lambda1).epsilon(1e-8));
}

TEST_CASE("interval Dirichlet eigenvalue") {
  const SpectralResult sol = lambda1_dirichlet(make_interval(kPi, 512));
  CHECK(sol.lambda1 == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("square Dirichlet eigenvalue") {
  // The outer ring of the mask carries the Dirichlet condition, so the
  // effective side is (n - 1) cells; pick the spacing to make it pi.
  const int n = 63;
  PlanarMask mask{n, n, std::vector<std::uint8_t>(n * n, 1)};
  const DiscreteManifold mesh = make_planar_domain(mask, kPi / 62);
  const SpectralResult sol = lambda1_dirichlet(mesh);
  CHECK(sol.lambda1 == doctest::Approx(2.0).epsilon(0.01));
  for (int v = 0; v < mesh.vertex_count(); ++v)
    if (mesh.boundary[v]) CHECK(sol.eigenfield[v] == 0.0);
}

TEST_CASE("Dirichlet scaling law") {
  const int n = 63;
  PlanarMask mask{n, n, std::vector<std::uint8_t>(n * n, 1)};
  const double l1 = lambda1_dirichlet(make_planar_domain(mask, kPi / 64)).lambda1;
  const double l2 =
      lambda1_dirichlet(make_planar_domain(mask, kPi / 128)).lambda1;
  CHECK(l2 == doctest::Approx(4.0 * l1).epsilon(0.01));
}

TEST_CASE("Dirichlet domain monotonicity") {
  const double big =
      lambda1_dirichlet(make_planar_domain(disc_mask(1.0, 0.05), 0.05)).lambda1;
  const double small =
      lambda1_dirichlet(make_planar_domain(disc_mask(0.8, 0.05), 0.05)).lambda1;
  CHECK(small > big);
}

TEST_CASE("variational upper bound") {
  const DiscreteManifold ico = make_icosphere(3);
  const SpectralResult sol = lambda1_closed(ico);
  SplitMix64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    ScalarField f(ico.vertex_count());
    for (double& v : f) v = rng.uniform(-1.0, 1.0);
    CHECK(sol.lambda1 <= rayleigh_quotient(ico, f, false) + 1e-8);
  }
}

TEST_CASE("coordinate function Rayleigh quotient") {
  const DiscreteManifold ico = make_icosphere(4);
  const auto pos = icosphere_vertex_positions(4);
  ScalarField x3(pos.size());
  for (std::size_t v = 0; v < pos.size(); ++v) x3[v] = pos[v][2];
  CHECK(rayleigh_quotient(ico, x3, false) == doctest::Approx(2.0).epsilon(0.02));
}

TEST_CASE("radial sphere model eigenvalue") {
  const ModelSpace s2 = ModelSpace::sphere_of_volume(2, 4 * kPi);
  const SpectralResult sol =
      lambda1_closed(make_radial_model(s2, 512, s2.max_radius()));
  // Radial eigenfunction cos r with eigenvalue 2.
  CHECK(sol.lambda1 == doctest::Approx(2.0).epsilon(0.01));
}

TEST_CASE("error conditions") {
  const DiscreteManifold iv = make_interval(1.0, 16);
  CHECK_THROWS_AS(lambda1_closed(iv), MeshError);
  CHECK_THROWS_AS(lambda1_dirichlet(make_circle(1.0, 16)), DomainError);

  DiscreteManifold split;
  split.dim = 1;
  split.measures.assign(6, 1.0);
  split.boundary.assign(6, 0);
  split.edges = {{0, 1, 1.0}, {1, 2, 1.0}, {2, 0, 1.0},
                 {3, 4, 1.0}, {4, 5, 1.0}, {5, 3, 1.0}};
  CHECK_THROWS_AS(lambda1_closed(split), TopologyError);

  const DiscreteManifold ico = make_icosphere(2);
  CHECK_THROWS_AS(
      rayleigh_quotient(ico, ScalarField(ico.vertex_count(), 3.0), false),
      DegenerateFieldError);
  CHECK_THROWS_AS(lambda1_closed(ico, -1.0), DomainError);
}

TEST_CASE("large product uses the iterative path") {
  // 48 * 642 = 30816 active vertices, above the direct-solve limit.
  const DiscreteManifold product =
      make_product(make_circle(2 * kPi, 48), make_icosphere(3));
  const SpectralResult sol = lambda1_closed(product);
  CHECK(sol.lambda1 == doctest::Approx(1.0).epsilon(0.02));
  CHECK(sol.residual <= kDefaultSpectralTol);
}

TEST_CASE("determinism") {
  const DiscreteManifold ico = make_icosphere(2);
  const SpectralResult a = lambda1_closed(ico, 1e-8, 7);
  const SpectralResult b = lambda1_closed(ico, 1e-8, 7);
  CHECK(a.lambda1 == b.lambda1);
  CHECK(a.eigenfield == b.eigenfield);
  CHECK(a.seed == 7);
}
