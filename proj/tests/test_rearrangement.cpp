#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "symmlab/errors.hpp"
#include "symmlab/manifold.hpp"
#include "symmlab/rearrangement.hpp"
#include "symmlab/rng.hpp"

using namespace symmlab;

namespace {
constexpr double kPi = 3.14159265358979323846;

ScalarField random_field(int n, std::uint64_t seed) {
  SplitMix64 rng(seed);
  ScalarField f(n);
  for (double& v : f) v = rng.uniform(-1.0, 1.0);
  return f;
}
}  // namespace

TEST_CASE("distribution function") {
  DiscreteManifold two;
  two.dim = 1;
  two.measures = {3.0, 4.0};
  two.boundary = {0, 0};
  two.edges = {{0, 1, 1.0}};
  CHECK(distribution_function(two, {0.0, 1.0}, 0.5) == 3.0);
  CHECK(distribution_function(two, {0.0, 1.0}, -1.0) == 0.0);
  CHECK(distribution_function(two, {0.0, 1.0}, 2.0) == 7.0);
  // Strict inequality: mass exactly at the level is excluded.
  CHECK(distribution_function(two, {0.0, 1.0}, 1.0) == 3.0);
  CHECK_THROWS_AS(distribution_function(two, {0.0}, 0.5), ShapeError);
}

TEST_CASE("rearranged profile basics") {
  const DiscreteManifold ico = make_icosphere(3);
  const ModelSpace s2 = ModelSpace::sphere_of_volume(2, 4 * kPi);

  // A constant field rearranges to a single band with that value.
  const RadialProfile flat =
      rearrange(ico, ScalarField(ico.vertex_count(), 2.5), s2);
  CHECK(flat.breakpoints.size() == 2);
  CHECK(flat.breakpoints.back().value == 2.5);
  CHECK(flat.total_measure() == doctest::Approx(4 * kPi).epsilon(1e-12));
  // The volume inversion is tight to 1e-12 in volume, but A'(r) vanishes
  // at the far pole, so the radius itself is only sqrt-accurate there.
  CHECK(flat.support_radius() == doctest::Approx(kPi).epsilon(1e-4));

  // x3 is balanced about zero, so half the measure lies below each sign.
  const auto pos = icosphere_vertex_positions(3);
  ScalarField x3(pos.size());
  for (std::size_t v = 0; v < pos.size(); ++v) x3[v] = pos[v][2];
  const RadialProfile px3 = rearrange(ico, x3, s2);
  CHECK(px3.value_at_measure(0.01) == doctest::Approx(-1.0).epsilon(0.01));
  CHECK(px3.value_at_measure(4 * kPi) == doctest::Approx(1.0).epsilon(0.01));
  CHECK(px3.value_at_measure(2 * kPi) == doctest::Approx(0.0).epsilon(0.05));

  // Values are nondecreasing and cumulative coordinates increase.
  for (std::size_t k = 1; k < px3.breakpoints.size(); ++k) {
    CHECK(px3.breakpoints[k].value >= px3.breakpoints[k - 1].value);
    CHECK(px3.breakpoints[k].cumulative > px3.breakpoints[k - 1].cumulative);
  }

  const ModelSpace wrong = ModelSpace::sphere_of_volume(2, 1.0);
  CHECK_THROWS_AS(rearrange(ico, x3, wrong), VolumeError);
}

TEST_CASE("pushforward preserves moments") {
  const DiscreteManifold ico = make_icosphere(3);
  const ModelSpace s2 = ModelSpace::sphere_of_volume(2, 4 * kPi);
  const ScalarField f = random_field(ico.vertex_count(), 21);
  const RadialProfile profile = rearrange(ico, f, s2);
  for (int bins : {16, 100, 333}) {
    const auto [mesh, field] = profile_pushforward(profile, bins);
    CHECK(integrate(mesh, field) ==
          doctest::Approx(integrate(ico, f)).epsilon(1e-10));
    // Bin averaging only contracts the square integral (Jensen).
    CHECK(integrate(mesh, field, 2.0) <= integrate(ico, f, 2.0) + 1e-10);
  }
}

TEST_CASE("profile energy of smooth radial fields") {
  // phi(r) = r on the Euclidean unit disc: E = pi.
  const ModelSpace e2 = ModelSpace::euclidean(2);
  const DiscreteManifold disc = make_radial_model(e2, 4096, 1.0);
  ScalarField phi(disc.vertex_count());
  for (int k = 0; k < disc.vertex_count(); ++k) phi[k] = (k + 0.5) / 4096.0;
  const RadialProfile p = rearrange(disc, phi, e2);
  CHECK(profile_energy(p, kDefaultProfileBins) ==
        doctest::Approx(kPi).epsilon(0.01));

  // phi(r) = -cos r on the round sphere: E = 8 pi / 3.
  const ModelSpace s2 = ModelSpace::sphere_of_volume(2, 4 * kPi);
  const DiscreteManifold rad = make_radial_model(s2, 4096, s2.max_radius());
  ScalarField cosr(rad.vertex_count());
  for (int k = 0; k < rad.vertex_count(); ++k)
    cosr[k] = -std::cos((k + 0.5) * kPi / 4096.0);
  const RadialProfile q = rearrange(rad, cosr, s2);
  CHECK(profile_energy(q, kDefaultProfileBins) ==
        doctest::Approx(8 * kPi / 3).epsilon(0.01));
}

TEST_CASE("symmetrization equality for an already-radial field") {
  // x3 on the icosphere is the monotone radial function -cos(r) about the
  // south pole, so both sides approximate 8 pi / 3.
  const DiscreteManifold ico = make_icosphere(4);
  const ModelSpace s2 = ModelSpace::sphere_of_volume(2, 4 * kPi);
  const auto pos = icosphere_vertex_positions(4);
  ScalarField x3(pos.size());
  for (std::size_t v = 0; v < pos.size(); ++v) x3[v] = pos[v][2];
  const PolyaSzegoResult res = polya_szego_check(ico, x3, s2);
  CHECK(res.factor == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(res.lhs == doctest::Approx(8 * kPi / 3).epsilon(0.02));
  CHECK(res.rhs == doctest::Approx(8 * kPi / 3).epsilon(0.02));
}

TEST_CASE("symmetrization inequality on random smooth data") {
  const DiscreteManifold ico = make_icosphere(3);
  const ModelSpace s2 = ModelSpace::sphere_of_volume(2, 4 * kPi);
  SplitMix64 seeds(1234);
  const auto pos = icosphere_vertex_positions(3);
  for (int trial = 0; trial < 10; ++trial) {
    // Smooth trial fields: random quadratic in the coordinates.
    SplitMix64 rng(seeds.next());
    ScalarField f(pos.size());
    double c[9];
    for (double& x : c) x = rng.uniform(-1.0, 1.0);
    for (std::size_t v = 0; v < pos.size(); ++v) {
      const auto& p = pos[v];
      f[v] = c[0] * p[0] + c[1] * p[1] + c[2] * p[2] + c[3] * p[0] * p[1] +
             c[4] * p[1] * p[2] + c[5] * p[0] * p[2] + c[6] * p[0] * p[0] +
             c[7] * p[1] * p[1] + c[8] * p[2] * p[2];
    }
    const PolyaSzegoResult res = polya_szego_check(ico, f, s2);
    CHECK(res.lhs >= res.rhs * 0.98);
  }
}

TEST_CASE("sup-norm contraction") {
  const DiscreteManifold ico = make_icosphere(3);
  const ModelSpace s2 = ModelSpace::sphere_of_volume(2, 4 * kPi);
  const ScalarField f = random_field(ico.vertex_count(), 31);

  // Identical fields have identical profiles.
  const ContractionResult same = sup_contraction_check(ico, f, f, s2);
  CHECK(same.profile_gap == 0.0);
  CHECK(same.field_gap == 0.0);

  // A constant shift moves the profile by exactly that constant.
  ScalarField shifted = f;
  for (double& v : shifted) v += 0.37;
  const ContractionResult shift = sup_contraction_check(ico, f, shifted, s2);
  CHECK(shift.field_gap == doctest::Approx(0.37).epsilon(1e-14));
  CHECK(shift.profile_gap == doctest::Approx(0.37).epsilon(1e-12));

  // General pairs contract.
  for (std::uint64_t seed : {41u, 42u, 43u, 44u, 45u}) {
    const ScalarField g = random_field(ico.vertex_count(), seed);
    const ContractionResult res = sup_contraction_check(ico, f, g, s2);
    CHECK(res.profile_gap <= res.field_gap + 1e-12);
  }
}

TEST_CASE("layer cake band sums") {
  const DiscreteManifold ico = make_icosphere(2);
  const ModelSpace s2 = ModelSpace::sphere_of_volume(2, 4 * kPi);
  const ScalarField f = random_field(ico.vertex_count(), 8);
  const RadialProfile p = rearrange(ico, f, s2);
  // Each cumulative coordinate equals the distribution function just above
  // the band value (exact, not approximate).
  for (std::size_t k = 1; k + 1 < p.breakpoints.size(); ++k) {
    const double t_next = p.breakpoints[k + 1].value;
    CHECK(p.breakpoints[k].cumulative ==
          doctest::Approx(distribution_function(ico, f, t_next))
              .epsilon(1e-14));
  }
}

TEST_CASE("monotone equivariance and idempotence") {
  const DiscreteManifold ico = make_icosphere(2);
  const ModelSpace s2 = ModelSpace::sphere_of_volume(2, 4 * kPi);
  const ScalarField f = random_field(ico.vertex_count(), 77);

  // (eta o f)* = eta o f* for increasing eta.
  auto eta = [](double x) { return x * x * x + 2.0 * x; };
  ScalarField ef(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) ef[i] = eta(f[i]);
  const RadialProfile pf = rearrange(ico, f, s2);
  const RadialProfile pef = rearrange(ico, ef, s2);
  REQUIRE(pef.breakpoints.size() == pf.breakpoints.size());
  for (std::size_t k = 0; k < pf.breakpoints.size(); ++k) {
    CHECK(pef.breakpoints[k].cumulative ==
          doctest::Approx(pf.breakpoints[k].cumulative).epsilon(1e-14));
    CHECK(pef.breakpoints[k].value ==
          doctest::Approx(eta(pf.breakpoints[k].value)).epsilon(1e-12));
  }

  // Rearranging the pushforward again is the identity on binned values.
  const auto [mesh, field] = profile_pushforward(pf, 64);
  const RadialProfile again = rearrange(mesh, field, s2);
  const auto [mesh2, field2] = profile_pushforward(again, 64);
  for (std::size_t k = 0; k < field.size(); ++k)
    CHECK(field2[k] == doctest::Approx(field[k]).epsilon(1e-12));
}

TEST_CASE("fiberwise rearrangement") {
  const DiscreteManifold base = make_circle(2 * kPi, 16);
  const DiscreteManifold fiber = make_icosphere(2);
  const DiscreteManifold product = make_product(base, fiber);
  const ModelSpace s2 = ModelSpace::sphere_of_volume(2, 4 * kPi);
  const auto pos = icosphere_vertex_positions(2);
  const int nf = fiber.vertex_count();

  // Base-independent field: every fiber profile is the same.
  ScalarField f(product.vertex_count());
  for (int s = 0; s < 16; ++s)
    for (int x = 0; x < nf; ++x) f[s * nf + x] = pos[x][2];
  const FiberwiseField fw = fiberwise_rearrange(product, f, s2, 64);
  CHECK(fw.fiber_volume == doctest::Approx(4 * kPi).epsilon(1e-9));
  for (int s = 1; s < 16; ++s)
    for (int k = 0; k < 64; ++k)
      CHECK(fw.binned[s][k] == doctest::Approx(fw.binned[0][k]).epsilon(1e-12));

  // Separable field a(s) b(x): bins scale by a(s).
  ScalarField sep(product.vertex_count());
  std::vector<double> a(16);
  for (int s = 0; s < 16; ++s) a[s] = 1.0 + 0.5 * std::sin(2 * kPi * s / 16.0);
  for (int s = 0; s < 16; ++s)
    for (int x = 0; x < nf; ++x) sep[s * nf + x] = a[s] * (pos[x][2] + 2.0);
  const FiberwiseField fws = fiberwise_rearrange(product, sep, s2, 64);
  for (int s = 0; s < 16; ++s)
    for (int k = 0; k < 64; ++k)
      CHECK(fws.binned[s][k] ==
            doctest::Approx(a[s] * fws.binned[0][k] / a[0]).epsilon(1e-10));

  // Fiber integrals are preserved per base vertex.
  for (int s = 0; s < 16; ++s) {
    double original = 0.0;
    for (int x = 0; x < nf; ++x)
      original += fiber.measures[x] * sep[s * nf + x];
    double binned = 0.0;
    for (int k = 0; k < 64; ++k)
      binned += fws.binned[s][k] * fw.fiber_volume / 64.0;
    CHECK(binned == doctest::Approx(original).epsilon(1e-10));
  }

  CHECK_THROWS_AS(fiberwise_rearrange(fiber, ScalarField(nf, 0.0), s2, 64),
                  StructureError);
}

TEST_CASE("fiberwise energy split contracts both components") {
  const DiscreteManifold base = make_circle(2 * kPi, 24);
  const DiscreteManifold fiber = make_icosphere(2);
  const DiscreteManifold product = make_product(base, fiber);
  const ModelSpace s2 = ModelSpace::sphere_of_volume(2, 4 * kPi);
  const auto pos = icosphere_vertex_positions(2);
  const int nf = fiber.vertex_count();

  ScalarField f(product.vertex_count());
  for (int s = 0; s < 24; ++s)
    for (int x = 0; x < nf; ++x)
      f[s * nf + x] = std::cos(2 * kPi * s / 24.0) * pos[x][2] +
                      0.3 * pos[x][0] * pos[x][1];
  const FiberwiseField fw = fiberwise_rearrange(product, f, s2);
  const EnergySplit split = fiberwise_energy_split(product, fw, f);
  const double scale = std::max({split.vert_lhs, split.horiz_lhs, 1e-12});
  CHECK(split.vert_rhs <= split.vert_lhs + 0.02 * scale);
  CHECK(split.horiz_rhs <= split.horiz_lhs + 0.02 * scale);
}

TEST_CASE("profile csv format") {
  DiscreteManifold two;
  two.dim = 2;
  two.measures = {kPi, kPi};
  two.boundary = {0, 0};
  two.edges = {{0, 1, 1.0}};
  const ModelSpace e2 = ModelSpace::euclidean(2);
  const RadialProfile p = rearrange(two, {1.0, 2.0}, e2);
  std::stringstream out;
  write_profile_csv(out, p);
  std::string line;
  std::getline(out, line);
  CHECK(line == "cumulative_measure,value,radius");
  std::getline(out, line);
  CHECK(line.substr(0, line.find(',')) == format_double(kPi));
  int rows = 1;
  while (std::getline(out, line))
    if (!line.empty()) ++rows;
  CHECK(rows == 2);
}
