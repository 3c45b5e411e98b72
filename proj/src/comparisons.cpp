#include "symmlab/comparisons.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ostream>

#include "symmlab/functionals.hpp"
#include "symmlab/rearrangement.hpp"
#include "symmlab/rng.hpp"
#include "symmlab/spectrum.hpp"

namespace symmlab {

namespace {

constexpr double kPi = 3.14159265358979323846;

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

void finalize(ComparisonReport& report, double elapsed_seconds) {
  report.margin = report.lhs - report.rhs;
  const double scale = std::max(std::abs(report.lhs), std::abs(report.rhs));
  if (report.equality)
    report.pass = std::abs(report.margin) <= report.slack * scale;
  else
    report.pass = report.margin >= -report.slack * scale;
  report.diagnostics["elapsed_seconds"] = elapsed_seconds;
}

nlohmann::json spectral_diag(const SpectralResult& r) {
  return {{"lambda1", r.lambda1},
          {"iterations", r.iterations},
          {"residual", r.residual},
          {"seed", r.seed}};
}

// Solver tolerance for the large fibered-domain solves; well below every
// slack used on top of them.
constexpr double kBigSolveTol = 1e-7;

}  // namespace

nlohmann::json ComparisonReport::to_json() const {
  return {{"schema_version", kReportSchemaVersion},
          {"theorem_id", theorem_id},
          {"lhs_label", lhs_label},
          {"rhs_label", rhs_label},
          {"lhs", lhs},
          {"rhs", rhs},
          {"margin", margin},
          {"slack", slack},
          {"equality", equality},
          {"pass", pass},
          {"note", note},
          {"diagnostics", diagnostics}};
}

// ---------------------------------------------------------------------
// Trial fields

ScalarField smooth_sphere_field(
    const std::vector<std::array<double, 3>>& positions, std::uint64_t seed) {
  SplitMix64 rng(seed);
  double c[12];
  for (double& v : c) v = rng.gaussish();
  ScalarField field(positions.size());
  for (std::size_t i = 0; i < positions.size(); ++i) {
    const double x = positions[i][0];
    const double y = positions[i][1];
    const double z = positions[i][2];
    field[i] = c[0] * x + c[1] * y + c[2] * z + c[3] * x * y + c[4] * y * z +
               c[5] * z * x + c[6] * (x * x - y * y) +
               c[7] * (3.0 * z * z - 1.0) + c[8] * x * y * z +
               c[9] * x * (x * x - 3.0 * y * y) +
               c[10] * z * (5.0 * z * z - 3.0) + c[11];
  }
  return field;
}

ScalarField smooth_product_field(
    int base_n, double base_len,
    const std::vector<std::array<double, 3>>& fiber_positions,
    std::uint64_t seed) {
  (void)base_len;
  SplitMix64 rng(seed);
  const int nf = static_cast<int>(fiber_positions.size());
  ScalarField field(static_cast<std::size_t>(base_n) * nf);
  const int modes = 4;
  std::vector<std::array<double, 3>> base_coef(modes);
  std::vector<std::array<double, 4>> fiber_coef(modes);
  for (auto& bc : base_coef)
    bc = {rng.gaussish(), rng.gaussish(), rng.gaussish()};
  for (auto& fc : fiber_coef)
    fc = {rng.gaussish(), rng.gaussish(), rng.gaussish(), rng.gaussish()};
  for (int s = 0; s < base_n; ++s) {
    const double theta = 2.0 * kPi * s / base_n;
    for (int x = 0; x < nf; ++x) {
      const auto& p = fiber_positions[x];
      double v = 0.0;
      for (int j = 0; j < modes; ++j) {
        const double b = base_coef[j][0] + base_coef[j][1] * std::cos(theta) +
                         base_coef[j][2] * std::sin((j + 1) * theta);
        const double f = fiber_coef[j][0] * p[0] + fiber_coef[j][1] * p[1] +
                         fiber_coef[j][2] * p[2] +
                         fiber_coef[j][3] * (p[0] * p[1] + p[2] * p[2]);
        v += b * f;
      }
      field[static_cast<std::size_t>(s) * nf + x] = v;
    }
  }
  return field;
}

// ---------------------------------------------------------------------
// Closed-manifold eigenvalue checks

ComparisonReport check_lichnerowicz(int mesh_level, double slack) {
  Stopwatch timer;
  ComparisonReport report;
  report.theorem_id = "lichnerowicz";
  report.lhs_label = "lambda1(icosphere)";
  report.rhs_label = "lambda1(round S^2) = 2";
  report.slack = slack;
  report.equality = true;
  const DiscreteManifold mesh = make_icosphere(mesh_level);
  const SpectralResult sol = lambda1_closed(mesh);
  report.lhs = sol.lambda1;
  report.rhs = 2.0;
  report.diagnostics = {{"mesh_level", mesh_level},
                        {"vertices", mesh.vertex_count()},
                        {"solver", spectral_diag(sol)}};
  finalize(report, timer.seconds());
  return report;
}

ComparisonReport check_product_formula(double base_len, int mesh_level,
                                       int base_n, double slack) {
  Stopwatch timer;
  ComparisonReport report;
  report.theorem_id = "product";
  report.lhs_label = "lambda1(S^1 x S^2)";
  report.rhs_label = "min(lambda1(S^1), lambda1(S^2))";
  report.slack = slack;
  report.equality = true;
  const DiscreteManifold base = make_circle(base_len, base_n);
  const DiscreteManifold fiber = make_icosphere(mesh_level);
  const DiscreteManifold product = make_product(base, fiber);
  const SpectralResult sol_product = lambda1_closed(product);
  const SpectralResult sol_base = lambda1_closed(base);
  const SpectralResult sol_fiber = lambda1_closed(fiber);
  report.lhs = sol_product.lambda1;
  report.rhs = std::min(sol_base.lambda1, sol_fiber.lambda1);
  report.diagnostics = {{"base_len", base_len},
                        {"base_n", base_n},
                        {"mesh_level", mesh_level},
                        {"vertices", product.vertex_count()},
                        {"lambda1_base", sol_base.lambda1},
                        {"lambda1_fiber", sol_fiber.lambda1},
                        {"solver", spectral_diag(sol_product)}};
  finalize(report, timer.seconds());
  return report;
}

ComparisonReport check_warped_lambda1(double base_len, int base_n,
                                      const std::vector<double>& rho,
                                      int fiber_level, double slack) {
  Stopwatch timer;
  ComparisonReport report;
  report.theorem_id = "warped-lambda1";
  report.lhs_label = "lambda1(base x_rho S^2)";
  report.rhs_label = "lambda1(base x_rho model S^2)";
  report.slack = slack;
  const DiscreteManifold base = make_circle(base_len, base_n);
  const DiscreteManifold fiber = make_icosphere(fiber_level);
  const ModelSpace sphere = ModelSpace::sphere_of_volume(2, 4.0 * kPi);
  const DiscreteManifold model_fiber =
      make_radial_model(sphere, 128, sphere.max_radius());
  const SpectralResult lhs_sol =
      lambda1_closed(make_warped_product(base, fiber, rho));
  const SpectralResult rhs_sol =
      lambda1_closed(make_warped_product(base, model_fiber, rho));
  report.lhs = lhs_sol.lambda1;
  report.rhs = rhs_sol.lambda1;
  report.diagnostics = {{"base_len", base_len},
                        {"base_n", base_n},
                        {"fiber_level", fiber_level},
                        {"lhs_solver", spectral_diag(lhs_sol)},
                        {"rhs_solver", spectral_diag(rhs_sol)}};

  const bool constant_rho =
      std::all_of(rho.begin(), rho.end(),
                  [&](double r) { return r == rho.front(); });
  if (constant_rho) {
    const SpectralResult base_sol = lambda1_closed(base);
    const double fiber_eig = 2.0 / (rho.front() * rho.front());
    report.diagnostics["lambda1_base"] = base_sol.lambda1;
    report.diagnostics["fiber_eigenvalue"] = fiber_eig;
    if (base_sol.lambda1 <= fiber_eig) {
      // Constant-warping equality: the total-space eigenvalue matches the
      // base eigenvalue.
      report.equality = true;
      report.rhs = base_sol.lambda1;
      report.rhs_label = "lambda1(base)";
      report.note = "constant rho equality branch";
    }
  }
  finalize(report, timer.seconds());
  return report;
}

// ---------------------------------------------------------------------
// Fibered Dirichlet domains

namespace {

// Product of the base with a planar grid, keeping only cells that any
// fiber mask (or its 1-ring) touches, Dirichlet-flagged per base vertex.
DiscreteManifold build_fibered_domain(const FiberedDomainSpec& spec) {
  const int nb = spec.base.vertex_count();
  if (static_cast<int>(spec.masks.size()) != nb)
    throw ShapeError("one planar mask per base vertex required");
  const int nx = spec.masks[0].nx;
  const int ny = spec.masks[0].ny;
  for (const auto& m : spec.masks)
    if (m.nx != nx || m.ny != ny)
      throw ShapeError("all fiber masks must share grid dimensions");
  const double h = spec.spacing;

  auto cell_used = [&](int ix, int iy) {
    for (const auto& m : spec.masks)
      if (m.at(ix, iy) || m.at(ix - 1, iy) || m.at(ix + 1, iy) ||
          m.at(ix, iy - 1) || m.at(ix, iy + 1))
        return true;
    return false;
  };
  std::vector<int> cell_id(static_cast<std::size_t>(nx) * ny, -1);
  std::vector<std::pair<int, int>> cells;
  for (int iy = 0; iy < ny; ++iy)
    for (int ix = 0; ix < nx; ++ix)
      if (cell_used(ix, iy)) {
        cell_id[static_cast<std::size_t>(iy) * nx + ix] =
            static_cast<int>(cells.size());
        cells.emplace_back(ix, iy);
      }
  const int nc = static_cast<int>(cells.size());
  if (nc == 0) throw MeshError("fibered domain is empty");

  DiscreteManifold mesh;
  mesh.dim = spec.base.dim + 2;
  mesh.measures.resize(static_cast<std::size_t>(nb) * nc);
  mesh.boundary.assign(static_cast<std::size_t>(nb) * nc, 1);
  auto vid = [&](int s, int c) { return s * nc + c; };

  for (int s = 0; s < nb; ++s) {
    const auto& mask = spec.masks[s];
    for (int c = 0; c < nc; ++c) {
      const auto [ix, iy] = cells[c];
      mesh.measures[vid(s, c)] = spec.base.measures[s] * h * h;
      const bool interior = mask.at(ix, iy) && mask.at(ix - 1, iy) &&
                            mask.at(ix + 1, iy) && mask.at(ix, iy - 1) &&
                            mask.at(ix, iy + 1);
      if (interior) mesh.boundary[vid(s, c)] = 0;
    }
  }
  // Vertical (in-fiber) edges; edges between two Dirichlet vertices carry
  // no information and are dropped to keep the matrices small.
  for (int c = 0; c < nc; ++c) {
    const auto [ix, iy] = cells[c];
    const int right = ix + 1 < nx
                          ? cell_id[static_cast<std::size_t>(iy) * nx + ix + 1]
                          : -1;
    const int up = iy + 1 < ny
                       ? cell_id[(static_cast<std::size_t>(iy) + 1) * nx + ix]
                       : -1;
    for (int s = 0; s < nb; ++s) {
      const double w = spec.base.measures[s];
      if (right >= 0 &&
          !(mesh.boundary[vid(s, c)] && mesh.boundary[vid(s, right)]))
        mesh.edges.push_back({vid(s, c), vid(s, right), w});
      if (up >= 0 && !(mesh.boundary[vid(s, c)] && mesh.boundary[vid(s, up)]))
        mesh.edges.push_back({vid(s, c), vid(s, up), w});
    }
  }
  // Horizontal (base) edges.
  for (const Edge& e : spec.base.edges)
    for (int c = 0; c < nc; ++c)
      if (!(mesh.boundary[vid(e.i, c)] && mesh.boundary[vid(e.j, c)]))
        mesh.edges.push_back({vid(e.i, c), vid(e.j, c), e.weight * h * h});
  return mesh;
}

// Symmetrized domain: per-base radial fibers of volume fiber_volume[s] on
// the given model space, equal-measure bins shared across the base,
// Dirichlet at the outer face.
DiscreteManifold build_symmetrized_domain(
    const DiscreteManifold& base, const ModelSpace& space,
    const std::vector<double>& fiber_volume, int bins) {
  const int nb = base.vertex_count();
  if (static_cast<int>(fiber_volume.size()) != nb)
    throw ShapeError("one fiber volume per base vertex required");
  for (double v : fiber_volume)
    if (!(v > 0.0)) throw DomainError("fiber volumes must be positive");

  const int nfv = bins + 1;  // bins plus the outer boundary vertex
  DiscreteManifold mesh;
  mesh.dim = base.dim + space.dim;
  mesh.measures.resize(static_cast<std::size_t>(nb) * nfv);
  mesh.boundary.assign(static_cast<std::size_t>(nb) * nfv, 0);
  auto vid = [&](int s, int k) { return s * nfv + k; };

  for (int s = 0; s < nb; ++s) {
    const double vol = fiber_volume[s];
    const double bin = vol / bins;
    std::vector<double> face_r(bins + 1), center_r(bins);
    for (int k = 0; k <= bins; ++k)
      face_r[k] = ball_volume_inverse(space, k * bin);
    for (int k = 0; k < bins; ++k)
      center_r[k] = ball_volume_inverse(space, (k + 0.5) * bin);
    for (int k = 0; k < bins; ++k)
      mesh.measures[vid(s, k)] = base.measures[s] * bin;
    mesh.measures[vid(s, bins)] = base.measures[s] * bin;
    mesh.boundary[vid(s, bins)] = 1;
    for (int k = 0; k + 1 < bins; ++k)
      mesh.edges.push_back(
          {vid(s, k), vid(s, k + 1),
           base.measures[s] * boundary_area(space, face_r[k + 1]) /
               (center_r[k + 1] - center_r[k])});
    const double outer_r = face_r[bins];
    mesh.edges.push_back(
        {vid(s, bins - 1), vid(s, bins),
         base.measures[s] *
             boundary_area(space, outer_r * (1.0 - 1e-12)) /
             (outer_r - center_r[bins - 1])});
  }
  for (const Edge& e : base.edges)
    for (int k = 0; k < bins; ++k)
      mesh.edges.push_back(
          {vid(e.i, k), vid(e.j, k),
           e.weight * 0.5 * (fiber_volume[e.i] + fiber_volume[e.j]) / bins});
  return mesh;
}

}  // namespace

FiberedDomainSpec tube_preset(double spacing, int base_n) {
  FiberedDomainSpec spec;
  spec.base = make_circle(2.0 * kPi, base_n);
  spec.spacing = spacing;
  spec.masks.reserve(base_n);
  for (int s = 0; s < base_n; ++s) {
    const double theta = 2.0 * kPi * s / base_n;
    spec.masks.push_back(
        annulus_mask(0.3 + 0.1 * std::sin(theta), 1.0, spacing));
  }
  return spec;
}

FiberedDomainSpec holed_tube_preset(double spacing, int base_n) {
  FiberedDomainSpec spec;
  spec.base = make_circle(2.0 * kPi, base_n);
  spec.spacing = spacing;
  PlanarMask disc = disc_mask(1.0, spacing);
  const int half = (disc.nx - 1) / 2;
  for (int s = 0; s < base_n; ++s) {
    PlanarMask mask = disc;
    // Off-center hole of radius 0.2 at (0.4, 0).
    for (int iy = 0; iy < mask.ny; ++iy)
      for (int ix = 0; ix < mask.nx; ++ix) {
        const double x = (ix - half) * spacing - 0.4;
        const double y = (iy - half) * spacing;
        if (std::hypot(x, y) < 0.2 - 0.5 * spacing)
          mask.cells[static_cast<std::size_t>(iy) * mask.nx + ix] = 0;
      }
    spec.masks.push_back(std::move(mask));
  }
  return spec;
}

ComparisonReport check_fiberwise_faber_krahn(const FiberedDomainSpec& spec,
                                             int radial_bins, double slack) {
  Stopwatch timer;
  ComparisonReport report;
  report.theorem_id = "faber-krahn";
  report.lhs_label = "lambda1(X) Dirichlet";
  report.rhs_label = "lambda1(X*) Dirichlet";
  report.slack = slack;

  const DiscreteManifold domain = build_fibered_domain(spec);
  const int nb = spec.base.vertex_count();
  std::vector<double> volume(nb, 0.0);
  const double cell = spec.spacing * spec.spacing;
  for (int s = 0; s < nb; ++s) {
    long in_mask = 0;
    for (auto c : spec.masks[s].cells) in_mask += (c != 0);
    volume[s] = in_mask * cell;
  }
  const DiscreteManifold symmetrized = build_symmetrized_domain(
      spec.base, ModelSpace::euclidean(2), volume, radial_bins);

  const SpectralResult lhs_sol = lambda1_dirichlet(domain, kBigSolveTol);
  const SpectralResult rhs_sol = lambda1_dirichlet(symmetrized, kBigSolveTol);
  report.lhs = lhs_sol.lambda1;
  report.rhs = rhs_sol.lambda1;
  report.diagnostics = {{"spacing", spec.spacing},
                        {"base_n", nb},
                        {"domain_vertices", domain.vertex_count()},
                        {"symmetrized_vertices", symmetrized.vertex_count()},
                        {"radial_bins", radial_bins},
                        {"lhs_solver", spectral_diag(lhs_sol)},
                        {"rhs_solver", spectral_diag(rhs_sol)}};
  finalize(report, timer.seconds());
  return report;
}

// ---------------------------------------------------------------------
// Spherical fibered domains

SphericalDomainSpec cap_preset(int base_n, int fiber_level, double r0,
                               double amp) {
  SphericalDomainSpec spec;
  spec.base = make_circle(2.0 * kPi, base_n);
  spec.fiber_level = fiber_level;
  const auto positions = icosphere_vertex_positions(fiber_level);
  spec.fiber_masks.resize(base_n);
  for (int s = 0; s < base_n; ++s) {
    const double radius = r0 + amp * std::sin(2.0 * kPi * s / base_n);
    spec.fiber_masks[s].resize(positions.size());
    for (std::size_t x = 0; x < positions.size(); ++x) {
      const double polar = std::acos(std::clamp(positions[x][2], -1.0, 1.0));
      spec.fiber_masks[s][x] = polar < radius ? 1 : 0;
    }
  }
  return spec;
}

SphericalDomainSpec half_sphere_preset(int base_n, int fiber_level) {
  SphericalDomainSpec spec;
  spec.base = make_circle(2.0 * kPi, base_n);
  spec.fiber_level = fiber_level;
  const auto positions = icosphere_vertex_positions(fiber_level);
  spec.fiber_masks.resize(base_n);
  for (int s = 0; s < base_n; ++s) {
    const double theta = 2.0 * kPi * s / base_n;
    const double nx = std::cos(theta);
    const double nz = std::sin(theta);
    spec.fiber_masks[s].resize(positions.size());
    for (std::size_t x = 0; x < positions.size(); ++x)
      spec.fiber_masks[s][x] =
          nx * positions[x][0] + nz * positions[x][2] > 0.0 ? 1 : 0;
  }
  return spec;
}

ComparisonReport check_spherical_domain(const SphericalDomainSpec& spec,
                                        int radial_bins, double slack) {
  Stopwatch timer;
  ComparisonReport report;
  report.theorem_id = "spherical-domain";
  report.lhs_label = "lambda1(X) Dirichlet";
  report.rhs_label = "lambda1(X*) Dirichlet";
  report.slack = slack;

  const DiscreteManifold fiber = make_icosphere(spec.fiber_level);
  const int nb = spec.base.vertex_count();
  const int nf = fiber.vertex_count();
  if (static_cast<int>(spec.fiber_masks.size()) != nb)
    throw ShapeError("one fiber mask per base vertex required");

  std::vector<std::vector<int>> fiber_adj(nf);
  for (const Edge& e : fiber.edges) {
    fiber_adj[e.i].push_back(e.j);
    fiber_adj[e.j].push_back(e.i);
  }

  DiscreteManifold domain;
  domain.dim = spec.base.dim + 2;
  domain.measures.resize(static_cast<std::size_t>(nb) * nf);
  domain.boundary.assign(static_cast<std::size_t>(nb) * nf, 1);
  auto vid = [&](int s, int x) { return s * nf + x; };
  std::vector<double> volume(nb, 0.0);
  for (int s = 0; s < nb; ++s) {
    const auto& mask = spec.fiber_masks[s];
    if (static_cast<int>(mask.size()) != nf)
      throw ShapeError("fiber mask length must match fiber vertices");
    double ring = 0.0;
    for (int x = 0; x < nf; ++x) {
      domain.measures[vid(s, x)] = spec.base.measures[s] * fiber.measures[x];
      if (!mask[x]) continue;
      bool interior = true;
      for (int y : fiber_adj[x]) interior = interior && mask[y];
      if (interior)
        domain.boundary[vid(s, x)] = 0;
      else
        ring += fiber.measures[x];
      volume[s] += fiber.measures[x];
    }
    // The Dirichlet zero set sits on the outermost in-mask ring, so the
    // effective fiber volume excludes about half of it.
    volume[s] -= 0.5 * ring;
  }
  for (const Edge& e : fiber.edges)
    for (int s = 0; s < nb; ++s)
      if (!(domain.boundary[vid(s, e.i)] && domain.boundary[vid(s, e.j)]))
        domain.edges.push_back(
            {vid(s, e.i), vid(s, e.j), e.weight * spec.base.measures[s]});
  for (const Edge& e : spec.base.edges)
    for (int x = 0; x < nf; ++x)
      if (!(domain.boundary[vid(e.i, x)] && domain.boundary[vid(e.j, x)]))
        domain.edges.push_back(
            {vid(e.i, x), vid(e.j, x), e.weight * fiber.measures[x]});

  const ModelSpace sphere = ModelSpace::sphere_of_volume(2, 4.0 * kPi);
  const DiscreteManifold symmetrized =
      build_symmetrized_domain(spec.base, sphere, volume, radial_bins);

  const SpectralResult lhs_sol = lambda1_dirichlet(domain, kBigSolveTol);
  const SpectralResult rhs_sol = lambda1_dirichlet(symmetrized, kBigSolveTol);
  report.lhs = lhs_sol.lambda1;
  report.rhs = rhs_sol.lambda1;
  report.diagnostics = {{"base_n", nb},
                        {"fiber_level", spec.fiber_level},
                        {"radial_bins", radial_bins},
                        {"lhs_solver", spectral_diag(lhs_sol)},
                        {"rhs_solver", spectral_diag(rhs_sol)}};
  finalize(report, timer.seconds());
  return report;
}

// ---------------------------------------------------------------------
// Yamabe checks

ComparisonReport check_yamabe_warped(double base_len, int base_n,
                                     const std::vector<double>& rho,
                                     int fiber_level, double slack,
                                     int descent_iters) {
  Stopwatch timer;
  ComparisonReport report;
  report.theorem_id = "yamabe-warped";
  report.lhs_label = "descent bound Y(base x_rho S^2)";
  report.rhs_label = "descent bound Y(base x_rho model S^2)";
  report.slack = slack;
  report.note =
      "indicative: both sides are descent upper bounds, not the true infima";

  const DiscreteManifold base = make_circle(base_len, base_n);
  const std::vector<double> base_scalar(base_n, 0.0);
  const std::vector<double> warped_s =
      warped_scalar_curvature(base, 2, 2.0, base_scalar, rho);

  const DiscreteManifold fiber = make_icosphere(fiber_level);
  const ModelSpace sphere = ModelSpace::sphere_of_volume(2, 4.0 * kPi);
  const DiscreteManifold model_fiber =
      make_radial_model(sphere, 96, sphere.max_radius());

  const DiscreteManifold lhs_mesh = make_warped_product(base, fiber, rho);
  const DiscreteManifold rhs_mesh =
      make_warped_product(base, model_fiber, rho);

  const DescentResult lhs_run = yamabe_descent(
      lhs_mesh, lift_base_field(lhs_mesh, warped_s), 3, descent_iters);
  const DescentResult rhs_run = yamabe_descent(
      rhs_mesh, lift_base_field(rhs_mesh, warped_s), 3, descent_iters);
  report.lhs = lhs_run.value;
  report.rhs = rhs_run.value;

  // Constant-competitor sanity bound on both sides.
  const ScalarField ones_l(lhs_mesh.vertex_count(), 1.0);
  const ScalarField ones_r(rhs_mesh.vertex_count(), 1.0);
  report.diagnostics = {
      {"base_len", base_len},
      {"base_n", base_n},
      {"fiber_level", fiber_level},
      {"descent_iters", descent_iters},
      {"lhs_constant_bound",
       yamabe_functional(lhs_mesh, ones_l, lift_base_field(lhs_mesh, warped_s),
                         3)},
      {"rhs_constant_bound",
       yamabe_functional(rhs_mesh, ones_r, lift_base_field(rhs_mesh, warped_s),
                         3)}};
  finalize(report, timer.seconds());
  return report;
}

ComparisonReport check_yamabe_product_value() {
  Stopwatch timer;
  ComparisonReport report;
  report.theorem_id = "yamabe-eval";
  report.lhs_label = "Y(1) on S^1_{2pi} x S^2";
  report.rhs_label = "2 (8 pi^2)^{2/3}";
  report.slack = 1e-6;
  report.equality = true;

  const DiscreteManifold base = make_circle(2.0 * kPi, 64);
  const ModelSpace sphere = ModelSpace::sphere_of_volume(2, 4.0 * kPi);
  const DiscreteManifold fiber =
      make_radial_model(sphere, 128, sphere.max_radius());
  const DiscreteManifold product = make_product(base, fiber);
  const ScalarField ones(product.vertex_count(), 1.0);
  const std::vector<double> curvature(product.vertex_count(), 2.0);
  report.lhs = yamabe_functional(product, ones, curvature, 3);
  report.rhs = 2.0 * std::pow(8.0 * kPi * kPi, 2.0 / 3.0);
  report.diagnostics = {{"volume", product.total_measure()}};
  finalize(report, timer.seconds());
  return report;
}

// ---------------------------------------------------------------------
// Reference table

const std::vector<ReferenceValue>& reference_values() {
  static const std::vector<ReferenceValue> table = {
      {"cp2-sum", "CP^2 # conj(CP^2) (nontrivial S^2-bundle over S^2)", "2",
       "equals lambda1(S^2)"},
      {"squashed-s4q3", "squashed S^{4q+3} over HP^q, q >= 2", "8(q+1)",
       "matches Tanno's computation"},
      {"squashed-s15", "squashed S^15 over (S^8, 1/4 round)", "32",
       "fiber S^7 sufficiently shrunk"},
      {"xmn-bundle", "S^3-bundles X_{m,n} over (S^4, 1/4 round)", "16",
       "equals lambda1(S^4, 1/4 round)"},
  };
  return table;
}

ComparisonReport check_reference_table() {
  Stopwatch timer;
  ComparisonReport report;
  report.theorem_id = "reference";
  report.lhs_label = "table rows";
  report.rhs_label = "expected rows";
  report.slack = 0.0;
  report.equality = true;
  report.note =
      "citation table only: nontrivial bundles are not numerically "
      "reproduced here";
  const auto& table = reference_values();
  report.lhs = static_cast<double>(table.size());
  report.rhs = 4.0;
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : table)
    rows.push_back({{"id", row.id},
                    {"space", row.space},
                    {"lambda1", row.lambda1},
                    {"source", row.source}});
  report.diagnostics = {{"rows", rows}};
  finalize(report, timer.seconds());
  return report;
}

// ---------------------------------------------------------------------
// Property sweeps

ComparisonReport check_dirichlet_disc(double spacing, double slack) {
  Stopwatch timer;
  ComparisonReport report;
  report.theorem_id = "dirichlet-disc";
  report.lhs_label = "lambda1(unit disc) Dirichlet";
  report.rhs_label = "first Bessel zero squared";
  report.slack = slack;
  report.equality = true;
  const DiscreteManifold mesh =
      make_planar_domain(disc_mask(1.0, spacing), spacing);
  const SpectralResult sol = lambda1_dirichlet(mesh);
  report.lhs = sol.lambda1;
  report.rhs = 5.783185962946785;  // j_{0,1}^2
  report.diagnostics = {{"spacing", spacing},
                        {"vertices", mesh.vertex_count()},
                        {"solver", spectral_diag(sol)}};
  finalize(report, timer.seconds());
  return report;
}

ComparisonReport check_polya_szego_sweep(int mesh_level, int count,
                                         std::uint64_t seed, double floor) {
  Stopwatch timer;
  ComparisonReport report;
  report.theorem_id = "polya-szego";
  report.lhs_label = "min over sweep of E(f)/E(f_*)";
  report.rhs_label = "floor";
  report.slack = 0.0;
  const DiscreteManifold mesh = make_icosphere(mesh_level);
  const auto positions = icosphere_vertex_positions(mesh_level);
  const ModelSpace sphere =
      ModelSpace::sphere_of_volume(2, mesh.total_measure());
  double worst = std::numeric_limits<double>::infinity();
  for (int i = 0; i < count; ++i) {
    const ScalarField field = smooth_sphere_field(positions, seed + i);
    const PolyaSzegoResult ps = polya_szego_check(mesh, field, sphere);
    if (ps.rhs > 0.0) worst = std::min(worst, ps.lhs / ps.rhs);
  }
  report.lhs = worst;
  report.rhs = floor;
  report.diagnostics = {{"mesh_level", mesh_level},
                        {"count", count},
                        {"seed", seed}};
  finalize(report, timer.seconds());
  return report;
}

ComparisonReport check_rearrangement_exactness(int mesh_level, int pairs,
                                               std::uint64_t seed) {
  Stopwatch timer;
  ComparisonReport report;
  report.theorem_id = "rearrangement-exactness";
  report.lhs_label = "tolerance";
  report.rhs_label = "max observed deviation";
  report.slack = 0.0;
  const DiscreteManifold mesh = make_icosphere(mesh_level);
  const double volume = mesh.total_measure();
  const ModelSpace sphere = ModelSpace::sphere_of_volume(2, volume);
  const int n = mesh.vertex_count();

  SplitMix64 rng(seed);
  double worst_moment = 0.0;   // relative, against tolerance 1e-10
  double worst_contract = 0.0; // absolute, against tolerance 1e-12
  for (int trial = 0; trial < pairs; ++trial) {
    ScalarField f(n), g(n);
    for (int i = 0; i < n; ++i) f[i] = rng.uniform(-2.0, 2.0);
    for (int i = 0; i < n; ++i) g[i] = rng.uniform(-2.0, 2.0);

    const ContractionResult cr = sup_contraction_check(mesh, f, g, sphere);
    worst_contract =
        std::max(worst_contract, cr.profile_gap - cr.field_gap);

    // Layer-cake band sums over an interval avoiding field values.
    const RadialProfile profile = rearrange(mesh, f, sphere);
    ScalarField sorted = f;
    std::sort(sorted.begin(), sorted.end());
    const int ia = n / 5 + (trial % 7);
    const int ib = 4 * n / 5 - (trial % 5);
    const double a = 0.5 * (sorted[ia] + sorted[ia + 1]);
    const double b = 0.5 * (sorted[ib] + sorted[ib + 1]);
    for (int k = 1; k <= 3; ++k) {
      double direct = 0.0;
      for (int i = 0; i < n; ++i)
        if (f[i] > a && f[i] < b)
          direct += std::pow(f[i], k) * mesh.measures[i];
      double banded = 0.0;
      const auto& bp = profile.breakpoints;
      for (std::size_t q = 1; q < bp.size(); ++q)
        if (bp[q].value > a && bp[q].value < b)
          banded += std::pow(bp[q].value, k) *
                    (bp[q].cumulative - bp[q - 1].cumulative);
      const double denom = std::max({std::abs(direct), std::abs(banded), 1.0});
      worst_moment = std::max(worst_moment,
                              std::abs(direct - banded) / denom);
    }
  }
  // Two tolerances; report the binding one as a single normalized margin.
  const double moment_ratio = worst_moment / 1e-10;
  const double contract_ratio = worst_contract / 1e-12;
  report.lhs = 1.0;
  report.rhs = std::max({moment_ratio, contract_ratio, 0.0});
  report.diagnostics = {{"mesh_level", mesh_level},
                        {"pairs", pairs},
                        {"seed", seed},
                        {"max_moment_deviation", worst_moment},
                        {"max_contraction_excess", worst_contract}};
  finalize(report, timer.seconds());
  return report;
}

ComparisonReport check_fiberwise_contraction(int base_n, int fiber_level,
                                             int count, std::uint64_t seed,
                                             double slack) {
  Stopwatch timer;
  ComparisonReport report;
  report.theorem_id = "fiberwise-contraction";
  report.lhs_label = "slack";
  report.rhs_label = "worst relative component violation";
  report.slack = 0.0;
  const DiscreteManifold base = make_circle(2.0 * kPi, base_n);
  const DiscreteManifold fiber = make_icosphere(fiber_level);
  const DiscreteManifold product = make_product(base, fiber);
  const auto positions = icosphere_vertex_positions(fiber_level);
  const ModelSpace sphere =
      ModelSpace::sphere_of_volume(2, fiber.total_measure());

  double worst = 0.0;
  for (int trial = 0; trial < count; ++trial) {
    const ScalarField field =
        smooth_product_field(base_n, 2.0 * kPi, positions, seed + trial);
    const FiberwiseField fw = fiberwise_rearrange(product, field, sphere);
    const EnergySplit split = fiberwise_energy_split(product, fw, field);
    const double scale =
        std::max({split.vert_lhs, split.horiz_lhs, 1e-12});
    worst = std::max(worst, (split.vert_rhs - split.vert_lhs) / scale);
    worst = std::max(worst, (split.horiz_rhs - split.horiz_lhs) / scale);
  }
  report.lhs = slack;
  report.rhs = worst;
  report.diagnostics = {{"base_n", base_n},
                        {"fiber_level", fiber_level},
                        {"count", count},
                        {"seed", seed}};
  finalize(report, timer.seconds());
  return report;
}

ComparisonReport check_hyperbolic_experimental(double spacing) {
  Stopwatch timer;
  ComparisonReport report;
  report.theorem_id = "hyperbolic-experimental";
  report.lhs_label = "lambda1(X) Dirichlet";
  report.rhs_label = "lambda1(X hyperbolic-rearranged) Dirichlet";
  report.slack = 0.0;
  report.note = "experimental: margin reported, not asserted";

  FiberedDomainSpec spec = tube_preset(spacing, 16);
  const DiscreteManifold domain = build_fibered_domain(spec);
  const int nb = spec.base.vertex_count();
  std::vector<double> volume(nb, 0.0);
  for (int s = 0; s < nb; ++s) {
    long in_mask = 0;
    for (auto c : spec.masks[s].cells) in_mask += (c != 0);
    volume[s] = in_mask * spacing * spacing;
  }
  const DiscreteManifold symmetrized = build_symmetrized_domain(
      spec.base, ModelSpace::hyperbolic(2), volume, 160);
  const SpectralResult lhs_sol = lambda1_dirichlet(domain, kBigSolveTol);
  const SpectralResult rhs_sol = lambda1_dirichlet(symmetrized, kBigSolveTol);
  report.lhs = lhs_sol.lambda1;
  report.rhs = rhs_sol.lambda1;
  report.diagnostics = {{"spacing", spacing},
                        {"lhs_solver", spectral_diag(lhs_sol)},
                        {"rhs_solver", spectral_diag(rhs_sol)}};
  report.margin = report.lhs - report.rhs;
  report.pass = true;  // unasserted by design
  report.diagnostics["elapsed_seconds"] = timer.seconds();
  return report;
}

// ---------------------------------------------------------------------
// Suite

std::vector<ComparisonReport> run_acceptance_suite(const SuiteOptions& opts) {
  const double ls = opts.slack >= 0.0
                        ? opts.slack
                        : (opts.quick ? 2.0 * kLambdaSlack : kLambdaSlack);
  const double ys = opts.slack >= 0.0
                        ? opts.slack
                        : (opts.quick ? 2.0 * kYamabeSlack : kYamabeSlack);
  const int level = opts.quick ? std::min(opts.level, 3) : opts.level;
  const int product_level = opts.quick ? 2 : 3;
  const int product_base_n = opts.quick ? 48 : 128;
  const double spacing = opts.quick ? 0.05 : opts.spacing;
  const int tube_base_n = opts.quick ? 12 : 32;
  const int sweep_count = opts.quick ? 20 : 100;
  const int pair_count = opts.quick ? 40 : 200;
  const int fiber_count = opts.quick ? 10 : 50;

  std::vector<double> rho_half(64, 0.5);
  std::vector<ComparisonReport> reports;
  reports.push_back(check_dirichlet_disc(spacing, opts.quick ? 0.03 : 0.01));
  reports.push_back(check_fiberwise_faber_krahn(
      tube_preset(spacing, tube_base_n), 200, ls));
  reports.push_back(
      check_fiberwise_contraction(64, product_level, fiber_count, 11, ls));
  reports.push_back(check_lichnerowicz(level, ls));
  reports.push_back(check_polya_szego_sweep(level, sweep_count, 2024, 0.98));
  reports.push_back(check_product_formula(2.0 * kPi, product_level,
                                          product_base_n, ls));
  reports.push_back(
      check_rearrangement_exactness(opts.quick ? 2 : 3, pair_count, 7));
  reports.push_back(check_reference_table());
  reports.push_back(
      check_warped_lambda1(2.0 * kPi, 64, rho_half, product_level, ls));
  reports.push_back(check_yamabe_product_value());
  {
    const int yn = opts.quick ? 32 : 48;
    std::vector<double> rho(yn);
    for (int s = 0; s < yn; ++s)
      rho[s] = 1.0 + 0.2 * std::sin(2.0 * kPi * s / yn);
    reports.push_back(check_yamabe_warped(2.0 * kPi, yn, rho,
                                          opts.quick ? 1 : 2, ys));
  }
  if (opts.experimental)
    reports.push_back(check_hyperbolic_experimental(0.05));

  std::sort(reports.begin(), reports.end(),
            [](const ComparisonReport& a, const ComparisonReport& b) {
              return a.theorem_id < b.theorem_id;
            });
  return reports;
}

void write_suite_csv(std::ostream& out,
                     const std::vector<ComparisonReport>& reports) {
  out << "theorem_id,lhs,rhs,margin,slack,pass\n";
  for (const auto& r : reports)
    out << r.theorem_id << ',' << format_double(r.lhs) << ','
        << format_double(r.rhs) << ',' << format_double(r.margin) << ','
        << format_double(r.slack) << ',' << (r.pass ? 1 : 0) << "\n";
}

}  // namespace symmlab
