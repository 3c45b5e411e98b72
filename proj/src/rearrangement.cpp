#include "symmlab/rearrangement.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <ostream>
#include <thread>

#include "symmlab/errors.hpp"

namespace symmlab {

namespace {

int thread_budget() {
  if (const char* env = std::getenv("SYMMLAB_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

template <typename Fn>
void parallel_for(int count, Fn&& fn) {
  const int threads = std::min(thread_budget(), count);
  if (threads <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&, t] {
      for (int i = t; i < count; i += threads) fn(i);
    });
  for (auto& th : pool) th.join();
}

RadialProfile rearrange_values(const std::vector<double>& values,
                               const std::vector<double>& measures,
                               const ModelSpace& space) {
  const int n = static_cast<int>(values.size());
  if (n == 0) throw ShapeError("cannot rearrange an empty field");
  for (double v : values)
    if (!std::isfinite(v)) throw DomainError("field values must be finite");

  double total = 0.0;
  for (double mu : measures) total += mu;
  if (space.kind == ModelKind::SphereOfVolume &&
      std::abs(total - space.volume) > 1e-9 * space.volume)
    throw VolumeError("field domain volume does not match the sphere model");

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return values[a] < values[b];
  });

  RadialProfile profile;
  profile.space = space;
  profile.tie_rank.resize(n);
  for (int k = 0; k < n; ++k) profile.tie_rank[order[k]] = k;

  profile.breakpoints.push_back({0.0, values[order[0]]});
  double cumulative = 0.0;
  for (int k = 0; k < n; ++k) {
    const double v = values[order[k]];
    cumulative += measures[order[k]];
    if (profile.breakpoints.size() > 1 &&
        profile.breakpoints.back().value == v)
      profile.breakpoints.back().cumulative = cumulative;
    else
      profile.breakpoints.push_back({cumulative, v});
  }
  return profile;
}

// Integral of the profile step function over the cumulative-measure
// interval [c0, c1].
double profile_integral(const RadialProfile& profile, double c0, double c1) {
  const auto& bp = profile.breakpoints;
  double sum = 0.0;
  double lo = c0;
  for (std::size_t k = 1; k < bp.size() && lo < c1; ++k) {
    const double band_lo = bp[k - 1].cumulative;
    const double band_hi = bp[k].cumulative;
    if (band_hi <= lo) continue;
    const double a = std::max(lo, band_lo);
    const double b = std::min(c1, band_hi);
    if (b > a) sum += (b - a) * bp[k].value;
    lo = b;
  }
  return sum;
}

}  // namespace

double RadialProfile::value_at_measure(double c) const {
  if (breakpoints.size() < 2) return breakpoints.front().value;
  auto it = std::lower_bound(
      breakpoints.begin() + 1, breakpoints.end(), c,
      [](const ProfileBreakpoint& bp, double x) { return bp.cumulative < x; });
  if (it == breakpoints.end()) return breakpoints.back().value;
  return it->value;
}

double RadialProfile::support_radius() const {
  return ball_volume_inverse(space, total_measure());
}

double distribution_function(const DiscreteManifold& manifold,
                             const ScalarField& field, double t) {
  if (field.size() != manifold.measures.size())
    throw ShapeError("field length must match vertex count");
  double sum = 0.0;
  for (std::size_t i = 0; i < field.size(); ++i)
    if (field[i] < t) sum += manifold.measures[i];
  return sum;
}

RadialProfile rearrange(const DiscreteManifold& manifold,
                        const ScalarField& field, const ModelSpace& space) {
  if (field.size() != manifold.measures.size())
    throw ShapeError("field length must match vertex count");
  return rearrange_values(field, manifold.measures, space);
}

std::pair<DiscreteManifold, ScalarField> profile_pushforward(
    const RadialProfile& profile, int n_bins) {
  if (n_bins < 2) throw MeshError("pushforward needs at least 2 bins");
  const double total = profile.total_measure();
  const double r_max = profile.support_radius();
  DiscreteManifold mesh = make_radial_model(profile.space, n_bins, r_max);
  ScalarField field(n_bins);
  double c_lo = 0.0;
  double cum = 0.0;
  for (int k = 0; k < n_bins; ++k) {
    const double mu = mesh.measures[k];
    // Use the mesh's own bin measures so averaging telescopes to the
    // exact total.
    const double c_hi = (k + 1 == n_bins) ? total : cum + mu;
    field[k] = mu > 0.0 ? profile_integral(profile, c_lo, c_hi) / (c_hi - c_lo)
                        : 0.0;
    cum += mu;
    c_lo = c_hi;
  }
  return {std::move(mesh), std::move(field)};
}

double profile_energy(const RadialProfile& profile, int n_bins) {
  // A discrete profile is a staircase; resolving individual jumps makes the
  // energy diverge with the bin count. Cap the resampling resolution well
  // below the band count so bin averages smooth the staircase.
  const int bands = static_cast<int>(profile.breakpoints.size()) - 1;
  const int capped = std::max(2, std::min(n_bins, std::max(12, bands / 12)));
  const auto [mesh, field] = profile_pushforward(profile, capped);
  return dirichlet_energy(mesh, field);
}

PolyaSzegoResult polya_szego_check(const DiscreteManifold& manifold,
                                   const ScalarField& field,
                                   const ModelSpace& space, int n_bins) {
  PolyaSzegoResult result;
  result.lhs = dirichlet_energy(manifold, field);
  result.factor =
      space.kind == ModelKind::SphereOfVolume
          ? std::pow(space.volume / unit_sphere_volume(space.dim),
                     2.0 / space.dim)
          : 1.0;
  result.rhs =
      result.factor * profile_energy(rearrange(manifold, field, space), n_bins);
  return result;
}

ContractionResult sup_contraction_check(const DiscreteManifold& manifold,
                                        const ScalarField& f,
                                        const ScalarField& g,
                                        const ModelSpace& space) {
  if (f.size() != g.size())
    throw ShapeError("fields must live on the same manifold");
  const RadialProfile pf = rearrange(manifold, f, space);
  const RadialProfile pg = rearrange(manifold, g, space);

  ContractionResult result{0.0, 0.0};
  for (std::size_t i = 0; i < f.size(); ++i)
    result.field_gap = std::max(result.field_gap, std::abs(f[i] - g[i]));

  // Walk the union of band edges of the two step functions.
  std::size_t kf = 1, kg = 1;
  const auto& bf = pf.breakpoints;
  const auto& bg = pg.breakpoints;
  while (kf < bf.size() && kg < bg.size()) {
    result.profile_gap =
        std::max(result.profile_gap, std::abs(bf[kf].value - bg[kg].value));
    if (bf[kf].cumulative < bg[kg].cumulative)
      ++kf;
    else if (bg[kg].cumulative < bf[kf].cumulative)
      ++kg;
    else {
      ++kf;
      ++kg;
    }
  }
  return result;
}

FiberwiseField fiberwise_rearrange(const DiscreteManifold& product,
                                   const ScalarField& field,
                                   const ModelSpace& space, int bins) {
  if (!product.structure)
    throw StructureError("fiberwise rearrangement requires product structure");
  if (field.size() != product.measures.size())
    throw ShapeError("field length must match vertex count");
  if (bins < 2) throw MeshError("fiberwise bin grid needs at least 2 bins");
  const ProductStructure& ps = *product.structure;
  const int nb = ps.base_vertex_count;
  const int nf = ps.fiber_vertex_count;

  FiberwiseField out;
  out.space = space;
  out.bins = bins;
  out.profiles.resize(nb);
  out.binned.assign(nb, std::vector<double>(bins, 0.0));

  // Fiber measures in the warped metric at each base vertex.
  std::vector<double> checked_volume(nb, 0.0);
  parallel_for(nb, [&](int s) {
    const double scale = std::pow(ps.rho[s], ps.fiber_dim);
    std::vector<double> values(nf), measures(nf);
    for (int x = 0; x < nf; ++x) {
      values[x] = field[ps.compose(s, x)];
      measures[x] = ps.fiber_measures[x] * scale;
    }
    double vol = 0.0;
    for (double mu : measures) vol += mu;
    checked_volume[s] = vol;
    out.profiles[s] = rearrange_values(values, measures, space);
    const double bin_measure = vol / bins;
    for (int k = 0; k < bins; ++k)
      out.binned[s][k] = profile_integral(out.profiles[s], k * bin_measure,
                                          (k + 1) * bin_measure) /
                         bin_measure;
  });
  out.fiber_volume = checked_volume[0];
  for (int s = 1; s < nb; ++s)
    if (std::abs(checked_volume[s] - out.fiber_volume) >
        1e-9 * std::abs(out.fiber_volume))
      throw VolumeError("fiber volumes vary across the base");
  return out;
}

EnergySplit fiberwise_energy_split(const DiscreteManifold& product,
                                   const FiberwiseField& fiberwise,
                                   const ScalarField& field, int radial_bins) {
  if (!product.structure)
    throw StructureError("energy split requires product structure");
  if (field.size() != product.measures.size())
    throw ShapeError("field length must match vertex count");
  const ProductStructure& ps = *product.structure;
  EnergySplit split{0.0, 0.0, 0.0, 0.0};

  for (const Edge& e : product.edges) {
    const int si = e.i / ps.fiber_vertex_count;
    const int sj = e.j / ps.fiber_vertex_count;
    const double d = field[e.i] - field[e.j];
    if (si == sj)
      split.vert_lhs += e.weight * d * d;
    else
      split.horiz_lhs += e.weight * d * d;
  }

  for (int s = 0; s < ps.base_vertex_count; ++s)
    split.vert_rhs += ps.base_measures[s] *
                      std::pow(ps.rho[s], ps.fiber_dim - 2) *
                      profile_energy(fiberwise.profiles[s], radial_bins);

  const double bin_measure = fiberwise.fiber_volume / fiberwise.bins;
  for (const BaseEdge& be : ps.base_edges) {
    const double density = 0.5 * (std::pow(ps.rho[be.s], ps.fiber_dim) +
                                  std::pow(ps.rho[be.t], ps.fiber_dim));
    double acc = 0.0;
    for (int k = 0; k < fiberwise.bins; ++k) {
      const double d = fiberwise.binned[be.s][k] - fiberwise.binned[be.t][k];
      acc += d * d;
    }
    split.horiz_rhs += be.weight * density * bin_measure * acc;
  }
  return split;
}

void write_profile_csv(std::ostream& out, const RadialProfile& profile) {
  out << "cumulative_measure,value,radius\n";
  for (std::size_t k = 1; k < profile.breakpoints.size(); ++k) {
    const auto& bp = profile.breakpoints[k];
    out << format_double(bp.cumulative) << ',' << format_double(bp.value)
        << ','
        << format_double(ball_volume_inverse(profile.space, bp.cumulative))
        << "\n";
  }
}

}  // namespace symmlab
