#pragma once

#include <utility>
#include <vector>

#include "symmlab/manifold.hpp"
#include "symmlab/model_space.hpp"

namespace symmlab {

struct ProfileBreakpoint {
  double cumulative;  // measure of {profile <= value} up to this band
  double value;
};

/// Monotone layer-cake pairing of cumulative measure with value: the
/// rearranged function as a step function of the ball volume around the
/// model base point. Bands of equal value are merged, so cumulative
/// coordinates are strictly increasing and values nondecreasing.
struct RadialProfile {
  ModelSpace space;
  std::vector<ProfileBreakpoint> breakpoints;  // breakpoints[0].cumulative == 0
  std::vector<int> tie_rank;  // source vertex -> position in the sorted order

  double total_measure() const { return breakpoints.back().cumulative; }
  // Step lookup: value of the band containing cumulative measure c.
  double value_at_measure(double c) const;
  // Radius of the ball carrying the whole profile.
  double support_radius() const;
};

// mu({f < t}).
double distribution_function(const DiscreteManifold& manifold,
                             const ScalarField& field, double t);

// Monotone rearrangement of the field onto the model space. Ties are broken
// by vertex index (stable sort), which stands in for the genericity
// perturbation on discrete data.
RadialProfile rearrange(const DiscreteManifold& manifold,
                        const ScalarField& field, const ModelSpace& space);

// Resample the profile onto the radial model mesh by measure-weighted
// averaging per bin. First moments are preserved exactly.
std::pair<DiscreteManifold, ScalarField> profile_pushforward(
    const RadialProfile& profile, int n_bins);

// Dirichlet energy of the pushforward on the radial model mesh. The
// effective bin count is capped relative to the profile's band count:
// finer grids resolve the staircase jumps and the energy diverges.
double profile_energy(const RadialProfile& profile, int n_bins);

inline constexpr int kDefaultProfileBins = 512;
inline constexpr int kDefaultFiberBins = 256;

struct PolyaSzegoResult {
  double lhs;     // dirichlet_energy of the field
  double rhs;     // factor * profile_energy of the rearrangement
  double factor;  // (V/V_m)^{2/m} for the sphere target, 1 otherwise
};

// Both sides of the symmetrization energy inequality; the caller asserts
// lhs >= rhs * (1 - mesh slack).
PolyaSzegoResult polya_szego_check(const DiscreteManifold& manifold,
                                   const ScalarField& field,
                                   const ModelSpace& space,
                                   int n_bins = kDefaultProfileBins);

struct ContractionResult {
  double profile_gap;  // sup over the shared measure grid of |f_* - g_*|
  double field_gap;    // ||f - g||_inf
};

// Sup-norm 1-Lipschitz property of the rearranging map:
// profile_gap <= field_gap up to roundoff.
ContractionResult sup_contraction_check(const DiscreteManifold& manifold,
                                        const ScalarField& f,
                                        const ScalarField& g,
                                        const ModelSpace& space);

/// Per-base-vertex profiles of a field on a product, all on one shared
/// equal-measure bin grid.
struct FiberwiseField {
  ModelSpace space;
  int bins = 0;
  double fiber_volume = 0.0;
  std::vector<RadialProfile> profiles;        // one per base vertex
  std::vector<std::vector<double>> binned;    // [base][bin] averages
};

FiberwiseField fiberwise_rearrange(const DiscreteManifold& product,
                                   const ScalarField& field,
                                   const ModelSpace& space,
                                   int bins = kDefaultFiberBins);

struct EnergySplit {
  double vert_lhs;
  double vert_rhs;
  double horiz_lhs;
  double horiz_rhs;
};

// Vertical/horizontal energy components of the original field on the
// product versus the fiberwise-symmetrized field on base x model.
EnergySplit fiberwise_energy_split(const DiscreteManifold& product,
                                   const FiberwiseField& fiberwise,
                                   const ScalarField& original_field,
                                   int radial_bins = kDefaultFiberBins);

// Profile CSV: "cumulative_measure,value,radius" rows.
void write_profile_csv(std::ostream& out, const RadialProfile& profile);

}  // namespace symmlab
