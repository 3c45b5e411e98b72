#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "symmlab/manifold.hpp"

namespace symmlab {

inline constexpr int kReportSchemaVersion = 1;

/// One theorem check: both sides of the asserted inequality, the signed
/// margin in the asserted direction, and everything needed to replay it.
struct ComparisonReport {
  std::string theorem_id;
  std::string lhs_label;
  std::string rhs_label;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;  // lhs - rhs
  double slack = 0.0;   // relative mesh tolerance
  bool equality = false;  // two one-sided bounds instead of one
  bool pass = false;
  std::string note;
  nlohmann::json diagnostics;

  nlohmann::json to_json() const;
};

// Default relative slacks calibrated from the refinement studies.
inline constexpr double kLambdaSlack = 0.02;
inline constexpr double kYamabeSlack = 0.05;

ComparisonReport check_lichnerowicz(int mesh_level,
                                    double slack = kLambdaSlack);

ComparisonReport check_product_formula(double base_len, int mesh_level,
                                       int base_n = 128,
                                       double slack = kLambdaSlack);

// Warped product base x S^2 against base x (radial model of S^2); for a
// constant rho with lambda1(base) <= 2/rho^2 the constant-warping equality
// lambda1 = lambda1(base) is asserted as well.
ComparisonReport check_warped_lambda1(double base_len, int base_n,
                                      const std::vector<double>& rho,
                                      int fiber_level,
                                      double slack = kLambdaSlack);

/// Bounded domain in base x R^2 given by a planar mask per base vertex.
struct FiberedDomainSpec {
  DiscreteManifold base;
  std::vector<PlanarMask> masks;  // one per base vertex, same grid dims
  double spacing = 0.0;
};

// Circular tube with varying width: annular fibers
// y1(s) = 0.3 + 0.1 sin s < r < y2(s) = 1 over the circle of length 2 pi.
FiberedDomainSpec tube_preset(double spacing = 0.02, int base_n = 32);

// Solid tube with an off-center hole cut out of each fiber.
FiberedDomainSpec holed_tube_preset(double spacing = 0.02, int base_n = 32);

ComparisonReport check_fiberwise_faber_krahn(const FiberedDomainSpec& spec,
                                             int radial_bins = 200,
                                             double slack = kLambdaSlack);

/// Domain in base x S^2 given by a vertex mask of the icosphere fiber per
/// base vertex.
struct SphericalDomainSpec {
  DiscreteManifold base;
  int fiber_level = 3;
  std::vector<std::vector<std::uint8_t>> fiber_masks;  // [base][fiber vertex]
};

// Caps of varying radius R(s) = r0 + amp * sin(s) about a fixed pole.
SphericalDomainSpec cap_preset(int base_n = 24, int fiber_level = 4,
                               double r0 = 1.2, double amp = 0.2);

// Half-spheres cut along great circles whose normal precesses with s.
SphericalDomainSpec half_sphere_preset(int base_n = 24, int fiber_level = 4);

ComparisonReport check_spherical_domain(const SphericalDomainSpec& spec,
                                        int radial_bins = 200,
                                        double slack = 0.05);

ComparisonReport check_yamabe_warped(double base_len, int base_n,
                                     const std::vector<double>& rho,
                                     int fiber_level,
                                     double slack = kYamabeSlack,
                                     int descent_iters = 400);

struct ReferenceValue {
  std::string id;
  std::string space;
  std::string lambda1;  // stated value, kept symbolic where the source is
  std::string source;
};

// First-eigenvalue values stated for nontrivial bundles. These are shipped
// as citations only; the geometries have no product discretization here.
const std::vector<ReferenceValue>& reference_values();

ComparisonReport check_reference_table();

// Property sweeps used by the acceptance suite ------------------------

ComparisonReport check_dirichlet_disc(double spacing = 0.02,
                                      double slack = 0.01);

ComparisonReport check_polya_szego_sweep(int mesh_level = 4, int count = 100,
                                         std::uint64_t seed = 2024,
                                         double floor = 0.98);

ComparisonReport check_rearrangement_exactness(int mesh_level = 3,
                                               int pairs = 200,
                                               std::uint64_t seed = 7);

ComparisonReport check_fiberwise_contraction(int base_n = 64,
                                             int fiber_level = 3,
                                             int count = 50,
                                             std::uint64_t seed = 11,
                                             double slack = kLambdaSlack);

ComparisonReport check_yamabe_product_value();

// Experimental only: Euclidean-vs-hyperbolic domain comparison. Reports
// margins without asserting a direction (pass is always true).
ComparisonReport check_hyperbolic_experimental(double spacing = 0.05);

// Trial fields --------------------------------------------------------

// Low-frequency combination of spherical polynomials up to degree 3.
ScalarField smooth_sphere_field(
    const std::vector<std::array<double, 3>>& positions, std::uint64_t seed);

// Low-frequency field on circle x icosphere (base angle times fiber
// polynomial modes).
ScalarField smooth_product_field(
    int base_n, double base_len,
    const std::vector<std::array<double, 3>>& fiber_positions,
    std::uint64_t seed);

// Acceptance suite ----------------------------------------------------

struct SuiteOptions {
  int level = 4;           // icosphere refinement for single-fiber checks
  double slack = -1.0;     // < 0: per-check defaults
  double spacing = 0.02;   // planar grid spacing
  bool quick = false;      // smaller meshes, wider slack
  bool experimental = false;
};

std::vector<ComparisonReport> run_acceptance_suite(const SuiteOptions& opts);

void write_suite_csv(std::ostream& out,
                     const std::vector<ComparisonReport>& reports);

}  // namespace symmlab
