#pragma once

#include <string>

namespace symmlab {

enum class ModelKind { SphereOfVolume, Euclidean, Hyperbolic };

std::string to_string(ModelKind kind);

/// One of the three isoperimetric model geometries: the round m-sphere
/// rescaled to volume V (metric (V/V_m)^{2/m} g_S), flat m-space, or
/// hyperbolic m-space of curvature -1. Immutable; all queries are pure.
struct ModelSpace {
  ModelKind kind;
  int dim;
  double volume;  // total volume; meaningful for SphereOfVolume only

  static ModelSpace sphere_of_volume(int m, double v);
  static ModelSpace euclidean(int m);
  static ModelSpace hyperbolic(int m);

  // Maximal geodesic radius: pi * (V/V_m)^{1/m} for the sphere, infinity
  // otherwise. ball_volume(max_radius()) == volume is verified in tests
  // rather than assumed.
  double max_radius() const;
};

// Riemannian volume of the unit round m-sphere, V_m = 2 pi^{(m+1)/2} /
// Gamma((m+1)/2).
double unit_sphere_volume(int m);

// A(r): volume of the geodesic ball of radius r about the base point.
double ball_volume(const ModelSpace& space, double r);

// Inverse of ball_volume by bisection; |A(r) - v| <= 1e-12 * max(v, 1).
double ball_volume_inverse(const ModelSpace& space, double v);

// A'(r): (m-1)-volume of the geodesic sphere of radius r.
double boundary_area(const ModelSpace& space, double r);

// h(beta) for the sphere model: boundary area of the geodesic ball holding
// volume fraction beta, normalized by total volume.
double isoperimetric_profile(const ModelSpace& space, double beta);

}  // namespace symmlab
