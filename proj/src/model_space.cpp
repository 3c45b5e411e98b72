#include "symmlab/model_space.hpp"

#include <cmath>
#include <limits>

#include "symmlab/errors.hpp"

namespace symmlab {

namespace {

// I_n(t) = integral of sin^n over [0, t], by the standard reduction
// I_n = (-cos t sin^{n-1} t + (n-1) I_{n-2}) / n.
double sin_power_integral(int n, double t) {
  if (n == 0) return t;
  const double s = std::sin(t);
  const double c = std::cos(t);
  double even = t;           // I_0
  double odd = 1.0 - c;      // I_1
  double spow_even = s;      // sin^{k-1} t entering the update of even k
  double spow_odd = s * s;   // same for odd k
  for (int k = 2; k <= n; ++k) {
    double& acc = (k % 2 == 0) ? even : odd;
    double& spow = (k % 2 == 0) ? spow_even : spow_odd;
    acc = (-c * spow + (k - 1) * acc) / k;
    spow *= s * s;
  }
  return (n % 2 == 0) ? even : odd;
}

// Same for sinh: I_n = (cosh t sinh^{n-1} t - (n-1) I_{n-2}) / n.
double sinh_power_integral(int n, double t) {
  if (n == 0) return t;
  const double s = std::sinh(t);
  const double c = std::cosh(t);
  double even = t;
  double odd = c - 1.0;
  double spow_even = s;
  double spow_odd = s * s;
  for (int k = 2; k <= n; ++k) {
    double& acc = (k % 2 == 0) ? even : odd;
    double& spow = (k % 2 == 0) ? spow_even : spow_odd;
    acc = (c * spow - (k - 1) * acc) / k;
    spow *= s * s;
  }
  return (n % 2 == 0) ? even : odd;
}

void require_dim(int m) {
  if (m < 1) throw DomainError("model space dimension must be >= 1");
}

// Valid down to m = 0 (the two-point 0-sphere), which the ball formulas
// need for one-dimensional models.
double sphere_volume_impl(int m) {
  const double pi = std::acos(-1.0);
  return 2.0 * std::pow(pi, 0.5 * (m + 1)) / std::tgamma(0.5 * (m + 1));
}

// Linear scale of S^m_V relative to the unit sphere.
double sphere_scale(const ModelSpace& space) {
  return std::pow(space.volume / sphere_volume_impl(space.dim),
                  1.0 / space.dim);
}

}  // namespace

std::string to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::SphereOfVolume:
      return "sphere";
    case ModelKind::Euclidean:
      return "euclidean";
    case ModelKind::Hyperbolic:
      return "hyperbolic";
  }
  return "?";
}

ModelSpace ModelSpace::sphere_of_volume(int m, double v) {
  require_dim(m);
  if (!(v > 0.0)) throw DomainError("sphere model volume must be positive");
  return ModelSpace{ModelKind::SphereOfVolume, m, v};
}

ModelSpace ModelSpace::euclidean(int m) {
  require_dim(m);
  return ModelSpace{ModelKind::Euclidean, m, 0.0};
}

ModelSpace ModelSpace::hyperbolic(int m) {
  require_dim(m);
  return ModelSpace{ModelKind::Hyperbolic, m, 0.0};
}

double ModelSpace::max_radius() const {
  if (kind == ModelKind::SphereOfVolume)
    return std::acos(-1.0) * sphere_scale(*this);
  return std::numeric_limits<double>::infinity();
}

double unit_sphere_volume(int m) {
  require_dim(m);
  return sphere_volume_impl(m);
}

double ball_volume(const ModelSpace& space, double r) {
  if (r < 0.0) throw DomainError("ball radius must be nonnegative");
  const int m = space.dim;
  const double shell = sphere_volume_impl(m - 1);
  switch (space.kind) {
    case ModelKind::SphereOfVolume: {
      const double c = sphere_scale(space);
      if (r > space.max_radius() * (1.0 + 1e-12))
        throw DomainError("ball radius exceeds sphere diameter bound");
      const double theta = std::min(r / c, std::acos(-1.0));
      return shell * std::pow(c, m) * sin_power_integral(m - 1, theta);
    }
    case ModelKind::Euclidean:
      return shell * std::pow(r, m) / m;
    case ModelKind::Hyperbolic:
      return shell * sinh_power_integral(m - 1, r);
  }
  throw DomainError("unknown model kind");
}

double ball_volume_inverse(const ModelSpace& space, double v) {
  if (v < 0.0) throw DomainError("ball volume must be nonnegative");
  if (v == 0.0) return 0.0;
  double lo = 0.0;
  double hi;
  if (space.kind == ModelKind::SphereOfVolume) {
    if (v > space.volume * (1.0 + 1e-12))
      throw DomainError("ball volume exceeds total sphere volume");
    hi = space.max_radius();
    if (v >= space.volume) return hi;
  } else {
    hi = 1.0;
    while (ball_volume(space, hi) < v) {
      hi *= 2.0;
      if (hi > 1e8) throw DomainError("ball volume out of reachable range");
    }
  }
  // Bisection; A is strictly increasing on [lo, hi].
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (ball_volume(space, mid) < v)
      lo = mid;
    else
      hi = mid;
    if (hi - lo <= 1e-15 * std::max(1.0, hi)) break;
  }
  return 0.5 * (lo + hi);
}

double boundary_area(const ModelSpace& space, double r) {
  if (!(r > 0.0)) throw DomainError("geodesic sphere radius must be positive");
  const int m = space.dim;
  const double shell = sphere_volume_impl(m - 1);
  switch (space.kind) {
    case ModelKind::SphereOfVolume: {
      const double c = sphere_scale(space);
      if (!(r < space.max_radius()))
        throw DomainError("geodesic sphere radius must be interior");
      return shell * std::pow(c * std::sin(r / c), m - 1);
    }
    case ModelKind::Euclidean:
      return shell * std::pow(r, m - 1);
    case ModelKind::Hyperbolic:
      return shell * std::pow(std::sinh(r), m - 1);
  }
  throw DomainError("unknown model kind");
}

double isoperimetric_profile(const ModelSpace& space, double beta) {
  if (space.kind != ModelKind::SphereOfVolume)
    throw DomainError("isoperimetric profile is defined for the sphere model");
  if (!(beta > 0.0 && beta < 1.0))
    throw DomainError("volume fraction must lie in (0,1)");
  const double r = ball_volume_inverse(space, beta * space.volume);
  return boundary_area(space, r) / space.volume;
}

}  // namespace symmlab
