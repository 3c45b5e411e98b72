#pragma once

#include <cstdint>

#include "symmlab/errors.hpp"
#include "symmlab/manifold.hpp"

namespace symmlab {

struct SpectralResult {
  double lambda1 = 0.0;
  ScalarField eigenfield;  // unit L2 norm; mean-zero for closed problems
  int iterations = 0;
  double residual = 0.0;
  std::uint64_t seed = 0;
};

struct ConvergenceError : Error {
  ConvergenceError(const std::string& what, SpectralResult best_iterate)
      : Error(what), best(std::move(best_iterate)) {}
  SpectralResult best;
};

inline constexpr double kDefaultSpectralTol = 1e-8;
inline constexpr int kSpectralIterationCap = 10000;

// Smallest nonzero eigenvalue of the closed problem K f = lambda B f,
// deflating the constant mode. Shift-inverted iteration with a sparse
// factorization; falls back to preconditioned Rayleigh-quotient descent
// (LOBPCG, block size 1) on large meshes.
SpectralResult lambda1_closed(const DiscreteManifold& manifold,
                              double tol = kDefaultSpectralTol,
                              std::uint64_t seed = 1);

// First Dirichlet eigenvalue: same solvers over fields vanishing on all
// boundary-flagged vertices.
SpectralResult lambda1_dirichlet(const DiscreteManifold& manifold,
                                 double tol = kDefaultSpectralTol,
                                 std::uint64_t seed = 1);

// E(f~)/||f~||^2 for the constraint-projected field (mean-zero projection
// when closed, boundary masking when Dirichlet).
double rayleigh_quotient(const DiscreteManifold& manifold,
                         const ScalarField& field, bool dirichlet);

}  // namespace symmlab
