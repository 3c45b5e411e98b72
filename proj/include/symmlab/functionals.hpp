#pragma once

#include <cstdint>
#include <vector>

#include "symmlab/errors.hpp"
#include "symmlab/manifold.hpp"

namespace symmlab {

struct YamabeConstants {
  int m_total;
  double a;  // 4(m-1)/(m-2)
  double p;  // 2m/(m-2)
};

YamabeConstants yamabe_constants(int m_total);

struct DescentError : Error {
  DescentError(const std::string& what, std::vector<double> value_trace)
      : Error(what), trace(std::move(value_trace)) {}
  std::vector<double> trace;
};

// Scalar curvature of the warped metric h + rho^2 g per base vertex, for a
// fiber of constant scalar curvature s_g and dimension m:
//   s_h + s_g/rho^2 + (2m/rho) L_h(rho) - m(m-1)/rho^2 |d rho|^2
// with L_h the positive-spectrum discrete Laplacian B^{-1} K and the
// gradient square taken as the per-vertex share of the edge energy.
std::vector<double> warped_scalar_curvature(
    const DiscreteManifold& base, int fiber_dim, double fiber_scalar,
    const std::vector<double>& base_scalar, const std::vector<double>& rho);

// Y_g(f) = (int a_m |df|^2 + s f^2) / (int |f|^p)^{2/p}.
double yamabe_functional(const DiscreteManifold& manifold,
                         const ScalarField& field,
                         const std::vector<double>& scalar_curvature,
                         int m_total);

struct DescentCheckpoint {
  int iter;
  double value;
  double step;
};

struct DescentResult {
  ScalarField field;
  double value;  // an upper bound on the discrete Yamabe infimum
  std::vector<DescentCheckpoint> trace;
};

// Projected gradient descent on the Yamabe quotient with p-norm
// renormalization and backtracking. The returned value is an upper bound
// on the discrete infimum, never the Yamabe constant itself.
DescentResult yamabe_descent(const DiscreteManifold& manifold,
                             const std::vector<double>& scalar_curvature,
                             int m_total, int iters = 500, double step = 0.1,
                             std::uint64_t seed = 1);

// Expand per-base-vertex values to a constant-along-fiber field on a
// product mesh.
ScalarField lift_base_field(const DiscreteManifold& product,
                            const std::vector<double>& base_values);

void write_descent_csv(std::ostream& out,
                       const std::vector<DescentCheckpoint>& trace);

}  // namespace symmlab
