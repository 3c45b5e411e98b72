#include "symmlab/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "symmlab/rng.hpp"

namespace symmlab {

YamabeConstants yamabe_constants(int m_total) {
  if (m_total < 3)
    throw DomainError("Yamabe constants require total dimension >= 3");
  return YamabeConstants{m_total, 4.0 * (m_total - 1) / (m_total - 2),
                         2.0 * m_total / (m_total - 2)};
}

std::vector<double> warped_scalar_curvature(
    const DiscreteManifold& base, int fiber_dim, double fiber_scalar,
    const std::vector<double>& base_scalar, const std::vector<double>& rho) {
  const int n = base.vertex_count();
  if (static_cast<int>(rho.size()) != n ||
      static_cast<int>(base_scalar.size()) != n)
    throw ShapeError("rho and base scalar curvature must match base vertices");
  for (double r : rho)
    if (!(r > 0.0)) throw DomainError("warping function must be positive");

  std::vector<double> laplace(n, 0.0), grad2(n, 0.0);
  for (const Edge& e : base.edges) {
    const double d = rho[e.i] - rho[e.j];
    laplace[e.i] += e.weight * d;
    laplace[e.j] -= e.weight * d;
    grad2[e.i] += 0.5 * e.weight * d * d;
    grad2[e.j] += 0.5 * e.weight * d * d;
  }
  const int m = fiber_dim;
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) {
    const double mu = base.measures[i];
    const double lap = laplace[i] / mu;
    const double g2 = grad2[i] / mu;
    out[i] = base_scalar[i] + fiber_scalar / (rho[i] * rho[i]) +
             2.0 * m / rho[i] * lap - m * (m - 1) / (rho[i] * rho[i]) * g2;
  }
  return out;
}

namespace {

double p_norm_integral(const DiscreteManifold& mesh, const ScalarField& f,
                       double p) {
  double sum = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i)
    sum += std::pow(std::abs(f[i]), p) * mesh.measures[i];
  return sum;
}

double numerator(const DiscreteManifold& mesh, const ScalarField& f,
                 const std::vector<double>& s, double a) {
  double quad = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i)
    quad += s[i] * f[i] * f[i] * mesh.measures[i];
  return a * dirichlet_energy(mesh, f) + quad;
}

}  // namespace

double yamabe_functional(const DiscreteManifold& manifold,
                         const ScalarField& field,
                         const std::vector<double>& scalar_curvature,
                         int m_total) {
  if (field.size() != manifold.measures.size() ||
      scalar_curvature.size() != manifold.measures.size())
    throw ShapeError("field and curvature must match vertex count");
  const YamabeConstants yc = yamabe_constants(m_total);
  const double pn = p_norm_integral(manifold, field, yc.p);
  if (!(pn > 0.0)) throw DegenerateFieldError("zero field in Yamabe quotient");
  return numerator(manifold, field, scalar_curvature, yc.a) /
         std::pow(pn, 2.0 / yc.p);
}

DescentResult yamabe_descent(const DiscreteManifold& manifold,
                             const std::vector<double>& scalar_curvature,
                             int m_total, int iters, double step,
                             std::uint64_t seed) {
  const int n = manifold.vertex_count();
  if (static_cast<int>(scalar_curvature.size()) != n)
    throw ShapeError("curvature must match vertex count");
  const YamabeConstants yc = yamabe_constants(m_total);

  SplitMix64 rng(seed);
  ScalarField f(n);
  for (double& v : f) v = 1.0 + 0.1 * rng.uniform();

  auto normalize = [&](ScalarField& v) {
    const double pn = p_norm_integral(manifold, v, yc.p);
    if (!(pn > 0.0)) throw DegenerateFieldError("descent iterate collapsed");
    const double scale = std::pow(pn, -1.0 / yc.p);
    for (double& x : v) x *= scale;
  };
  normalize(f);

  // With ||f||_p = 1 the quotient equals its numerator; the gradient below
  // is the quotient gradient evaluated on that slice, taken against the
  // vertex measures so step sizes are mesh independent.
  auto value_of = [&](const ScalarField& v) {
    return numerator(manifold, v, scalar_curvature, yc.a);
  };

  double value = value_of(f);
  DescentResult result{f, value, {}};
  result.trace.push_back({0, value, step});

  std::vector<double> grad(n);
  int rises = 0;
  for (int it = 1; it <= iters; ++it) {
    std::fill(grad.begin(), grad.end(), 0.0);
    for (const Edge& e : manifold.edges) {
      const double d = f[e.i] - f[e.j];
      grad[e.i] += 2.0 * yc.a * e.weight * d;
      grad[e.j] -= 2.0 * yc.a * e.weight * d;
    }
    for (int i = 0; i < n; ++i) {
      const double mu = manifold.measures[i];
      const double dd = 2.0 * mu * std::pow(std::abs(f[i]), yc.p - 1.0) *
                        (f[i] < 0.0 ? -1.0 : 1.0);
      grad[i] += 2.0 * scalar_curvature[i] * f[i] * mu - value * dd;
      grad[i] /= mu;
    }
    double gnorm = 0.0;
    for (int i = 0; i < n; ++i)
      gnorm += grad[i] * grad[i] * manifold.measures[i];
    gnorm = std::sqrt(gnorm);
    if (gnorm < 1e-14 * (1.0 + std::abs(value))) break;

    double trial_step = step;
    bool accepted = false;
    for (int halving = 0; halving < 40; ++halving) {
      ScalarField trial(n);
      for (int i = 0; i < n; ++i)
        trial[i] = f[i] - trial_step * grad[i] / gnorm;
      normalize(trial);
      const double trial_value = value_of(trial);
      if (trial_value < value) {
        f = std::move(trial);
        value = trial_value;
        step = std::min(trial_step * 1.5, 1.0);
        accepted = true;
        break;
      }
      trial_step *= 0.5;
    }
    result.trace.push_back({it, value, step});
    if (value < result.value) {
      result.value = value;
      result.field = f;
      rises = 0;
    } else if (!accepted) {
      if (++rises >= 50) {
        std::vector<double> values;
        for (const auto& cp : result.trace) values.push_back(cp.value);
        throw DescentError("Yamabe descent failed to make progress",
                           std::move(values));
      }
    }
    if (!accepted) break;  // backtracking exhausted: local stationarity
  }
  return result;
}

ScalarField lift_base_field(const DiscreteManifold& product,
                            const std::vector<double>& base_values) {
  if (!product.structure)
    throw StructureError("lifting requires product structure");
  const ProductStructure& ps = *product.structure;
  if (static_cast<int>(base_values.size()) != ps.base_vertex_count)
    throw ShapeError("base field length must match base vertex count");
  ScalarField out(product.measures.size());
  for (int s = 0; s < ps.base_vertex_count; ++s)
    for (int x = 0; x < ps.fiber_vertex_count; ++x)
      out[ps.compose(s, x)] = base_values[s];
  return out;
}

void write_descent_csv(std::ostream& out,
                       const std::vector<DescentCheckpoint>& trace) {
  out << "iter,value,step\n";
  for (const auto& cp : trace)
    out << cp.iter << ',' << format_double(cp.value) << ','
        << format_double(cp.step) << "\n";
}

}  // namespace symmlab
