#include "symmlab/spectrum.hpp"

#include <Eigen/Dense>
#include <Eigen/IterativeLinearSolvers>
#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cmath>
#include <vector>

#include "symmlab/rng.hpp"

namespace symmlab {

namespace {

using SpMat = Eigen::SparseMatrix<double>;
using Vec = Eigen::VectorXd;

// Above this active-vertex count the direct factorization is skipped in
// favor of preconditioned Rayleigh-quotient descent.
constexpr int kDirectSolveLimit = 20000;

struct Problem {
  SpMat stiffness;          // K over active vertices
  Vec mass;                 // diagonal of B
  std::vector<int> active;  // active vertex -> mesh vertex
  bool deflate_constant = false;
  double total_mass = 0.0;
};

Problem assemble(const DiscreteManifold& mesh, bool dirichlet) {
  const int n = mesh.vertex_count();
  Problem prob;
  prob.deflate_constant = !dirichlet;
  std::vector<int> index(n, -1);
  for (int v = 0; v < n; ++v)
    if (!dirichlet || !mesh.boundary[v]) {
      index[v] = static_cast<int>(prob.active.size());
      prob.active.push_back(v);
    }
  const int na = static_cast<int>(prob.active.size());
  prob.mass.resize(na);
  for (int a = 0; a < na; ++a) {
    prob.mass[a] = mesh.measures[prob.active[a]];
    prob.total_mass += prob.mass[a];
  }
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(mesh.edges.size() * 4 + na);
  for (const Edge& e : mesh.edges) {
    if (e.weight == 0.0) continue;
    const int a = index[e.i];
    const int b = index[e.j];
    if (a >= 0) trips.emplace_back(a, a, e.weight);
    if (b >= 0) trips.emplace_back(b, b, e.weight);
    if (a >= 0 && b >= 0) {
      trips.emplace_back(a, b, -e.weight);
      trips.emplace_back(b, a, -e.weight);
    }
  }
  prob.stiffness.resize(na, na);
  prob.stiffness.setFromTriplets(trips.begin(), trips.end());
  return prob;
}

void deflate(const Problem& prob, Vec& v) {
  if (!prob.deflate_constant) return;
  const double mean = prob.mass.dot(v) / prob.total_mass;
  v.array() -= mean;
}

double b_norm(const Problem& prob, const Vec& v) {
  return std::sqrt(v.dot(prob.mass.cwiseProduct(v)));
}

Vec seeded_start(const Problem& prob, std::uint64_t seed) {
  SplitMix64 rng(seed);
  Vec v(prob.mass.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = rng.uniform(-1.0, 1.0);
  deflate(prob, v);
  const double nrm = b_norm(prob, v);
  if (!(nrm > 0.0)) throw DegenerateFieldError("degenerate start vector");
  v /= nrm;
  return v;
}

double rayleigh(const Problem& prob, const Vec& v) {
  const double num = v.dot(prob.stiffness * v);
  const double den = v.dot(prob.mass.cwiseProduct(v));
  return num / den;
}

double residual_norm(const Problem& prob, const Vec& v, double lambda) {
  const Vec bv = prob.mass.cwiseProduct(v);
  return (prob.stiffness * v - lambda * bv).norm() / bv.norm();
}

SpectralResult package(const DiscreteManifold& mesh, const Problem& prob,
                       const Vec& v, double lambda, int iterations,
                       double residual, std::uint64_t seed) {
  SpectralResult result;
  result.lambda1 = lambda;
  result.iterations = iterations;
  result.residual = residual;
  result.seed = seed;
  result.eigenfield.assign(mesh.vertex_count(), 0.0);
  Vec u = v / b_norm(prob, v);
  // Fix the overall sign so runs are reproducible bit for bit.
  double lead = 0.0;
  for (Eigen::Index i = 0; i < u.size() && lead == 0.0; ++i) lead = u[i];
  if (lead < 0.0) u = -u;
  for (std::size_t a = 0; a < prob.active.size(); ++a)
    result.eigenfield[prob.active[a]] = u[static_cast<Eigen::Index>(a)];
  return result;
}

// Characteristic eigenvalue scale for shifts.
double spectral_scale(const Problem& prob) {
  const double tk = prob.stiffness.diagonal().sum();
  return std::max(tk / prob.total_mass, 1e-300);
}

SpectralResult solve_direct(const DiscreteManifold& mesh, const Problem& prob,
                            double tol, std::uint64_t seed) {
  const double sigma = 1e-6 * spectral_scale(prob);
  SpMat shifted = prob.stiffness;
  for (int a = 0; a < shifted.rows(); ++a)
    shifted.coeffRef(a, a) += sigma * prob.mass[a];
  Eigen::SimplicialLDLT<SpMat> solver;
  solver.compute(shifted);
  if (solver.info() != Eigen::Success)
    throw Error("sparse factorization failed");

  Vec v = seeded_start(prob, seed);
  double lambda = rayleigh(prob, v);
  double res = residual_norm(prob, v, lambda);
  for (int it = 1; it <= kSpectralIterationCap; ++it) {
    Vec w = solver.solve(prob.mass.cwiseProduct(v));
    deflate(prob, w);
    const double nrm = b_norm(prob, w);
    if (!(nrm > 0.0)) throw DegenerateFieldError("iteration collapsed");
    w /= nrm;
    lambda = rayleigh(prob, w);
    res = residual_norm(prob, w, lambda);
    v = w;
    if (res <= tol)
      return package(mesh, prob, v, lambda, it, res, seed);
  }
  throw ConvergenceError(
      "eigenvalue iteration did not reach tolerance",
      package(mesh, prob, v, lambda, kSpectralIterationCap, res, seed));
}

// Block-size-1 LOBPCG with an incomplete-Cholesky preconditioner.
SpectralResult solve_lobpcg(const DiscreteManifold& mesh, const Problem& prob,
                            double tol, std::uint64_t seed) {
  const double sigma = 1e-3 * spectral_scale(prob);
  SpMat shifted = prob.stiffness;
  for (int a = 0; a < shifted.rows(); ++a)
    shifted.coeffRef(a, a) += sigma * prob.mass[a];
  Eigen::IncompleteCholesky<double> precond;
  precond.compute(shifted);
  const bool have_precond = precond.info() == Eigen::Success;

  Vec x = seeded_start(prob, seed);
  Vec p = Vec::Zero(x.size());
  bool have_p = false;
  double lambda = rayleigh(prob, x);
  double res = residual_norm(prob, x, lambda);
  for (int it = 1; it <= kSpectralIterationCap; ++it) {
    const Vec r = prob.stiffness * x - lambda * prob.mass.cwiseProduct(x);
    Vec w = have_precond ? precond.solve(r).eval() : r;
    deflate(prob, w);

    // B-orthonormal basis of span{x, w, p} by modified Gram-Schmidt,
    // dropping near-dependent directions.
    std::vector<Vec> basis;
    auto push = [&](Vec cand) {
      double nrm = b_norm(prob, cand);
      if (!(nrm > 0.0)) return;
      cand /= nrm;
      for (const Vec& b : basis)
        cand -= b * cand.dot(prob.mass.cwiseProduct(b));
      nrm = b_norm(prob, cand);
      if (nrm > 1e-8) basis.push_back(cand / nrm);
    };
    push(x);
    push(w);
    if (have_p) push(p);
    const int k = static_cast<int>(basis.size());
    if (k == 1) break;  // stagnated

    Eigen::MatrixXd small(k, k);
    std::vector<Vec> kb(k);
    for (int i = 0; i < k; ++i) kb[i] = prob.stiffness * basis[i];
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) small(i, j) = basis[i].dot(kb[j]);
    small = 0.5 * (small + small.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(small);
    const Vec c = es.eigenvectors().col(0);

    Vec x_next = Vec::Zero(x.size());
    for (int i = 0; i < k; ++i) x_next += c[i] * basis[i];
    // Conjugate direction: the part of the update not along the old x.
    Vec p_next = x_next - c[0] * basis[0];
    const double pn = b_norm(prob, p_next);
    have_p = pn > 1e-12;
    if (have_p) p = p_next / pn;

    deflate(prob, x_next);
    x = x_next / b_norm(prob, x_next);
    lambda = rayleigh(prob, x);
    res = residual_norm(prob, x, lambda);
    if (res <= tol) return package(mesh, prob, x, lambda, it, res, seed);
  }
  if (res <= tol) return package(mesh, prob, x, lambda, 1, res, seed);
  throw ConvergenceError(
      "preconditioned eigenvalue descent did not reach tolerance",
      package(mesh, prob, x, lambda, kSpectralIterationCap, res, seed));
}

SpectralResult solve(const DiscreteManifold& mesh, const Problem& prob,
                     double tol, std::uint64_t seed) {
  if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
  if (static_cast<int>(prob.active.size()) <= kDirectSolveLimit)
    return solve_direct(mesh, prob, tol, seed);
  return solve_lobpcg(mesh, prob, tol, seed);
}

}  // namespace

SpectralResult lambda1_closed(const DiscreteManifold& manifold, double tol,
                              std::uint64_t seed) {
  if (manifold.boundary_count() > 0)
    throw MeshError("closed solve on a mesh with boundary flags");
  if (!is_connected(manifold))
    throw TopologyError("closed solve requires a connected mesh");
  return solve(manifold, assemble(manifold, false), tol, seed);
}

SpectralResult lambda1_dirichlet(const DiscreteManifold& manifold, double tol,
                                 std::uint64_t seed) {
  const int nb = manifold.boundary_count();
  if (nb == 0)
    throw DomainError("Dirichlet solve requires boundary vertices");
  if (nb == manifold.vertex_count())
    throw DomainError("Dirichlet solve requires interior vertices");
  std::vector<std::uint8_t> interior(manifold.boundary.size());
  for (std::size_t v = 0; v < interior.size(); ++v)
    interior[v] = manifold.boundary[v] ? 0 : 1;
  if (!is_connected(manifold, &interior))
    throw TopologyError("Dirichlet interior is disconnected");
  return solve(manifold, assemble(manifold, true), tol, seed);
}

double rayleigh_quotient(const DiscreteManifold& manifold,
                         const ScalarField& field, bool dirichlet) {
  if (field.size() != manifold.measures.size())
    throw ShapeError("field length must match vertex count");
  ScalarField projected = field;
  double scale = 0.0;
  for (double f : field) scale = std::max(scale, std::abs(f));
  if (dirichlet) {
    for (std::size_t v = 0; v < projected.size(); ++v)
      if (manifold.boundary[v]) projected[v] = 0.0;
  } else {
    const double total = manifold.total_measure();
    double mean = 0.0;
    for (std::size_t v = 0; v < projected.size(); ++v)
      mean += manifold.measures[v] * projected[v];
    mean /= total;
    for (double& f : projected) f -= mean;
  }
  const double norm2 = integrate(manifold, projected, 2.0);
  if (!(norm2 > scale * scale * 1e-24))
    throw DegenerateFieldError("field projects to zero under the constraint");
  return dirichlet_energy(manifold, projected) / norm2;
}

}  // namespace symmlab
