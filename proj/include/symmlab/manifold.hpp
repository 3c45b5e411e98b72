#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "symmlab/model_space.hpp"

namespace symmlab {

using ScalarField = std::vector<double>;

struct Edge {
  int i;
  int j;
  double weight;
};

struct BaseEdge {
  int s;
  int t;
  double weight;
};

/// Bookkeeping for meshes assembled as base x fiber. Product vertex id is
/// base_id * fiber_vertex_count + fiber_id.
struct ProductStructure {
  int base_vertex_count = 0;
  int fiber_vertex_count = 0;
  int fiber_dim = 0;
  std::vector<double> rho;            // warping factor per base vertex
  std::vector<double> base_measures;  // mu_B
  std::vector<double> fiber_measures; // mu_F (unwarped)
  std::vector<BaseEdge> base_edges;   // w_B

  int compose(int base_id, int fiber_id) const {
    return base_id * fiber_vertex_count + fiber_id;
  }
  std::pair<int, int> decompose(int vertex) const {
    return {vertex / fiber_vertex_count, vertex % fiber_vertex_count};
  }
};

/// Measured weighted graph standing in for a manifold or domain: vertex
/// measures carry the volume element, edge weights the Dirichlet energy,
/// boundary flags mark where Dirichlet conditions apply (masked at solve
/// time, never removed from the data structure).
struct DiscreteManifold {
  int dim = 0;
  std::vector<double> measures;
  std::vector<Edge> edges;
  std::vector<std::uint8_t> boundary;
  std::optional<ProductStructure> structure;

  int vertex_count() const { return static_cast<int>(measures.size()); }
  double total_measure() const;
  int boundary_count() const;
};

// Grid-aligned binary mask for planar domains. Cell (ix, iy) sits at
// coordinates (ix * spacing, iy * spacing).
struct PlanarMask {
  int nx = 0;
  int ny = 0;
  std::vector<std::uint8_t> cells;  // row-major, ny rows of nx

  bool at(int ix, int iy) const {
    return ix >= 0 && ix < nx && iy >= 0 && iy < ny &&
           cells[static_cast<std::size_t>(iy) * nx + ix] != 0;
  }
};

// Generators -----------------------------------------------------------

DiscreteManifold make_circle(double length, int n);

// Closed interval (0, length) with Dirichlet endpoints: n+1 vertices, the
// two ends flagged boundary.
DiscreteManifold make_interval(double length, int n);

DiscreteManifold make_icosphere(int subdivisions);

// Unit vectors of the icosphere vertices, same ordering as make_icosphere.
std::vector<std::array<double, 3>> icosphere_vertex_positions(int subdivisions);

DiscreteManifold make_planar_domain(const PlanarMask& mask, double spacing);

// Disc/annulus masks on an (nx x ny) grid centered mid-grid; a cell belongs
// to the mask when its center lies within spacing/2 of the target region
// (boundary collocation straddles the true curve).
PlanarMask disc_mask(double radius, double spacing);
PlanarMask annulus_mask(double r_inner, double r_outer, double spacing);

DiscreteManifold make_warped_product(const DiscreteManifold& base,
                                     const DiscreteManifold& fiber,
                                     const std::vector<double>& rho);

DiscreteManifold make_product(const DiscreteManifold& base,
                              const DiscreteManifold& fiber);

// 1-D radial discretization of a model space on [0, r_max]: bin-center
// vertices, measures A(r_{k+1}) - A(r_k), face-area edge weights. With
// dirichlet_outer an extra boundary vertex is appended at r = r_max.
DiscreteManifold make_radial_model(const ModelSpace& space, int n_bins,
                                   double r_max, bool dirichlet_outer = false);

// Quadratic forms ------------------------------------------------------

// Sum of mu_i * f_i^power (signed for integer power, |f_i|^power otherwise).
double integrate(const DiscreteManifold& manifold, const ScalarField& field,
                 double power = 1.0);

double dirichlet_energy(const DiscreteManifold& manifold,
                        const ScalarField& field);

// Mesh file I/O --------------------------------------------------------

void write_mesh(std::ostream& out, const DiscreteManifold& mesh);
void write_mesh_file(const std::string& path, const DiscreteManifold& mesh);
DiscreteManifold read_mesh(std::istream& in);
DiscreteManifold read_mesh_file(const std::string& path);

// Shortest round-trip decimal representation of a double.
std::string format_double(double x);

// True when the positive-weight edge graph is connected over the given
// vertex subset (empty subset selector = all vertices).
bool is_connected(const DiscreteManifold& mesh,
                  const std::vector<std::uint8_t>* active = nullptr);

}  // namespace symmlab
