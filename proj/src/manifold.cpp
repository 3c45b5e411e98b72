#include "symmlab/manifold.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <deque>
#include <fstream>
#include <map>
#include <sstream>

#include "symmlab/errors.hpp"

namespace symmlab {

double DiscreteManifold::total_measure() const {
  double sum = 0.0;
  for (double m : measures) sum += m;
  return sum;
}

int DiscreteManifold::boundary_count() const {
  int n = 0;
  for (auto b : boundary) n += (b != 0);
  return n;
}

// ---------------------------------------------------------------------
// Generators

DiscreteManifold make_circle(double length, int n) {
  if (!(length > 0.0)) throw MeshError("circle length must be positive");
  if (n < 3) throw MeshError("circle needs at least 3 vertices");
  DiscreteManifold mesh;
  mesh.dim = 1;
  mesh.measures.assign(n, length / n);
  mesh.boundary.assign(n, 0);
  const double w = n / length;
  mesh.edges.reserve(n);
  for (int i = 0; i < n; ++i) mesh.edges.push_back({i, (i + 1) % n, w});
  return mesh;
}

DiscreteManifold make_interval(double length, int n) {
  if (!(length > 0.0)) throw MeshError("interval length must be positive");
  if (n < 2) throw MeshError("interval needs at least 2 segments");
  DiscreteManifold mesh;
  mesh.dim = 1;
  const double h = length / n;
  mesh.measures.assign(n + 1, h);
  mesh.measures.front() = 0.5 * h;
  mesh.measures.back() = 0.5 * h;
  mesh.boundary.assign(n + 1, 0);
  mesh.boundary.front() = 1;
  mesh.boundary.back() = 1;
  for (int i = 0; i < n; ++i) mesh.edges.push_back({i, i + 1, 1.0 / h});
  return mesh;
}

namespace {

using Vec3 = std::array<double, 3>;

Vec3 normalized(const Vec3& v) {
  const double n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
  return {v[0] / n, v[1] / n, v[2] / n};
}

double dot(const Vec3& a, const Vec3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
          a[0] * b[1] - a[1] * b[0]};
}

Vec3 sub(const Vec3& a, const Vec3& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}

double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

struct TriMesh {
  std::vector<Vec3> vertices;
  std::vector<std::array<int, 3>> faces;
};

TriMesh icosphere_trimesh(int subdivisions) {
  if (subdivisions < 0) throw MeshError("subdivision count must be >= 0");
  const double t = 0.5 * (1.0 + std::sqrt(5.0));
  TriMesh mesh;
  mesh.vertices = {
      {-1, t, 0}, {1, t, 0},   {-1, -t, 0}, {1, -t, 0},
      {0, -1, t}, {0, 1, t},   {0, -1, -t}, {0, 1, -t},
      {t, 0, -1}, {t, 0, 1},   {-t, 0, -1}, {-t, 0, 1},
  };
  for (auto& v : mesh.vertices) v = normalized(v);
  mesh.faces = {{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
                {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
                {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
                {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};
  for (int level = 0; level < subdivisions; ++level) {
    std::map<std::pair<int, int>, int> midpoint;
    auto mid = [&](int a, int b) {
      const auto key = std::minmax(a, b);
      auto it = midpoint.find(key);
      if (it != midpoint.end()) return it->second;
      const Vec3& pa = mesh.vertices[a];
      const Vec3& pb = mesh.vertices[b];
      mesh.vertices.push_back(normalized(
          {pa[0] + pb[0], pa[1] + pb[1], pa[2] + pb[2]}));
      const int idx = static_cast<int>(mesh.vertices.size()) - 1;
      midpoint.emplace(key, idx);
      return idx;
    };
    std::vector<std::array<int, 3>> next;
    next.reserve(mesh.faces.size() * 4);
    for (const auto& f : mesh.faces) {
      const int ab = mid(f[0], f[1]);
      const int bc = mid(f[1], f[2]);
      const int ca = mid(f[2], f[0]);
      next.push_back({f[0], ab, ca});
      next.push_back({f[1], bc, ab});
      next.push_back({f[2], ca, bc});
      next.push_back({ab, bc, ca});
    }
    mesh.faces = std::move(next);
  }
  return mesh;
}

// Spherical triangle area by the solid-angle formula; the radial
// projection of the whole mesh tiles the sphere, so measures sum to 4 pi.
double spherical_area(const Vec3& a, const Vec3& b, const Vec3& c) {
  const double num = std::abs(dot(a, cross(b, c)));
  const double den = 1.0 + dot(a, b) + dot(b, c) + dot(c, a);
  return 2.0 * std::atan2(num, den);
}

}  // namespace

std::vector<std::array<double, 3>> icosphere_vertex_positions(
    int subdivisions) {
  return icosphere_trimesh(subdivisions).vertices;
}

DiscreteManifold make_icosphere(int subdivisions) {
  const TriMesh tri = icosphere_trimesh(subdivisions);
  DiscreteManifold mesh;
  mesh.dim = 2;
  mesh.measures.assign(tri.vertices.size(), 0.0);
  mesh.boundary.assign(tri.vertices.size(), 0);
  std::map<std::pair<int, int>, double> weight;
  for (const auto& f : tri.faces) {
    const Vec3& p0 = tri.vertices[f[0]];
    const Vec3& p1 = tri.vertices[f[1]];
    const Vec3& p2 = tri.vertices[f[2]];
    const double area = spherical_area(p0, p1, p2) / 3.0;
    for (int corner : f) mesh.measures[corner] += area;
    // Cotangent weight of each edge from the angle at the opposite corner.
    const Vec3* p[3] = {&p0, &p1, &p2};
    for (int corner = 0; corner < 3; ++corner) {
      const Vec3 u = sub(*p[(corner + 1) % 3], *p[corner]);
      const Vec3 v = sub(*p[(corner + 2) % 3], *p[corner]);
      const double cot = dot(u, v) / norm(cross(u, v));
      const auto key = std::minmax(f[(corner + 1) % 3], f[(corner + 2) % 3]);
      weight[key] += 0.5 * cot;
    }
  }
  int clamped = 0;
  for (const auto& [key, w] : weight) {
    double wc = w;
    if (wc < 0.0) {
      wc = 0.0;
      ++clamped;
    }
    mesh.edges.push_back({key.first, key.second, wc});
  }
  if (clamped > 0)
    std::fprintf(stderr, "icosphere: clamped %d negative cotangent weights\n",
                 clamped);
  return mesh;
}

DiscreteManifold make_planar_domain(const PlanarMask& mask, double spacing) {
  if (!(spacing > 0.0)) throw MeshError("grid spacing must be positive");
  std::vector<int> id(static_cast<std::size_t>(mask.nx) * mask.ny, -1);
  DiscreteManifold mesh;
  mesh.dim = 2;
  for (int iy = 0; iy < mask.ny; ++iy)
    for (int ix = 0; ix < mask.nx; ++ix)
      if (mask.at(ix, iy)) {
        id[static_cast<std::size_t>(iy) * mask.nx + ix] =
            mesh.vertex_count();
        mesh.measures.push_back(spacing * spacing);
        const bool interior = mask.at(ix - 1, iy) && mask.at(ix + 1, iy) &&
                              mask.at(ix, iy - 1) && mask.at(ix, iy + 1);
        mesh.boundary.push_back(interior ? 0 : 1);
      }
  if (mesh.vertex_count() == 0) throw MeshError("empty planar mask");
  for (int iy = 0; iy < mask.ny; ++iy)
    for (int ix = 0; ix < mask.nx; ++ix) {
      if (!mask.at(ix, iy)) continue;
      const int a = id[static_cast<std::size_t>(iy) * mask.nx + ix];
      if (mask.at(ix + 1, iy))
        mesh.edges.push_back(
            {a, id[static_cast<std::size_t>(iy) * mask.nx + ix + 1], 1.0});
      if (mask.at(ix, iy + 1))
        mesh.edges.push_back(
            {a, id[(static_cast<std::size_t>(iy) + 1) * mask.nx + ix], 1.0});
    }
  return mesh;
}

PlanarMask annulus_mask(double r_inner, double r_outer, double spacing) {
  if (!(r_outer > 0.0) || r_inner < 0.0 || r_inner >= r_outer)
    throw MeshError("annulus radii must satisfy 0 <= r_inner < r_outer");
  const int half = static_cast<int>(std::ceil(r_outer / spacing)) + 2;
  PlanarMask mask;
  mask.nx = 2 * half + 1;
  mask.ny = mask.nx;
  mask.cells.assign(static_cast<std::size_t>(mask.nx) * mask.ny, 0);
  for (int iy = 0; iy < mask.ny; ++iy)
    for (int ix = 0; ix < mask.nx; ++ix) {
      const double x = (ix - half) * spacing;
      const double y = (iy - half) * spacing;
      const double d = std::hypot(x, y);
      const bool in = d <= r_outer + 0.5 * spacing &&
                      (r_inner == 0.0 || d >= r_inner - 0.5 * spacing);
      mask.cells[static_cast<std::size_t>(iy) * mask.nx + ix] = in ? 1 : 0;
    }
  return mask;
}

PlanarMask disc_mask(double radius, double spacing) {
  return annulus_mask(0.0, radius, spacing);
}

DiscreteManifold make_warped_product(const DiscreteManifold& base,
                                     const DiscreteManifold& fiber,
                                     const std::vector<double>& rho) {
  const int nb = base.vertex_count();
  const int nf = fiber.vertex_count();
  if (static_cast<int>(rho.size()) != nb)
    throw ShapeError("warping function length must match base vertex count");
  for (double r : rho)
    if (!(r > 0.0)) throw DomainError("warping function must be positive");
  if (base.boundary_count() > 0 || fiber.boundary_count() > 0)
    throw MeshError("warped products require closed factors");

  const int m = fiber.dim;
  DiscreteManifold mesh;
  mesh.dim = base.dim + fiber.dim;
  mesh.measures.resize(static_cast<std::size_t>(nb) * nf);
  mesh.boundary.assign(static_cast<std::size_t>(nb) * nf, 0);

  std::vector<double> rho_m(nb), rho_m2(nb);
  for (int s = 0; s < nb; ++s) {
    rho_m[s] = std::pow(rho[s], m);
    rho_m2[s] = std::pow(rho[s], m - 2);
  }

  ProductStructure ps;
  ps.base_vertex_count = nb;
  ps.fiber_vertex_count = nf;
  ps.fiber_dim = m;
  ps.rho = rho;
  ps.base_measures = base.measures;
  ps.fiber_measures = fiber.measures;
  for (const Edge& e : base.edges) ps.base_edges.push_back({e.i, e.j, e.weight});

  for (int s = 0; s < nb; ++s)
    for (int x = 0; x < nf; ++x)
      mesh.measures[ps.compose(s, x)] =
          base.measures[s] * rho_m[s] * fiber.measures[x];

  // Vertical edges: fiber energy density rho^{-2} against volume rho^m.
  for (const Edge& e : fiber.edges)
    for (int s = 0; s < nb; ++s)
      mesh.edges.push_back({ps.compose(s, e.i), ps.compose(s, e.j),
                            e.weight * base.measures[s] * rho_m2[s]});
  // Horizontal edges: base energy against the mean fiber volume factor.
  for (const Edge& e : base.edges)
    for (int x = 0; x < nf; ++x)
      mesh.edges.push_back({ps.compose(e.i, x), ps.compose(e.j, x),
                            e.weight * fiber.measures[x] *
                                0.5 * (rho_m[e.i] + rho_m[e.j])});

  mesh.structure = std::move(ps);
  return mesh;
}

DiscreteManifold make_product(const DiscreteManifold& base,
                              const DiscreteManifold& fiber) {
  return make_warped_product(base, fiber,
                             std::vector<double>(base.vertex_count(), 1.0));
}

DiscreteManifold make_radial_model(const ModelSpace& space, int n_bins,
                                   double r_max, bool dirichlet_outer) {
  if (n_bins < 2) throw MeshError("radial model needs at least 2 bins");
  if (!(r_max > 0.0)) throw DomainError("r_max must be positive");
  if (space.kind == ModelKind::SphereOfVolume &&
      r_max > space.max_radius() * (1.0 + 1e-12))
    throw DomainError("r_max exceeds the sphere diameter bound");

  DiscreteManifold mesh;
  mesh.dim = space.dim;
  const double dr = r_max / n_bins;
  std::vector<double> face_volume(n_bins + 1);
  for (int k = 0; k <= n_bins; ++k)
    face_volume[k] = ball_volume(space, std::min(k * dr, r_max));

  for (int k = 0; k < n_bins; ++k) {
    mesh.measures.push_back(face_volume[k + 1] - face_volume[k]);
    mesh.boundary.push_back(0);
  }
  for (int k = 0; k + 1 < n_bins; ++k)
    mesh.edges.push_back({k, k + 1, boundary_area(space, (k + 1) * dr) / dr});

  if (dirichlet_outer) {
    // Split the outer half-bin off to a boundary vertex at r = r_max so the
    // Dirichlet condition sits on the true outer face. Total measure stays
    // A(r_max) exactly.
    const double half_face = ball_volume(space, r_max - 0.5 * dr);
    const double outer_shell = face_volume[n_bins] - half_face;
    mesh.measures[n_bins - 1] -= outer_shell;
    if (!(mesh.measures[n_bins - 1] > 0.0))
      throw MeshError("outer bin collapsed; increase n_bins");
    mesh.measures.push_back(outer_shell);
    mesh.boundary.push_back(1);
    const double w =
        boundary_area(space, r_max * (1.0 - 1e-12)) / (0.5 * dr);
    mesh.edges.push_back({n_bins - 1, n_bins, w});
  }
  return mesh;
}

// ---------------------------------------------------------------------
// Quadratic forms

double integrate(const DiscreteManifold& manifold, const ScalarField& field,
                 double power) {
  if (field.size() != manifold.measures.size())
    throw ShapeError("field length must match vertex count");
  const bool integer_power =
      power == std::floor(power) && std::abs(power) < 64.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < field.size(); ++i) {
    const double f = field[i];
    const double v =
        integer_power ? std::pow(f, power) : std::pow(std::abs(f), power);
    sum += v * manifold.measures[i];
  }
  return sum;
}

double dirichlet_energy(const DiscreteManifold& manifold,
                        const ScalarField& field) {
  if (field.size() != manifold.measures.size())
    throw ShapeError("field length must match vertex count");
  double sum = 0.0;
  for (const Edge& e : manifold.edges) {
    const double d = field[e.i] - field[e.j];
    sum += e.weight * d * d;
  }
  return sum;
}

// ---------------------------------------------------------------------
// Mesh file I/O

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

void write_mesh(std::ostream& out, const DiscreteManifold& mesh) {
  out << "dim " << mesh.dim << " | vertices " << mesh.vertex_count()
      << " | edges " << mesh.edges.size() << "\n";
  for (int i = 0; i < mesh.vertex_count(); ++i)
    out << "v " << format_double(mesh.measures[i]) << ' '
        << int(mesh.boundary[i]) << "\n";
  for (const Edge& e : mesh.edges)
    out << "e " << e.i << ' ' << e.j << ' ' << format_double(e.weight) << "\n";
}

void write_mesh_file(const std::string& path, const DiscreteManifold& mesh) {
  std::ofstream out(path);
  if (!out) throw MeshError("cannot open mesh file for writing: " + path);
  write_mesh(out, mesh);
}

DiscreteManifold read_mesh(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw MeshError("empty mesh file");
  int dim = 0, n = 0;
  std::size_t e = 0;
  {
    std::istringstream hdr(line);
    std::string kw, bar1, bar2, kw2, kw3;
    if (!(hdr >> kw >> dim >> bar1 >> kw2 >> n >> bar2 >> kw3 >> e) ||
        kw != "dim" || kw2 != "vertices" || kw3 != "edges" || bar1 != "|" ||
        bar2 != "|")
      throw MeshError("malformed mesh header: " + line);
  }
  DiscreteManifold mesh;
  mesh.dim = dim;
  mesh.measures.reserve(n);
  mesh.boundary.reserve(n);
  mesh.edges.reserve(e);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag == "v") {
      double mu;
      int b;
      if (!(ls >> mu >> b) || !(mu > 0.0))
        throw MeshError("malformed vertex line: " + line);
      mesh.measures.push_back(mu);
      mesh.boundary.push_back(b ? 1 : 0);
    } else if (tag == "e") {
      Edge edge{};
      if (!(ls >> edge.i >> edge.j >> edge.weight) || edge.weight < 0.0)
        throw MeshError("malformed edge line: " + line);
      mesh.edges.push_back(edge);
    } else {
      throw MeshError("unknown mesh line tag: " + line);
    }
  }
  if (mesh.vertex_count() != n || mesh.edges.size() != e)
    throw MeshError("mesh header counts disagree with body");
  for (const Edge& edge : mesh.edges)
    if (edge.i < 0 || edge.i >= n || edge.j < 0 || edge.j >= n)
      throw MeshError("edge endpoint out of range");
  return mesh;
}

DiscreteManifold read_mesh_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MeshError("cannot open mesh file: " + path);
  return read_mesh(in);
}

bool is_connected(const DiscreteManifold& mesh,
                  const std::vector<std::uint8_t>* active) {
  const int n = mesh.vertex_count();
  if (n == 0) return false;
  auto is_active = [&](int v) { return active == nullptr || (*active)[v]; };
  std::vector<std::vector<int>> adj(n);
  for (std::size_t k = 0; k < mesh.edges.size(); ++k) {
    const Edge& e = mesh.edges[k];
    if (e.weight > 0.0 && is_active(e.i) && is_active(e.j)) {
      adj[e.i].push_back(e.j);
      adj[e.j].push_back(e.i);
    }
  }
  int start = -1, target = 0;
  for (int v = 0; v < n; ++v)
    if (is_active(v)) {
      if (start < 0) start = v;
      ++target;
    }
  if (start < 0) return false;
  std::vector<std::uint8_t> seen(n, 0);
  std::deque<int> queue{start};
  seen[start] = 1;
  int found = 1;
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    for (int w : adj[v])
      if (!seen[w]) {
        seen[w] = 1;
        ++found;
        queue.push_back(w);
      }
  }
  return found == target;
}

}  // namespace symmlab
