#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "symmlab/comparisons.hpp"
#include "symmlab/functionals.hpp"
#include "symmlab/manifold.hpp"
#include "symmlab/model_space.hpp"
#include "symmlab/rearrangement.hpp"
#include "symmlab/spectrum.hpp"

namespace py = pybind11;
using namespace symmlab;

PYBIND11_MODULE(_symmlab, m) {
  m.doc() = "spectral-geometry laboratory core";

  py::enum_<ModelKind>(m, "ModelKind")
      .value("SphereOfVolume", ModelKind::SphereOfVolume)
      .value("Euclidean", ModelKind::Euclidean)
      .value("Hyperbolic", ModelKind::Hyperbolic);

  py::class_<ModelSpace>(m, "ModelSpace")
      .def_static("sphere_of_volume", &ModelSpace::sphere_of_volume)
      .def_static("euclidean", &ModelSpace::euclidean)
      .def_static("hyperbolic", &ModelSpace::hyperbolic)
      .def_readonly("kind", &ModelSpace::kind)
      .def_readonly("dim", &ModelSpace::dim)
      .def_readonly("volume", &ModelSpace::volume)
      .def("max_radius", &ModelSpace::max_radius);

  m.def("unit_sphere_volume", &unit_sphere_volume);
  m.def("ball_volume", &ball_volume);
  m.def("ball_volume_inverse", &ball_volume_inverse);
  m.def("boundary_area", &boundary_area);
  m.def("isoperimetric_profile", &isoperimetric_profile);

  py::class_<Edge>(m, "Edge")
      .def_readonly("i", &Edge::i)
      .def_readonly("j", &Edge::j)
      .def_readonly("weight", &Edge::weight);

  py::class_<DiscreteManifold>(m, "DiscreteManifold")
      .def_readonly("dim", &DiscreteManifold::dim)
      .def_readonly("measures", &DiscreteManifold::measures)
      .def_readonly("edges", &DiscreteManifold::edges)
      .def_readonly("boundary", &DiscreteManifold::boundary)
      .def("vertex_count", &DiscreteManifold::vertex_count)
      .def("total_measure", &DiscreteManifold::total_measure)
      .def("boundary_count", &DiscreteManifold::boundary_count);

  m.def("make_circle", &make_circle);
  m.def("make_interval", &make_interval);
  m.def("make_icosphere", &make_icosphere);
  m.def("icosphere_vertex_positions", &icosphere_vertex_positions);
  m.def("make_product", &make_product);
  m.def("make_warped_product", &make_warped_product);
  m.def("make_radial_model", &make_radial_model, py::arg("space"),
        py::arg("n_bins"), py::arg("r_max"), py::arg("dirichlet_outer") = false);
  m.def("integrate", &integrate, py::arg("manifold"), py::arg("field"),
        py::arg("power") = 1.0);
  m.def("dirichlet_energy", &dirichlet_energy);
  m.def("write_mesh_file", &write_mesh_file);
  m.def("read_mesh_file", &read_mesh_file);

  py::class_<SpectralResult>(m, "SpectralResult")
      .def_readonly("lambda1", &SpectralResult::lambda1)
      .def_readonly("eigenfield", &SpectralResult::eigenfield)
      .def_readonly("iterations", &SpectralResult::iterations)
      .def_readonly("residual", &SpectralResult::residual);

  m.def("lambda1_closed", &lambda1_closed, py::arg("manifold"),
        py::arg("tol") = kDefaultSpectralTol, py::arg("seed") = 1);
  m.def("lambda1_dirichlet", &lambda1_dirichlet, py::arg("manifold"),
        py::arg("tol") = kDefaultSpectralTol, py::arg("seed") = 1);
  m.def("rayleigh_quotient", &rayleigh_quotient);

  py::class_<ProfileBreakpoint>(m, "ProfileBreakpoint")
      .def_readonly("cumulative", &ProfileBreakpoint::cumulative)
      .def_readonly("value", &ProfileBreakpoint::value);

  py::class_<RadialProfile>(m, "RadialProfile")
      .def_readonly("breakpoints", &RadialProfile::breakpoints)
      .def("total_measure", &RadialProfile::total_measure)
      .def("value_at_measure", &RadialProfile::value_at_measure)
      .def("support_radius", &RadialProfile::support_radius);

  py::class_<PolyaSzegoResult>(m, "PolyaSzegoResult")
      .def_readonly("lhs", &PolyaSzegoResult::lhs)
      .def_readonly("rhs", &PolyaSzegoResult::rhs)
      .def_readonly("factor", &PolyaSzegoResult::factor);

  m.def("rearrange", &rearrange);
  m.def("profile_energy", &profile_energy, py::arg("profile"),
        py::arg("n_bins") = kDefaultProfileBins);
  m.def("polya_szego_check", &polya_szego_check, py::arg("manifold"),
        py::arg("field"), py::arg("space"),
        py::arg("n_bins") = kDefaultProfileBins);

  m.def("yamabe_functional", &yamabe_functional);
  m.def("warped_scalar_curvature", &warped_scalar_curvature);

  py::class_<ComparisonReport>(m, "ComparisonReport")
      .def_readonly("theorem_id", &ComparisonReport::theorem_id)
      .def_readonly("lhs", &ComparisonReport::lhs)
      .def_readonly("rhs", &ComparisonReport::rhs)
      .def_readonly("margin", &ComparisonReport::margin)
      .def_readonly("pass_", &ComparisonReport::pass)
      .def_readonly("note", &ComparisonReport::note)
      .def("to_json_str",
           [](const ComparisonReport& r) { return r.to_json().dump(2); });

  m.def("check_lichnerowicz", &check_lichnerowicz, py::arg("mesh_level"),
        py::arg("slack") = kLambdaSlack);
  m.def("check_product_formula", &check_product_formula, py::arg("base_len"),
        py::arg("mesh_level"), py::arg("base_n") = 128,
        py::arg("slack") = kLambdaSlack);
  m.def("check_dirichlet_disc", &check_dirichlet_disc,
        py::arg("spacing") = 0.02, py::arg("slack") = 0.01);
  m.def("check_reference_table", &check_reference_table);
}
