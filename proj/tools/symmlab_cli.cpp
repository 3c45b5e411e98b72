#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "symmlab/comparisons.hpp"
#include "symmlab/errors.hpp"
#include "symmlab/functionals.hpp"
#include "symmlab/manifold.hpp"
#include "symmlab/model_space.hpp"
#include "symmlab/rearrangement.hpp"
#include "symmlab/spectrum.hpp"

namespace {

using nlohmann::json;
using namespace symmlab;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitSolver = 3;
constexpr int kExitAssertion = 4;

json load_config(const std::string& path) {
  if (path.empty()) return json::object();
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file: " + path);
  json cfg;
  in >> cfg;
  if (!cfg.is_object()) throw UsageError("config file must hold a JSON object");
  return cfg;
}

// Flags override config-file values: pull from the config only when the
// flag was not supplied on the command line.
template <typename T>
void config_default(const CLI::App& cmd, const json& cfg,
                    const std::string& flag, const std::string& key, T& var) {
  const CLI::Option* opt = cmd.get_option_no_throw(flag);
  if (opt != nullptr && opt->count() > 0) return;
  if (cfg.contains(key)) var = cfg.at(key).get<T>();
}

void write_text_artifact(const std::string& path, const std::string& body) {
  if (path.empty() || path == "-") {
    std::cout << body;
    return;
  }
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write output file: " + path);
  out << body;
}

std::vector<double> read_field_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read field file: " + path);
  std::vector<double> values;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    values.push_back(std::stod(line));
  }
  return values;
}

// rho spec: "const:<value>" or "file:<csv of one value per base vertex>".
std::vector<double> parse_rho(const std::string& spec, int base_n) {
  if (spec.rfind("const:", 0) == 0)
    return std::vector<double>(base_n, std::stod(spec.substr(6)));
  if (spec.rfind("file:", 0) == 0) {
    std::vector<double> rho = read_field_file(spec.substr(5));
    if (static_cast<int>(rho.size()) != base_n)
      throw UsageError("rho file length does not match base vertex count");
    return rho;
  }
  throw UsageError("rho spec must be const:<v> or file:<path>");
}

ModelSpace parse_target(const std::string& name, int dim, double volume) {
  if (name == "sphere") return ModelSpace::sphere_of_volume(dim, volume);
  if (name == "euclid") return ModelSpace::euclidean(dim);
  if (name == "hyperbolic") return ModelSpace::hyperbolic(dim);
  throw UsageError("unknown target: " + name);
}

struct MeshArgs {
  std::string gen, base_path, fiber_path, rho_spec = "const:1", out_path;
  int level = 3;
  int n = 128;
  double length = 6.283185307179586;
  double spacing = 0.02;
  double radius = 1.0;
  double r_inner = 0.3;
  double r_outer = 1.0;
};

int run_mesh(MeshArgs a, const CLI::App& cmd, const json& cfg) {
  config_default(cmd, cfg, "--gen", "gen", a.gen);
  config_default(cmd, cfg, "--level", "level", a.level);
  config_default(cmd, cfg, "--length", "length", a.length);
  config_default(cmd, cfg, "--n", "n", a.n);
  config_default(cmd, cfg, "--base", "base", a.base_path);
  config_default(cmd, cfg, "--fiber", "fiber", a.fiber_path);
  config_default(cmd, cfg, "--rho", "rho", a.rho_spec);
  config_default(cmd, cfg, "--spacing", "spacing", a.spacing);
  config_default(cmd, cfg, "--radius", "radius", a.radius);
  config_default(cmd, cfg, "--r-inner", "r_inner", a.r_inner);
  config_default(cmd, cfg, "--r-outer", "r_outer", a.r_outer);
  config_default(cmd, cfg, "--output", "output", a.out_path);

  DiscreteManifold mesh;
  if (a.gen == "icosphere") {
    mesh = make_icosphere(a.level);
  } else if (a.gen == "circle") {
    mesh = make_circle(a.length, a.n);
  } else if (a.gen == "interval") {
    mesh = make_interval(a.length, a.n);
  } else if (a.gen == "disc") {
    mesh = make_planar_domain(disc_mask(a.radius, a.spacing), a.spacing);
  } else if (a.gen == "annulus") {
    mesh = make_planar_domain(annulus_mask(a.r_inner, a.r_outer, a.spacing),
                              a.spacing);
  } else if (a.gen == "product") {
    if (a.base_path.empty() || a.fiber_path.empty())
      throw UsageError("product generator needs --base and --fiber");
    const DiscreteManifold base = read_mesh_file(a.base_path);
    const DiscreteManifold fiber = read_mesh_file(a.fiber_path);
    mesh = make_warped_product(base, fiber,
                               parse_rho(a.rho_spec, base.vertex_count()));
  } else {
    throw UsageError("unknown generator: " + a.gen);
  }

  if (a.out_path.empty()) a.out_path = a.gen + ".mesh";
  write_mesh_file(a.out_path, mesh);
  json summary = {{"command", "mesh"},
                  {"config", {{"gen", a.gen}, {"output", a.out_path}}},
                  {"vertices", mesh.vertex_count()},
                  {"edges", mesh.edges.size()},
                  {"boundary_vertices", mesh.boundary_count()},
                  {"total_measure", mesh.total_measure()}};
  std::cout << summary.dump(2) << "\n";
  return kExitOk;
}

struct EigArgs {
  std::string mesh_path, out_path;
  bool dirichlet = false;
  double tol = kDefaultSpectralTol;
  std::uint64_t seed = 1;
};

int run_eig(EigArgs a, const CLI::App& cmd, const json& cfg) {
  config_default(cmd, cfg, "--mesh", "mesh", a.mesh_path);
  config_default(cmd, cfg, "--dirichlet", "dirichlet", a.dirichlet);
  config_default(cmd, cfg, "--tol", "tol", a.tol);
  config_default(cmd, cfg, "--seed", "seed", a.seed);
  config_default(cmd, cfg, "--output", "output", a.out_path);
  if (a.mesh_path.empty()) throw UsageError("eig needs --mesh");

  const DiscreteManifold mesh = read_mesh_file(a.mesh_path);
  const SpectralResult result = a.dirichlet
                                    ? lambda1_dirichlet(mesh, a.tol, a.seed)
                                    : lambda1_closed(mesh, a.tol, a.seed);
  json out = {{"command", "eig"},
              {"schema_version", kReportSchemaVersion},
              {"config",
               {{"mesh", a.mesh_path},
                {"dirichlet", a.dirichlet},
                {"tol", a.tol},
                {"seed", a.seed}}},
              {"lambda1", result.lambda1},
              {"iterations", result.iterations},
              {"residual", result.residual}};
  write_text_artifact(a.out_path, out.dump(2) + "\n");
  return kExitOk;
}

struct RearrangeArgs {
  std::string mesh_path, field_path, target = "sphere", out_path;
  int bins = kDefaultProfileBins;
};

int run_rearrange(RearrangeArgs a, const CLI::App& cmd, const json& cfg) {
  config_default(cmd, cfg, "--mesh", "mesh", a.mesh_path);
  config_default(cmd, cfg, "--field", "field", a.field_path);
  config_default(cmd, cfg, "--target", "target", a.target);
  config_default(cmd, cfg, "--bins", "bins", a.bins);
  config_default(cmd, cfg, "--output", "output", a.out_path);
  if (a.mesh_path.empty() || a.field_path.empty())
    throw UsageError("rearrange needs --mesh and --field");

  const DiscreteManifold mesh = read_mesh_file(a.mesh_path);
  const ScalarField field = read_field_file(a.field_path);
  if (field.size() != mesh.measures.size())
    throw UsageError("field length does not match mesh vertex count");

  const ModelSpace space =
      parse_target(a.target, mesh.dim, mesh.total_measure());
  const RadialProfile profile = rearrange(mesh, field, space);
  const PolyaSzegoResult ps = polya_szego_check(mesh, field, space, a.bins);

  std::ostringstream body;
  body << "# config: "
       << json{{"mesh", a.mesh_path},
               {"field", a.field_path},
               {"target", a.target},
               {"bins", a.bins}}
              .dump()
       << "\n";
  write_profile_csv(body, profile);
  write_text_artifact(a.out_path.empty() ? "profile.csv" : a.out_path,
                      body.str());

  const double residual =
      std::abs(profile.total_measure() - mesh.total_measure());
  json summary = {{"command", "rearrange"},
                  {"measure_residual", residual},
                  {"energy_lhs", ps.lhs},
                  {"energy_rhs", ps.rhs},
                  {"factor", ps.factor}};
  std::cout << summary.dump(2) << "\n";
  return kExitOk;
}

struct CompareArgs {
  std::string theorem, preset = "tube", out_path, rho_spec = "const:0.5";
  int level = 3;
  int base_n = 64;
  int bins = 200;
  double base_len = 6.283185307179586;
  double spacing = 0.02;
  double slack = -1.0;
};

int run_compare(CompareArgs a, const CLI::App& cmd, const json& cfg) {
  config_default(cmd, cfg, "--theorem", "theorem", a.theorem);
  config_default(cmd, cfg, "--level", "level", a.level);
  config_default(cmd, cfg, "--base-len", "base_len", a.base_len);
  config_default(cmd, cfg, "--base-n", "base_n", a.base_n);
  config_default(cmd, cfg, "--preset", "preset", a.preset);
  config_default(cmd, cfg, "--spacing", "spacing", a.spacing);
  config_default(cmd, cfg, "--slack", "slack", a.slack);
  config_default(cmd, cfg, "--rho", "rho", a.rho_spec);
  config_default(cmd, cfg, "--bins", "bins", a.bins);
  config_default(cmd, cfg, "--output", "output", a.out_path);

  const double ls = a.slack >= 0.0 ? a.slack : kLambdaSlack;
  ComparisonReport report;
  if (a.theorem == "lichnerowicz") {
    report = check_lichnerowicz(a.level, ls);
  } else if (a.theorem == "product") {
    report = check_product_formula(a.base_len, a.level, a.base_n, ls);
  } else if (a.theorem == "warped-lambda1") {
    report = check_warped_lambda1(a.base_len, a.base_n,
                                  parse_rho(a.rho_spec, a.base_n), a.level,
                                  ls);
  } else if (a.theorem == "faber-krahn") {
    FiberedDomainSpec spec;
    if (a.preset == "tube")
      spec = tube_preset(a.spacing, a.base_n);
    else if (a.preset == "holed-tube")
      spec = holed_tube_preset(a.spacing, a.base_n);
    else
      throw UsageError("unknown faber-krahn preset: " + a.preset);
    report = check_fiberwise_faber_krahn(spec, a.bins, ls);
  } else if (a.theorem == "spherical-domain") {
    SphericalDomainSpec spec;
    if (a.preset == "cap")
      spec = cap_preset(a.base_n, a.level);
    else if (a.preset == "half-sphere")
      spec = half_sphere_preset(a.base_n, a.level);
    else
      throw UsageError("unknown spherical-domain preset: " + a.preset);
    report = check_spherical_domain(spec, a.bins,
                                    a.slack >= 0.0 ? a.slack : 0.05);
  } else if (a.theorem == "yamabe-warped") {
    report = check_yamabe_warped(a.base_len, a.base_n,
                                 parse_rho(a.rho_spec, a.base_n), a.level,
                                 a.slack >= 0.0 ? a.slack : kYamabeSlack);
  } else if (a.theorem == "reference") {
    report = check_reference_table();
  } else {
    throw UsageError("unknown theorem id: " + a.theorem);
  }

  json out = report.to_json();
  out["config"] = {{"theorem", a.theorem}, {"level", a.level},
                   {"base_len", a.base_len}, {"base_n", a.base_n},
                   {"preset", a.preset},    {"spacing", a.spacing},
                   {"slack", a.slack},      {"rho", a.rho_spec},
                   {"bins", a.bins}};
  write_text_artifact(a.out_path, out.dump(2) + "\n");
  return report.pass ? kExitOk : kExitAssertion;
}

struct SuiteArgs {
  SuiteOptions opts;
  std::string out_prefix = "suite";
};

int run_suite(SuiteArgs a, const CLI::App& cmd, const json& cfg) {
  config_default(cmd, cfg, "--level", "level", a.opts.level);
  config_default(cmd, cfg, "--slack", "slack", a.opts.slack);
  config_default(cmd, cfg, "--spacing", "spacing", a.opts.spacing);
  config_default(cmd, cfg, "--quick", "quick", a.opts.quick);
  config_default(cmd, cfg, "--experimental", "experimental",
                 a.opts.experimental);
  config_default(cmd, cfg, "--output", "output", a.out_prefix);

  const std::vector<ComparisonReport> reports = run_acceptance_suite(a.opts);
  const json config = {{"level", a.opts.level},
                       {"slack", a.opts.slack},
                       {"spacing", a.opts.spacing},
                       {"quick", a.opts.quick},
                       {"experimental", a.opts.experimental}};

  std::ostringstream csv;
  csv << "# config: " << config.dump() << "\n";
  write_suite_csv(csv, reports);
  write_text_artifact(a.out_prefix + ".csv", csv.str());

  bool all_pass = true;
  for (const auto& report : reports) {
    json out = report.to_json();
    out["config"] = config;
    write_text_artifact(a.out_prefix + "-" + report.theorem_id + ".json",
                        out.dump(2) + "\n");
    all_pass = all_pass && report.pass;
    std::cout << (report.pass ? "PASS " : "FAIL ") << report.theorem_id
              << "  lhs=" << format_double(report.lhs)
              << "  rhs=" << format_double(report.rhs)
              << "  margin=" << format_double(report.margin) << "\n";
  }
  return all_pass ? kExitOk : kExitAssertion;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spectral-geometry laboratory"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "JSON config file (flags override)");

  MeshArgs mesh_args;
  CLI::App* mesh = app.add_subcommand("mesh", "generate a mesh file");
  mesh->add_option("--gen", mesh_args.gen,
                   "icosphere|circle|interval|disc|annulus|product");
  mesh->add_option("--level", mesh_args.level);
  mesh->add_option("--length", mesh_args.length);
  mesh->add_option("--n", mesh_args.n);
  mesh->add_option("--base", mesh_args.base_path);
  mesh->add_option("--fiber", mesh_args.fiber_path);
  mesh->add_option("--rho", mesh_args.rho_spec, "const:<v> or file:<path>");
  mesh->add_option("--spacing", mesh_args.spacing);
  mesh->add_option("--radius", mesh_args.radius);
  mesh->add_option("--r-inner", mesh_args.r_inner);
  mesh->add_option("--r-outer", mesh_args.r_outer);
  mesh->add_option("-o,--output", mesh_args.out_path);

  EigArgs eig_args;
  CLI::App* eig = app.add_subcommand("eig", "first eigenvalue of a mesh");
  eig->add_option("--mesh", eig_args.mesh_path);
  eig->add_flag("--dirichlet", eig_args.dirichlet);
  eig->add_option("--tol", eig_args.tol);
  eig->add_option("--seed", eig_args.seed);
  eig->add_option("-o,--output", eig_args.out_path);

  RearrangeArgs rearr_args;
  CLI::App* rearr = app.add_subcommand("rearrange", "rearrangement profile");
  rearr->add_option("--mesh", rearr_args.mesh_path);
  rearr->add_option("--field", rearr_args.field_path);
  rearr->add_option("--target", rearr_args.target, "sphere|euclid|hyperbolic");
  rearr->add_option("--bins", rearr_args.bins);
  rearr->add_option("-o,--output", rearr_args.out_path);

  CompareArgs compare_args;
  CLI::App* compare = app.add_subcommand("compare", "single theorem check");
  compare->add_option("--theorem", compare_args.theorem,
                      "lichnerowicz|product|warped-lambda1|faber-krahn|"
                      "spherical-domain|yamabe-warped|reference");
  compare->add_option("--level", compare_args.level);
  compare->add_option("--base-len", compare_args.base_len);
  compare->add_option("--base-n", compare_args.base_n);
  compare->add_option("--preset", compare_args.preset);
  compare->add_option("--spacing", compare_args.spacing);
  compare->add_option("--slack", compare_args.slack);
  compare->add_option("--rho", compare_args.rho_spec);
  compare->add_option("--bins", compare_args.bins);
  compare->add_option("-o,--output", compare_args.out_path);

  SuiteArgs suite_args;
  CLI::App* suite = app.add_subcommand("suite", "full acceptance suite");
  suite->add_option("--level", suite_args.opts.level);
  suite->add_option("--slack", suite_args.opts.slack);
  suite->add_option("--spacing", suite_args.opts.spacing);
  suite->add_flag("--quick", suite_args.opts.quick);
  suite->add_flag("--experimental", suite_args.opts.experimental);
  suite->add_option("-o,--output", suite_args.out_prefix);

  try {
    app.parse(argc, argv);
    const json cfg = load_config(config_path);
    if (mesh->parsed()) return run_mesh(mesh_args, *mesh, cfg);
    if (eig->parsed()) return run_eig(eig_args, *eig, cfg);
    if (rearr->parsed()) return run_rearrange(rearr_args, *rearr, cfg);
    if (compare->parsed()) return run_compare(compare_args, *compare, cfg);
    if (suite->parsed()) return run_suite(suite_args, *suite, cfg);
    return kExitUsage;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ShapeError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DomainError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const MeshError& e) {
    std::cerr << "mesh error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ConvergenceError& e) {
    std::cerr << "solver error: " << e.what() << " (best lambda1 "
              << format_double(e.best.lambda1) << ")\n";
    return kExitSolver;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSolver;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
