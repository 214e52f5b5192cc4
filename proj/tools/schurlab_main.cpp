// schurlab: certify Schur stability of real matrices, analyze linear maps on
// matrix space, and run seeded preserver falsification experiments.
//
// Output contract: one JSON report on stdout, human-readable summary lines on
// stderr.  Exit codes: 0 completed (counterexamples and discrepant example
// recomputations are results, not errors), 1 usage/parse error, 2 numerical
// failure.

#include <chrono>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "schurlab/fixtures.hpp"
#include "schurlab/io.hpp"
#include "schurlab/kron.hpp"
#include "schurlab/preserver.hpp"
#include "schurlab/solve.hpp"

namespace {

using schurlab::json;

json tolerances_to_json(const schurlab::Tolerances& tol) {
  return json{{"residual_tolerance", tol.residual_tolerance},
              {"symmetry_tolerance", tol.symmetry_tolerance},
              {"solve_tolerance", tol.solve_tolerance},
              {"jacobi_tolerance", tol.jacobi_tolerance},
              {"stein_tolerance", tol.stein_tolerance},
              {"sdlcp_tolerance", tol.sdlcp_tolerance},
              {"marginal_band", tol.marginal_band},
              {"aloid_tolerance", tol.aloid_tolerance},
              {"separation", tol.separation},
              {"condition_limit", tol.condition_limit},
              {"analysis_limit", tol.analysis_limit}};
}

json fixture_to_json(const schurlab::FixtureResult& f) {
  json claims = json::array();
  for (const auto& c : f.claims) {
    json entry{{"quantity", c.quantity}, {"status", c.status}};
    if (c.printed) entry["printed"] = *c.printed;
    if (c.recomputed) entry["recomputed"] = *c.recomputed;
    if (c.printed) entry["tolerance"] = c.tolerance;
    if (!c.note.empty()) entry["note"] = c.note;
    claims.push_back(std::move(entry));
  }
  return json{{"id", f.id},
              {"description", f.description},
              {"status", f.status},
              {"claims", std::move(claims)},
              {"notes", f.notes}};
}

struct CommandOutput {
  json results;
  json config;
};

struct MapOptions {
  std::string spec_path;
  std::string action;
  std::string matrix_path;
  std::size_t trials = 1000;
  std::optional<std::uint64_t> seed;
  std::string sample_class;  // empty = pick a default for the subspace
  std::string band = "0.1,0.9";
  bool symmetric = false;
};

std::pair<double, double> parse_band(const std::string& band) {
  const auto comma = band.find(',');
  if (comma == std::string::npos) {
    throw schurlab::parse_error("--band expects 'lo,hi'");
  }
  try {
    return {std::stod(band.substr(0, comma)), std::stod(band.substr(comma + 1))};
  } catch (const std::exception&) {
    throw schurlab::parse_error("--band expects 'lo,hi' with numeric bounds");
  }
}

schurlab::SampleClass parse_class(const std::string& name) {
  if (name == "general") return schurlab::SampleClass::general;
  if (name == "symmetric") return schurlab::SampleClass::symmetric;
  if (name == "normaloid") return schurlab::SampleClass::normaloid;
  if (name == "nilpotent") return schurlab::SampleClass::nilpotent;
  throw schurlab::parse_error("unknown sample class '" + name + "'");
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& seed) {
  if (seed) return *seed;
  std::random_device device;
  return (static_cast<std::uint64_t>(device()) << 32) ^ device();
}

CommandOutput run_check(const std::string& matrix_path, bool stein_requested,
                        const std::string& stein_r_path, bool classify,
                        const schurlab::Tolerances& tol) {
  const schurlab::Matrix a = schurlab::load_matrix_file(matrix_path);
  schurlab::require_square(a, "check");
  schurlab::StabilityReport report = schurlab::is_schur_stable(a, tol);
  if (a.rows() == 2) report.two_by_two = schurlab::schur_2x2(a);
  if (stein_requested) {
    const schurlab::Matrix r = stein_r_path.empty()
                                   ? schurlab::Matrix::identity(a.rows())
                                   : schurlab::load_matrix_file(stein_r_path);
    report.stein = schurlab::solve_stein(a, r, tol);
  }
  if (classify) report.aloid = schurlab::classify_aloid(a, tol);

  std::cerr << "verdict: " << schurlab::to_string(report.verdict)
            << " (rho = " << report.spectral_radius << ")\n";
  if (report.stein) {
    std::cerr << "stein: residual " << report.stein->residual << ", min eigenvalue "
              << report.stein->min_eigenvalue << "\n";
  }

  CommandOutput out;
  out.results = json{{"matrix", schurlab::matrix_to_json(a)}, {"report", to_json(report)}};
  out.config = json{{"tolerances", tolerances_to_json(tol)}};
  return out;
}

CommandOutput run_map(const MapOptions& opts, const schurlab::Tolerances& tol) {
  const schurlab::MapSpec spec = schurlab::load_map_spec_file(opts.spec_path);
  schurlab::MatrixMap map = schurlab::build(spec, tol);
  if (opts.symmetric || opts.action == "restrict-sym") {
    map = schurlab::restrict_symmetric(map, tol);
  }

  CommandOutput out;
  out.config = json{{"tolerances", tolerances_to_json(tol)}};

  const auto analyze = [&](const schurlab::MatrixMap& m) {
    const schurlab::Spectrum spectrum = schurlab::map_spectrum(m, tol);
    return json{{"n", m.n},
                {"subspace", schurlab::to_string(m.subspace)},
                {"rep_dimension", m.rep_dimension()},
                {"provenance", m.provenance},
                {"spectrum", to_json(spectrum)},
                {"spectral_radius", spectrum.spectral_radius},
                {"frobenius_operator_norm", schurlab::frobenius_operator_norm(m, tol)},
                {"normal", schurlab::map_is_normal(m, tol)}};
  };

  if (opts.action == "analyze" || opts.action == "restrict-sym") {
    out.results = analyze(map);
    std::cerr << "rho(L) = " << out.results["spectral_radius"].get<double>()
              << ", ||L||_F-induced = " << out.results["frobenius_operator_norm"].get<double>()
              << (out.results["normal"].get<bool>() ? ", normal" : ", not normal") << "\n";
    return out;
  }

  if (opts.action == "apply") {
    if (opts.matrix_path.empty()) {
      throw schurlab::parse_error("map apply needs a matrix file");
    }
    const schurlab::Matrix x = schurlab::load_matrix_file(opts.matrix_path);
    const schurlab::Matrix image = schurlab::apply(map, x, tol);
    out.results = json{{"input", schurlab::matrix_to_json(x)},
                       {"image", schurlab::matrix_to_json(image)},
                       {"rho_input", schurlab::spectral_radius(x, tol)},
                       {"rho_image", schurlab::spectral_radius(image, tol)}};
    std::cerr << "rho(A) = " << out.results["rho_input"].get<double>()
              << " -> rho(L(A)) = " << out.results["rho_image"].get<double>() << "\n";
    return out;
  }

  // Randomized actions share the sampling configuration.
  schurlab::SampleConfig cfg;
  cfg.trials = opts.trials;
  cfg.seed = resolve_seed(opts.seed);
  cfg.n = map.n;
  const auto [lo, hi] = parse_band(opts.band);
  cfg.band_lo = lo;
  cfg.band_hi = hi;
  if (!opts.sample_class.empty()) {
    cfg.klass = parse_class(opts.sample_class);
  } else {
    cfg.klass = map.subspace == schurlab::Subspace::symmetric ? schurlab::SampleClass::symmetric
                                                              : schurlab::SampleClass::general;
  }
  out.config["seed"] = cfg.seed;
  out.config["trials"] = cfg.trials;
  out.config["class"] = schurlab::to_string(cfg.klass);
  out.config["band"] = json::array({cfg.band_lo, cfg.band_hi});

  if (opts.action == "test-into") {
    const schurlab::PreserverVerdict verdict = schurlab::test_into_preserver(map, cfg, tol);
    out.results = to_json(verdict);
    std::cerr << "into test: " << (verdict.counterexample ? "counterexample found" : "no counterexample")
              << " after " << verdict.trials_run << " trials\n";
    return out;
  }
  if (opts.action == "test-onto") {
    const schurlab::OntoVerdict verdict = schurlab::test_onto_preserver(map, cfg, tol);
    out.results = to_json(verdict);
    std::cerr << "onto test: " << (verdict.onto ? "onto" : "not onto")
              << (verdict.singular ? " (singular map)" : "") << "\n";
    return out;
  }
  if (opts.action == "test-rho") {
    const schurlab::RhoPreservationResult result = schurlab::test_rho_preservation(map, cfg, tol);
    out.results = to_json(result);
    std::cerr << "rho preservation: " << (result.pass ? "pass" : "fail")
              << " (max relative deviation " << result.max_relative_deviation << ")\n";
    return out;
  }
  throw schurlab::parse_error("unknown map action '" + opts.action + "'");
}

CommandOutput run_paper_examples_cmd(const schurlab::Tolerances& tol) {
  const std::vector<schurlab::FixtureResult> fixtures = schurlab::run_paper_examples(tol);
  json items = json::array();
  json summary = json::object();
  for (const auto& f : fixtures) {
    std::cerr << f.id << ": " << f.status << "\n";
    items.push_back(fixture_to_json(f));
    summary[f.status] = summary.value(f.status, 0) + 1;
  }
  CommandOutput out;
  out.results = json{{"fixtures", std::move(items)}, {"summary", std::move(summary)}};
  out.config = json{{"tolerances", tolerances_to_json(tol)}};
  return out;
}

CommandOutput run_basis(const std::string& space_name, std::size_t n,
                        const schurlab::Tolerances& tol) {
  schurlab::Subspace space;
  if (space_name == "full") {
    space = schurlab::Subspace::full;
  } else if (space_name == "symmetric") {
    space = schurlab::Subspace::symmetric;
  } else {
    throw schurlab::parse_error("basis space must be 'full' or 'symmetric'");
  }
  const schurlab::StableBasis basis = schurlab::stable_basis(space, n, tol);
  json elements = json::array();
  for (const auto& e : basis.elements) {
    elements.push_back(json{{"matrix", schurlab::matrix_to_json(e)},
                            {"spectral_radius", schurlab::spectral_radius(e, tol)}});
  }
  std::cerr << "basis of the " << space_name << " space, n = " << n << ": "
            << basis.elements.size() << " Schur stable elements, coordinate rank "
            << basis.coordinate_rank << "\n";
  CommandOutput out;
  out.results = json{{"space", space_name},
                     {"n", n},
                     {"elements", std::move(elements)},
                     {"rank", basis.coordinate_rank}};
  out.config = json{{"tolerances", tolerances_to_json(tol)}};
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Schur stability laboratory: stability certificates, matrix-space maps, "
               "and seeded preserver testing"};
  app.require_subcommand(1);

  // check
  std::string check_path;
  std::vector<std::string> stein_values;
  bool classify = false;
  double marginal_band_override = -1.0;
  CLI::App* check = app.add_subcommand("check", "certify Schur stability of a matrix file");
  check->add_option("matrix", check_path, "matrix file (JSON or plain text)")->required();
  CLI::Option* stein_opt = check->add_option("--stein", stein_values,
                                             "attach a Stein certificate; optional R file (default R = I)");
  stein_opt->expected(0, 1);
  check->add_flag("--classify", classify, "attach normaloid/spectraloid classification");
  check->add_option("--tol", marginal_band_override, "override the marginal verdict band");

  // map
  MapOptions map_opts;
  CLI::App* map_cmd = app.add_subcommand("map", "analyze or test a linear map on matrix space");
  map_cmd->add_option("spec", map_opts.spec_path, "map spec JSON file")->required();
  map_cmd->add_option("action", map_opts.action,
                      "analyze | apply | test-into | test-onto | test-rho | restrict-sym")
      ->required();
  map_cmd->add_option("matrix", map_opts.matrix_path, "matrix file (apply action)");
  map_cmd->add_option("--trials", map_opts.trials, "number of randomized trials");
  std::uint64_t seed_value = 0;
  CLI::Option* seed_opt = map_cmd->add_option("--seed", seed_value, "sampling seed");
  map_cmd->add_option("--class", map_opts.sample_class,
                      "sample class: general | symmetric | normaloid | nilpotent");
  map_cmd->add_option("--band", map_opts.band, "target spectral radius band 'lo,hi'");
  map_cmd->add_flag("--symmetric", map_opts.symmetric,
                    "restrict the map to the symmetric subspace first");

  // paper-examples
  app.add_subcommand("paper-examples", "recompute the built-in worked examples");

  // basis
  std::string basis_space;
  std::size_t basis_n = 0;
  CLI::App* basis_cmd = app.add_subcommand("basis", "emit a Schur stable basis");
  basis_cmd->add_option("space", basis_space, "full | symmetric")->required();
  basis_cmd->add_option("n", basis_n, "matrix dimension")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  schurlab::Tolerances tol;
  if (marginal_band_override > 0.0) tol.marginal_band = marginal_band_override;
  if (seed_opt->count() > 0) map_opts.seed = seed_value;

  json report;
  report["command"] = json::array();
  for (int i = 0; i < argc; ++i) report["command"].push_back(argv[i]);

  const auto started = std::chrono::steady_clock::now();
  try {
    CommandOutput out;
    if (check->parsed()) {
      out = run_check(check_path, stein_opt->count() > 0,
                      stein_values.empty() ? std::string() : stein_values.front(), classify, tol);
    } else if (map_cmd->parsed()) {
      out = run_map(map_opts, tol);
    } else if (app.get_subcommand("paper-examples")->parsed()) {
      out = run_paper_examples_cmd(tol);
    } else if (basis_cmd->parsed()) {
      out = run_basis(basis_space, basis_n, tol);
    }
    report["config"] = std::move(out.config);
    report["results"] = std::move(out.results);
  } catch (const schurlab::parse_error& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  } catch (const schurlab::numerical_error& err) {
    std::cerr << "numerical failure: " << err.what() << "\n";
    return 2;
  }
  const auto elapsed = std::chrono::steady_clock::now() - started;
  report["duration_ms"] =
      std::chrono::duration_cast<std::chrono::duration<double, std::milli>>(elapsed).count();

  std::cout << report.dump(2) << "\n";
  return 0;
}
