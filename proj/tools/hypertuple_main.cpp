// hypertuple: construct minimal hypercyclic matrix tuples and measure the
// density of their orbits. See README.md for the command reference.
#include <CLI11.hpp>
#include <iostream>

#include "hypertuple/runner.hpp"

using namespace hypertuple;

namespace {

std::vector<double> parse_csv_doubles(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
  return out;
}

std::vector<long long> parse_csv_ints(const std::string& csv) {
  std::vector<long long> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stoll(item));
  return out;
}

// --tol eq=1e-9,rank=1e-8,cluster=1e-6 (any subset)
Tolerance parse_tol(const std::string& spec, Tolerance tol) {
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw InvalidInput("--tol: expected key=value, got " + item);
    const std::string key = item.substr(0, eq);
    const double value = std::stod(item.substr(eq + 1));
    if (!(value > 0.0)) throw InvalidInput("--tol: " + key + " must be strictly positive");
    if (key == "eq") {
      tol.eq_tol = value;
    } else if (key == "rank") {
      tol.rank_tol = value;
    } else if (key == "cluster") {
      tol.cluster_tol = value;
    } else {
      throw InvalidInput("--tol: unknown key " + key);
    }
  }
  return tol;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"minimal hypercyclic tuples of matrices and orbit density experiments"};
  app.require_subcommand(1);
  app.fallthrough();

  ExperimentConfig config;
  std::string tol_spec, box_spec, checkpoints_spec, target_spec;

  app.add_option("--seed", config.seed, "RNG seed (deterministic default 0)");
  app.add_option("--tol", tol_spec, "tolerance overrides, e.g. eq=1e-9,rank=1e-8,cluster=1e-6");
  app.add_option("--json-out", config.json_out, "write the report JSON to a file");
  app.add_option("--csv-out", config.csv_out, "write orbit points CSV (orbit command)");
  app.add_option("--expect", config.expect,
                 "expected verdict/summary; exit status 1 on mismatch");

  auto* analyze = app.add_subcommand("analyze", "algebra closure, characters, commutant");
  analyze->add_option("tuple", config.tuple_path, "tuple JSON file")->required();

  auto* construct = app.add_subcommand("construct", "build a minimal hypercyclic tuple");
  construct->add_option("--field", config.field, "C or R")->required();
  construct->add_option("--dim", config.dim, "ambient dimension n")->required();
  construct->add_option("--algebra", config.algebra,
                        "gallery algebra (default: minimal gallery for the field)");
  construct->add_option("--param", config.gallery_param, "gallery parameter (n or m)");

  auto* minsize = app.add_subcommand("min-size", "minimal hypercyclic tuple size on K^n");
  minsize->add_option("--field", config.field, "C or R")->required();
  minsize->add_option("--dim", config.dim, "ambient dimension n")->required();

  auto* gallery = app.add_subcommand("gallery", "list or show the named algebras");
  gallery->add_option("action", config.gallery_action, "list | show")->required();
  gallery->add_option("name", config.gallery_name, "gallery name (for show)");
  gallery->add_option("--field", config.field, "C or R");
  gallery->add_option("--param", config.gallery_param, "gallery parameter (n or m)");
  gallery->add_option("--dim", config.dim, "ambient dimension (alternative to --param)");

  auto* orbit = app.add_subcommand("orbit", "enumerate an orbit and measure grid coverage");
  orbit->add_option("--tuple", config.tuple_path, "tuple JSON file")->required();
  orbit->add_option("--x", config.x_path, "start vector JSON (default: seeded cyclic vector)");
  orbit->add_option("--max-degree", config.budget.max_degree, "total-degree cap");
  orbit->add_option("--max-points", config.budget.max_points, "point-count cap");
  orbit->add_option("--box", box_spec, "box bounds lo1,hi1,lo2,hi2,...")->required();
  orbit->add_option("--grid", config.grid, "grid cells per axis");
  orbit->add_option("--checkpoints", checkpoints_spec, "checkpoint degrees d1,d2,...");
  orbit->add_option("--dense-threshold", config.thresholds.dense, "DENSE_EVIDENCE threshold");
  orbit->add_option("--sparse-threshold", config.thresholds.sparse,
                    "NOWHERE_DENSE_EVIDENCE ceiling");
  orbit->add_option("--plateau-eps", config.thresholds.plateau_eps, "plateau gain bound");

  auto* verify = app.add_subcommand("verify", "full pipeline on a tuple file");
  verify->add_option("--tuple", config.tuple_path, "tuple JSON file")->required();
  verify->add_option("--drop", config.drop, "drop operator index before verifying");
  verify->add_option("--x", config.x_path, "start vector JSON");
  verify->add_option("--max-degree", config.budget.max_degree, "total-degree cap");
  verify->add_option("--max-points", config.budget.max_points, "point-count cap");
  verify->add_option("--box", box_spec, "box bounds lo1,hi1,... (default [-2,2] per axis)");
  verify->add_option("--grid", config.grid, "grid cells per axis");
  verify->add_option("--checkpoints", checkpoints_spec, "checkpoint degrees");

  auto* kronecker = app.add_subcommand("kronecker", "simultaneous approximation");
  kronecker->add_option("--alpha", config.alpha, "sqrt-primes:<d> | log-primes:<d> | user:v1,...")
      ->required();
  kronecker->add_option("--target", target_spec, "target vector x1,x2,...")->required();
  kronecker->add_option("--eps", config.eps, "sup-norm tolerance");
  kronecker->add_option("--m0-max", config.m0_max, "scan bound for m0");

  auto* expmap = app.add_subcommand("expmap", "exp/log/kernel/sign-group inside an algebra");
  expmap->add_option("--alg", config.tuple_path, "tuple JSON generating the algebra")->required();
  expmap->add_option("--op", config.expmap_op, "exp | log | ker | signs")->required();
  expmap->add_option("--element", config.element_path, "matrix JSON (for exp/log)");

  app.add_subcommand("paper-suite", "reproduce the paper's explicit objects in one run");

  CLI11_PARSE(app, argc, argv);

  try {
    config.command = app.get_subcommands().front()->get_name();
    if (!tol_spec.empty()) config.tol = parse_tol(tol_spec, config.tol);
    if (!box_spec.empty()) config.box = parse_csv_doubles(box_spec);
    if (!checkpoints_spec.empty()) config.checkpoints = parse_csv_ints(checkpoints_spec);
    if (!target_spec.empty()) config.target = parse_csv_doubles(target_spec);

    const RunReport report = run(config);
    std::cout << report.report.dump(2) << "\n";
    if (!report.expect_ok) {
      std::cerr << "expect mismatch: wanted \"" << config.expect << "\", got \""
                << report.expectation << "\"\n";
    }
    return report.exit_code;
  } catch (const Error& e) {
    ordered_json err{{"error", {{"code", e.code()}, {"message", e.what()}}}};
    std::cout << err.dump(2) << "\n";
    return 2;
  } catch (const std::exception& e) {
    ordered_json err{{"error", {{"code", "internal"}, {"message", e.what()}}}};
    std::cout << err.dump(2) << "\n";
    return 2;
  }
}
