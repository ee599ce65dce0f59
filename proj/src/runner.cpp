#include "hypertuple/runner.hpp"

#include <chrono>
#include <fstream>
#include <sstream>

namespace hypertuple {

namespace {

ordered_json tolerance_json(const Tolerance& tol) {
  return ordered_json{{"eq_tol", tol.eq_tol},
                      {"rank_tol", tol.rank_tol},
                      {"cluster_tol", tol.cluster_tol}};
}

ordered_json checked_value(double value, double tol, bool pass) {
  return ordered_json{{"value", value}, {"tol", tol}, {"pass", pass}};
}

ordered_json config_echo(const ExperimentConfig& c) {
  ordered_json j{{"command", c.command}, {"seed", c.seed}, {"tolerance", tolerance_json(c.tol)}};
  if (!c.tuple_path.empty()) j["tuple"] = c.tuple_path;
  if (!c.x_path.empty()) j["x"] = c.x_path;
  if (!c.element_path.empty()) j["element"] = c.element_path;
  if (c.dim > 0) {
    j["field"] = c.field;
    j["dim"] = c.dim;
  }
  if (!c.algebra.empty()) j["algebra"] = c.algebra;
  if (!c.alpha.empty()) j["alpha"] = c.alpha;
  if (!c.expmap_op.empty()) j["op"] = c.expmap_op;
  if (c.drop >= 0) j["drop"] = c.drop;
  return j;
}

struct AlgebraAnalysis {
  CommutativeAlgebra alg;
  CharacterTable table;
  std::optional<Eigen::VectorXcd> cyclic_vector;
  int commutant_dim = 0;
};

AlgebraAnalysis analyze_algebra(const std::vector<Matrix>& generators, const Tolerance& tol,
                                std::uint64_t seed) {
  AlgebraAnalysis a;
  a.alg = close_algebra(generators, tol);
  a.table = compute_characters(a.alg, tol, seed);
  a.cyclic_vector = find_cyclic_vector(a.alg, 64, seed);
  a.commutant_dim = static_cast<int>(commutant(a.alg).size());
  return a;
}

ordered_json characters_json(const CharacterTable& table) {
  ordered_json chars = ordered_json::array();
  for (const auto& chi : table.characters) {
    ordered_json values = ordered_json::array();
    for (Eigen::Index i = 0; i < chi.values.size(); ++i) {
      values.push_back({chi.values(i).real(), chi.values(i).imag()});
    }
    ordered_json c{{"values", values}, {"kind", character_kind_name(chi.kind)}};
    if (chi.partner) c["partner"] = *chi.partner;
    chars.push_back(std::move(c));
  }
  return chars;
}

std::string kappa_summary(FieldTag field, const CharacterTable& table) {
  if (field == FieldTag::Complex) return "kappa=" + std::to_string(table.kappa);
  return "kappa0=" + std::to_string(table.kappa0) + ",kappa1=" + std::to_string(table.kappa1);
}

ordered_json analysis_json(FieldTag field, const AlgebraAnalysis& a) {
  ordered_json j{{"schema", "hypertuple.analysis/1"},
                 {"field", field_name(field)},
                 {"n", a.alg.n},
                 {"dim", a.alg.dim},
                 {"cyclic", a.cyclic_vector.has_value()}};
  if (a.cyclic_vector) {
    j["cyclic_vector"] = vector_to_json(field, *a.cyclic_vector);
  } else {
    j["cyclic_vector"] = nullptr;
  }
  if (field == FieldTag::Complex) {
    j["kappa"] = a.table.kappa;
  } else {
    j["kappa0"] = a.table.kappa0;
    j["kappa1"] = a.table.kappa1;
  }
  j["characters"] = characters_json(a.table);
  j["idempotent_residual"] =
      checked_value(a.table.idempotent_residual, 1e-7, a.table.idempotent_residual <= 1e-7);
  j["commutant_dim"] = a.commutant_dim;
  return j;
}

GalleryEntry gallery_for_config(const ExperimentConfig& c, const std::string& name) {
  const FieldTag field = field_from_string(c.field);
  int param = c.gallery_param;
  if (param < 0) {
    // derive from --dim where it is meaningful
    if (name == "diag") param = c.dim > 0 ? c.dim : 2;
    if (name == "rotation_sum") param = c.dim > 0 ? c.dim / 2 : 1;
    if (name == "rotation_sum_odd") param = c.dim > 0 ? (c.dim - 1) / 2 : 1;
  }
  return gallery(name, field, param);
}

TupleSpec build_for_config(const ExperimentConfig& c) {
  const FieldTag field = field_from_string(c.field);
  if (c.algebra == "f4") {
    // the half-plane triple itself, with its default parameters
    return f4_triple(2.0, 1.0, 0.5, 1.0, AlphaScheme::SqrtPrimes, c.tol);
  }
  if (c.dim < 1) throw InvalidInput("construct: --dim must be at least 1");
  GalleryEntry entry = c.algebra.empty() ? minimal_gallery_for(field, c.dim)
                                         : gallery_for_config(c, c.algebra);
  if (entry.algebra.field != field) {
    throw InvalidInput("construct: gallery \"" + entry.name + "\" is over " +
                       field_name(entry.algebra.field) + ", not " + c.field);
  }
  const CharacterTable table = compute_characters(entry.algebra, c.tol, c.seed);
  return field == FieldTag::Complex
             ? build_tuple_complex(entry.algebra, table, AlphaScheme::SqrtPrimes, c.seed,
                                   entry.name)
             : build_tuple_real(entry.algebra, table, AlphaScheme::SqrtPrimes, c.seed,
                                entry.name);
}

Box box_for(const TupleSpec& tuple, const std::vector<double>& flat) {
  Box box;
  box.field = tuple.field;
  box.n = tuple.n;
  const int dim = box.real_dim();
  if (flat.empty()) {
    box.lo.assign(dim, -2.0);
    box.hi.assign(dim, 2.0);
  } else {
    if (static_cast<int>(flat.size()) != 2 * dim) {
      throw InvalidInput("box: expected " + std::to_string(2 * dim) +
                         " comma-separated numbers (lo1,hi1,...), got " +
                         std::to_string(flat.size()));
    }
    for (int i = 0; i < dim; ++i) {
      box.lo.push_back(flat[2 * i]);
      box.hi.push_back(flat[2 * i + 1]);
    }
  }
  box.validate();
  return box;
}

Eigen::VectorXcd start_vector(const ExperimentConfig& c, const TupleSpec& tuple) {
  if (!c.x_path.empty()) {
    auto [field, v] = vector_from_json(load_json_file(c.x_path));
    if (v.size() != tuple.n) {
      throw InvalidInput("start vector has length " + std::to_string(v.size()) +
                         ", tuple acts on dimension " + std::to_string(tuple.n));
    }
    (void)field;
    return v;
  }
  auto alg = close_algebra(tuple.operators, c.tol);
  auto x = find_cyclic_vector(alg, 64, c.seed);
  if (!x) throw NotCyclicAlgebra("no cyclic vector found for the tuple's algebra");
  return *x;
}

CoverageReport orbit_for_config(const ExperimentConfig& c, const TupleSpec& tuple,
                                std::ostream* csv) {
  const Eigen::VectorXcd x = start_vector(c, tuple);
  const Box box = box_for(tuple, c.box);
  std::vector<long long> checkpoints = c.checkpoints;
  if (checkpoints.empty() && c.budget.max_degree != std::numeric_limits<long long>::max()) {
    checkpoints = doubling_checkpoints(c.budget.max_degree);
  }
  return coverage_run(tuple, x, c.budget, box, c.grid, checkpoints, c.thresholds, csv);
}

ordered_json cmd_analyze(const ExperimentConfig& c, std::string& expectation) {
  const TupleSpec tuple = tuple_from_json(load_json_file(c.tuple_path));
  const auto a = analyze_algebra(tuple.operators, c.tol, c.seed);
  expectation = kappa_summary(tuple.field, a.table);
  return analysis_json(tuple.field, a);
}

ordered_json cmd_construct(const ExperimentConfig& c, std::string& expectation) {
  const TupleSpec tuple = build_for_config(c);
  expectation = std::to_string(tuple.operators.size());
  return tuple_to_json(tuple);
}

ordered_json cmd_min_size(const ExperimentConfig& c, std::string& expectation) {
  const FieldTag field = field_from_string(c.field);
  const int size = min_tuple_size(field, c.dim);
  expectation = std::to_string(size);
  return ordered_json{{"schema", "hypertuple.minsize/1"},
                      {"field", c.field},
                      {"n", c.dim},
                      {"size", size}};
}

ordered_json cmd_gallery(const ExperimentConfig& c, std::string& expectation) {
  if (c.gallery_action == "list") {
    expectation = "list";
    return ordered_json{{"schema", "hypertuple.gallery/1"}, {"names", gallery_names()}};
  }
  if (c.gallery_action != "show") {
    throw InvalidInput("gallery: action must be list or show");
  }
  GalleryEntry entry = gallery_for_config(c, c.gallery_name);
  const auto a = analyze_algebra(entry.algebra.generators, c.tol, c.seed);
  ordered_json j = analysis_json(entry.algebra.field, a);
  j["schema"] = "hypertuple.gallery_entry/1";
  j["name"] = entry.name;
  j["notes"] = entry.notes;
  bool match = a.cyclic_vector.has_value() == entry.expected_cyclic;
  if (entry.expected_kappa) {
    j["expected_kappa"] = *entry.expected_kappa;
    match = match && a.table.kappa == *entry.expected_kappa;
  }
  if (entry.expected_kappa01) {
    j["expected_kappa0"] = entry.expected_kappa01->first;
    j["expected_kappa1"] = entry.expected_kappa01->second;
    match = match && a.table.kappa0 == entry.expected_kappa01->first &&
            a.table.kappa1 == entry.expected_kappa01->second;
  }
  j["expected_match"] = match;
  expectation = kappa_summary(entry.algebra.field, a.table);
  return j;
}

ordered_json cmd_orbit(const ExperimentConfig& c, std::string& expectation) {
  if (c.budget.max_degree == std::numeric_limits<long long>::max() &&
      c.budget.max_points == std::numeric_limits<long long>::max()) {
    throw InvalidInput("orbit: give a budget via --max-degree and/or --max-points");
  }
  TupleSpec tuple = tuple_from_json(load_json_file(c.tuple_path));
  std::ofstream csv;
  if (!c.csv_out.empty()) {
    csv.open(c.csv_out);
    if (!csv) throw InvalidInput("cannot write file: " + c.csv_out);
  }
  const CoverageReport report = orbit_for_config(c, tuple, csv.is_open() ? &csv : nullptr);
  expectation = density_verdict_name(report.verdict);
  return coverage_to_json(report);
}

ordered_json cmd_verify(const ExperimentConfig& cfg, std::string& expectation) {
  ExperimentConfig c = cfg;
  // verify is the quick pipeline; give it a bounded default budget
  if (c.budget.max_degree == std::numeric_limits<long long>::max() &&
      c.budget.max_points == std::numeric_limits<long long>::max()) {
    c.budget.max_degree = 200;
    c.budget.max_points = 2'000'000;
  }
  TupleSpec tuple = tuple_from_json(load_json_file(c.tuple_path));
  ordered_json j{{"schema", "hypertuple.verify/1"}};

  if (c.drop >= 0) {
    if (c.drop >= static_cast<int>(tuple.operators.size())) {
      throw InvalidInput("verify: --drop index out of range");
    }
    tuple.operators.erase(tuple.operators.begin() + c.drop);
    if (tuple.operators.empty()) throw InvalidInput("verify: nothing left after dropping");
    j["dropped"] = c.drop;
  }

  // commuting check
  double worst = 0.0;
  for (std::size_t i = 0; i < tuple.operators.size(); ++i) {
    for (std::size_t k = i + 1; k < tuple.operators.size(); ++k) {
      worst = std::max(worst, max_abs(tuple.operators[i].entries() * tuple.operators[k].entries() -
                                      tuple.operators[k].entries() * tuple.operators[i].entries()));
    }
  }
  j["pairwise_commutator"] = checked_value(worst, 1e-8, worst <= 1e-8);

  // invertibility
  bool invertible = true;
  for (const auto& op : tuple.operators) {
    try {
      mat_inverse(op, c.tol);
    } catch (const SingularMatrix&) {
      invertible = false;
    }
  }
  j["all_invertible"] = invertible;

  const auto a = analyze_algebra(tuple.operators, c.tol, c.seed);
  j["algebra_dim"] = a.alg.dim;
  j["cyclic"] = a.cyclic_vector.has_value();
  j["kappa_summary"] = kappa_summary(tuple.field, a.table);
  j["predicted_size"] = tuple.predicted_size;
  j["actual_size"] = tuple.operators.size();
  if (c.drop < 0 && (tuple.provenance.construction == Construction::ComplexMinimal ||
                     tuple.provenance.construction == Construction::RealMinimal)) {
    j["size_matches_prediction"] =
        static_cast<int>(tuple.operators.size()) == tuple.predicted_size;
  }

  const CoverageReport report = orbit_for_config(c, tuple, nullptr);
  j["coverage"] = coverage_to_json(report);
  j["verdict"] = density_verdict_name(report.verdict);
  expectation = density_verdict_name(report.verdict);
  return j;
}

ordered_json cmd_kronecker(const ExperimentConfig& c, std::string& expectation) {
  const IndependentReals alpha = parse_alpha(c.alpha);
  if (static_cast<int>(c.target.size()) != alpha.d()) {
    throw InvalidInput("kronecker: --target must have " + std::to_string(alpha.d()) +
                       " components");
  }
  const KroneckerResult r = kronecker_approx(alpha, c.target, c.eps, c.m0_max);
  expectation = r.found ? "found" : "notfound";
  return ordered_json{{"schema", "hypertuple.kronecker/1"},
                      {"m0", r.best.m0},
                      {"m", r.best.m},
                      {"error", r.best.error},
                      {"found", r.found}};
}

ordered_json cmd_expmap(const ExperimentConfig& c, std::string& expectation) {
  const TupleSpec tuple = tuple_from_json(load_json_file(c.tuple_path));
  const auto alg = close_algebra(tuple.operators, c.tol);
  expectation = c.expmap_op;
  if (c.expmap_op == "exp" || c.expmap_op == "log") {
    if (c.element_path.empty()) throw InvalidInput("expmap: --element is required for exp/log");
    const Matrix element = matrix_from_json(load_json_file(c.element_path));
    Matrix result = c.expmap_op == "exp" ? alg_exp(element) : alg_log(alg, element);
    ordered_json j = matrix_to_json(result);
    j["schema"] = "hypertuple.matrix/1";
    return j;
  }
  const CharacterTable table = compute_characters(alg, c.tol, c.seed);
  ordered_json matrices = ordered_json::array();
  if (c.expmap_op == "ker") {
    for (const auto& m : ker_exp_generators(alg, table)) matrices.push_back(matrix_to_json(m));
    return ordered_json{{"schema", "hypertuple.matrices/1"}, {"kind", "ker_exp_generators"},
                        {"matrices", matrices}};
  }
  if (c.expmap_op == "signs") {
    const SignGroup g = sign_group(alg, table);
    for (const auto& m : g.generators) matrices.push_back(matrix_to_json(m));
    return ordered_json{{"schema", "hypertuple.matrices/1"}, {"kind", "sign_group"},
                        {"m", g.m}, {"matrices", matrices}};
  }
  throw InvalidInput("expmap: --op must be exp, log, ker or signs");
}

ordered_json cmd_paper_suite(const ExperimentConfig& c, std::string& expectation);

}  // namespace

IndependentReals parse_alpha(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string kind = spec.substr(0, colon);
  const std::string rest = colon == std::string::npos ? "" : spec.substr(colon + 1);
  if (kind == "sqrt-primes" || kind == "log-primes") {
    if (rest.empty()) throw InvalidInput("alpha: expected " + kind + ":<d>");
    const int d = std::stoi(rest);
    return independent_reals(
        d, kind == "sqrt-primes" ? AlphaScheme::SqrtPrimes : AlphaScheme::LogPrimes);
  }
  if (kind == "user") {
    std::vector<double> values;
    std::stringstream ss(rest);
    std::string item;
    while (std::getline(ss, item, ',')) values.push_back(std::stod(item));
    return independent_reals(static_cast<int>(values.size()), AlphaScheme::User, values);
  }
  throw InvalidInput("alpha: unknown scheme \"" + kind +
                     "\" (expected sqrt-primes:<d>, log-primes:<d> or user:v1,v2,...)");
}

namespace {

ordered_json cmd_paper_suite(const ExperimentConfig& c, std::string& expectation) {
  ordered_json j{{"schema", "hypertuple.paper_suite/1"}};
  bool ok = true;

  // A_z over C: 6-tuple, commutant equal to the algebra, nothing cyclic in it
  {
    GalleryEntry entry = gallery("az", FieldTag::Complex);
    const CharacterTable table = compute_characters(entry.algebra, c.tol, c.seed);
    const TupleSpec tuple =
        build_tuple_complex(entry.algebra, table, AlphaScheme::SqrtPrimes, c.seed, "az");
    const auto report = verify_non_cyclic_commutant(entry.algebra, 200, c.seed);
    ok = ok && tuple.operators.size() == 6 && report.all_non_cyclic &&
         report.max_krylov_rank <= 2;
    j["az_complex"] = ordered_json{{"tuple_size", tuple.operators.size()},
                                   {"predicted_size", tuple.predicted_size},
                                   {"kappa", table.kappa},
                                   {"commutant_dim", report.commutant_dim},
                                   {"all_non_cyclic", report.all_non_cyclic},
                                   {"max_krylov_rank", report.max_krylov_rank},
                                   {"max_shifted_rank", report.max_shifted_rank}};
  }

  // A_z over R: 4-tuple
  {
    GalleryEntry entry = gallery("az", FieldTag::Real);
    const CharacterTable table = compute_characters(entry.algebra, c.tol, c.seed);
    const TupleSpec tuple =
        build_tuple_real(entry.algebra, table, AlphaScheme::SqrtPrimes, c.seed, "az");
    const auto report = verify_non_cyclic_commutant(entry.algebra, 200, c.seed);
    ok = ok && tuple.operators.size() == 4 && report.all_non_cyclic;
    j["az_real"] = ordered_json{{"tuple_size", tuple.operators.size()},
                                {"predicted_size", tuple.predicted_size},
                                {"kappa0", table.kappa0},
                                {"kappa1", table.kappa1},
                                {"commutant_dim", report.commutant_dim},
                                {"all_non_cyclic", report.all_non_cyclic},
                                {"max_krylov_rank", report.max_krylov_rank}};
  }

  // half-plane triple
  {
    const TupleSpec f4 = f4_triple(2.0, 1.0, 0.5, 1.0);
    OrbitBudget budget;
    budget.max_degree = 60;
    const auto hp = halfplane_check(f4, Eigen::Vector2d(0.0, 1.0), budget);
    ok = ok && hp.confined && hp.sign_violations == 0;
    j["f4"] = ordered_json{
        {"a3", f4.operators[2](0, 0).real()},
        {"b3", f4.operators[2](0, 1).real()},
        {"confined", hp.confined},
        {"sign_violations", hp.sign_violations},
        {"closed_form_rel_err", checked_value(hp.max_rel_err, 1e-10, hp.max_rel_err <= 1e-10)},
        {"points", hp.points}};
  }

  // minimal-size table for n <= 5, both fields
  {
    ordered_json rows = ordered_json::array();
    for (int n = 1; n <= 5; ++n) {
      rows.push_back(ordered_json{{"n", n},
                                  {"complex", min_tuple_size(FieldTag::Complex, n)},
                                  {"real", min_tuple_size(FieldTag::Real, n)}});
    }
    j["min_size_table"] = rows;
  }

  j["ok"] = ok;
  expectation = ok ? "ok" : "failed";
  return j;
}

}  // namespace

RunReport run(const ExperimentConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  RunReport out;
  std::string expectation;
  ordered_json result;

  if (config.command == "analyze") {
    result = cmd_analyze(config, expectation);
  } else if (config.command == "construct") {
    result = cmd_construct(config, expectation);
  } else if (config.command == "min-size") {
    result = cmd_min_size(config, expectation);
  } else if (config.command == "gallery") {
    result = cmd_gallery(config, expectation);
  } else if (config.command == "orbit") {
    result = cmd_orbit(config, expectation);
  } else if (config.command == "verify") {
    result = cmd_verify(config, expectation);
  } else if (config.command == "kronecker") {
    result = cmd_kronecker(config, expectation);
  } else if (config.command == "expmap") {
    result = cmd_expmap(config, expectation);
  } else if (config.command == "paper-suite") {
    result = cmd_paper_suite(config, expectation);
  } else {
    throw InvalidInput("unknown command: " + config.command);
  }

  // construct emits a loadable tuple artifact; everything else wraps the
  // result with the config echo
  if (config.command == "construct") {
    out.report = std::move(result);
  } else {
    out.report = ordered_json{{"schema", "hypertuple.report/1"},
                              {"config", config_echo(config)},
                              {"result", std::move(result)}};
  }
  out.expectation = expectation;
  out.expect_ok = config.expect.empty() || config.expect == expectation;
  out.exit_code = out.expect_ok ? 0 : 1;
  const auto elapsed = std::chrono::steady_clock::now() - start;
  out.report["wall_time_ms"] =
      std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count();

  if (!config.json_out.empty()) write_json_file(config.json_out, out.report);
  return out;
}

RunReport reproduce_paper_objects(std::uint64_t seed) {
  ExperimentConfig config;
  config.command = "paper-suite";
  config.seed = seed;
  return run(config);
}

}  // namespace hypertuple
