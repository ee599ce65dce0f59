#ifndef HYPERTUPLE_RUNNER_HPP
#define HYPERTUPLE_RUNNER_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hypertuple/json_io.hpp"

namespace hypertuple {

// One experiment invocation. Seeds are explicit; there is no entropy default,
// so identical configs produce bit-identical artifacts up to wall-time.
struct ExperimentConfig {
  std::string command;
  std::uint64_t seed = 0;
  Tolerance tol;

  std::string field = "C";
  int dim = 0;
  std::string algebra;  // gallery name; empty selects the minimal gallery
  int gallery_param = -1;

  std::string tuple_path;
  std::string x_path;
  std::string element_path;

  std::string gallery_action;  // list | show
  std::string gallery_name;

  OrbitBudget budget;
  std::vector<double> box;  // lo1, hi1, lo2, hi2, ...
  int grid = 20;
  std::vector<long long> checkpoints;
  VerdictThresholds thresholds;
  int drop = -1;

  std::string alpha;  // sqrt-primes:<d> | log-primes:<d> | user:v1,v2,...
  std::vector<double> target;
  double eps = 1e-2;
  long long m0_max = 10000;

  std::string expmap_op;  // exp | log | ker | signs

  std::string json_out;
  std::string csv_out;
  std::string expect;
};

struct RunReport {
  ordered_json report;
  // value compared against --expect (a verdict, count or summary string)
  std::string expectation;
  bool expect_ok = true;
  int exit_code = 0;
};

// Dispatches a config to the module operations, echoes the config in the
// report, writes --json-out / --csv-out artifacts and evaluates --expect.
RunReport run(const ExperimentConfig& config);

// One-shot reproduction of the paper's explicit objects: the A_z tuples on
// K^3 with their non-cyclic commutants, the half-plane triple, and the
// minimal-size table for n <= 5.
RunReport reproduce_paper_objects(std::uint64_t seed);

IndependentReals parse_alpha(const std::string& spec);

}  // namespace hypertuple

#endif  // HYPERTUPLE_RUNNER_HPP
