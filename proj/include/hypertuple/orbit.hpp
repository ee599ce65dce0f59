#ifndef HYPERTUPLE_ORBIT_HPP
#define HYPERTUPLE_ORBIT_HPP

#include <functional>
#include <limits>
#include <ostream>
#include <vector>

#include "hypertuple/construct.hpp"

namespace hypertuple {

// Finite window for density measurements. Coordinates are real; complex
// points occupy 2n axes with real/imaginary parts interleaved.
struct Box {
  FieldTag field = FieldTag::Real;
  int n = 0;
  std::vector<double> lo, hi;

  int real_dim() const { return field == FieldTag::Real ? n : 2 * n; }
  void validate() const;
};

struct OrbitBudget {
  long long max_degree = std::numeric_limits<long long>::max();
  long long max_points = std::numeric_limits<long long>::max();
};

enum class DensityVerdict { DenseEvidence, NowhereDenseEvidence, Inconclusive };

const char* density_verdict_name(DensityVerdict v);

struct VerdictThresholds {
  double dense = 0.8;
  double sparse = 0.5;
  double plateau_eps = 0.01;
};

struct CoverageReport {
  int grid_per_axis = 0;
  std::vector<long long> budget_degrees;
  std::vector<double> coverage;  // aligned with budget_degrees, nondecreasing
  long long points_total = 0;    // finite points fed to the statistics
  long long points_in_box = 0;
  long long points_nonfinite = 0;
  long long cells_total = 0;
  long long cells_hit = 0;
  DensityVerdict verdict = DensityVerdict::Inconclusive;
  VerdictThresholds thresholds;

  double final_coverage() const { return coverage.empty() ? 0.0 : coverage.back(); }
  // stepwise coverage as a function of degree
  double coverage_at_degree(long long degree) const;
};

// Enumerates T_1^{q_1} ... T_r^{q_r} x by total degree, lexicographic within
// each degree shell; every point costs one matrix-vector product from its
// predecessor. Non-finite points are emitted flagged. on_degree fires after a
// fully emitted shell.
void enumerate_orbit(
    const TupleSpec& tuple, const Eigen::VectorXcd& x, const OrbitBudget& budget,
    const std::function<void(const std::vector<int>& q, const Eigen::VectorXcd& value,
                             bool finite)>& emit,
    const std::function<void(long long degree)>& on_degree = {});

// Stream consumer: counts grid cells of the box hit by in-box points.
// Records a coverage sample whenever a completed degree changed the count,
// at every requested checkpoint, and at the final degree.
class CoverageAccumulator {
 public:
  CoverageAccumulator(Box box, int grid_per_axis, std::vector<long long> checkpoints = {});

  void add(const Eigen::VectorXcd& value, bool finite);
  void degree_complete(long long degree);
  CoverageReport finish(long long last_degree, const VerdictThresholds& thresholds = {});

 private:
  void record(long long degree);
  double fraction() const;

  Box box_;
  int grid_;
  std::vector<long long> checkpoints_;
  std::vector<std::uint64_t> bits_;
  CoverageReport report_;
};

DensityVerdict density_verdict(const CoverageReport& report, const VerdictThresholds& thresholds);

// Enumerate + accumulate in one call; optional CSV of finite points with
// header k1,...,kr,coord1,...
CoverageReport coverage_run(const TupleSpec& tuple, const Eigen::VectorXcd& x,
                            const OrbitBudget& budget, const Box& box, int grid_per_axis,
                            std::vector<long long> checkpoints = {},
                            const VerdictThresholds& thresholds = {}, std::ostream* csv = nullptr);

std::vector<long long> doubling_checkpoints(long long max_degree);

struct HalfplaneReport {
  bool confined = false;
  long long sign_violations = 0;
  double max_rel_err = 0.0;  // second coordinate vs x2 * prod a_j^{q_j}
  long long points = 0;
};

// Orbit of the F4 triple stays in the half-plane of its starting sign; also
// checks the closed-form second coordinate against the matrix products.
HalfplaneReport halfplane_check(const TupleSpec& tuple, const Eigen::Vector2d& x,
                                const OrbitBudget& budget);

struct CommutantCyclicityReport {
  bool all_non_cyclic = true;
  int max_krylov_rank = 0;
  int max_shifted_rank = 0;  // rank of S - S(0,0) I over the sampled elements
  int commutant_dim = 0;
};

// Samples the commutant (basis elements plus random combinations) and tests
// each for cyclicity with seeded Krylov probes.
CommutantCyclicityReport verify_non_cyclic_commutant(const CommutativeAlgebra& alg, int samples,
                                                     std::uint64_t seed);

}  // namespace hypertuple

#endif  // HYPERTUPLE_ORBIT_HPP
