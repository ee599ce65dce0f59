#include "hypertuple/orbit.hpp"

#include <algorithm>
#include <cmath>

namespace hypertuple {

void Box::validate() const {
  const int dim = real_dim();
  if (dim < 1) throw InvalidInput("box: empty dimension");
  if (static_cast<int>(lo.size()) != dim || static_cast<int>(hi.size()) != dim) {
    throw InvalidInput("box: expected " + std::to_string(dim) + " coordinate bounds, got " +
                       std::to_string(lo.size()) + "/" + std::to_string(hi.size()));
  }
  for (int i = 0; i < dim; ++i) {
    if (!(lo[i] < hi[i])) throw InvalidInput("box: lo must be strictly below hi on axis " +
                                             std::to_string(i));
  }
}

const char* density_verdict_name(DensityVerdict v) {
  switch (v) {
    case DensityVerdict::DenseEvidence: return "DENSE_EVIDENCE";
    case DensityVerdict::NowhereDenseEvidence: return "NOWHERE_DENSE_EVIDENCE";
    case DensityVerdict::Inconclusive: return "INCONCLUSIVE";
  }
  return "?";
}

double CoverageReport::coverage_at_degree(long long degree) const {
  double value = 0.0;
  for (std::size_t i = 0; i < budget_degrees.size(); ++i) {
    if (budget_degrees[i] <= degree) value = coverage[i];
  }
  return value;
}

void enumerate_orbit(
    const TupleSpec& tuple, const Eigen::VectorXcd& x, const OrbitBudget& budget,
    const std::function<void(const std::vector<int>&, const Eigen::VectorXcd&, bool)>& emit,
    const std::function<void(long long)>& on_degree) {
  const int r = static_cast<int>(tuple.operators.size());
  if (r < 1) throw InvalidInput("enumerate_orbit: empty tuple");
  if (x.size() != tuple.n) {
    throw DimensionMismatch("enumerate_orbit: start vector length " + std::to_string(x.size()) +
                            " vs ambient dimension " + std::to_string(tuple.n));
  }
  if (budget.max_degree < 0 || budget.max_points < 1) {
    throw InvalidInput("enumerate_orbit: budget must be positive");
  }
  std::vector<Eigen::MatrixXcd> ops;
  ops.reserve(r);
  for (const auto& t : tuple.operators) ops.push_back(t.entries());

  struct Entry {
    std::vector<int> q;
    Eigen::VectorXcd v;
    int first_nz;  // r for the all-zero vector
  };
  // a value is usable when finite and above the subnormal range: orbit points
  // of invertible tuples are never zero, so anything smaller is underflow
  // debris whose phase information is already lost
  const auto usable = [](const Eigen::VectorXcd& v) {
    return v.allFinite() && v.cwiseAbs().maxCoeff() >= 1e-300;
  };

  std::vector<Entry> shell;
  shell.push_back({std::vector<int>(r, 0), x, r});
  emit(shell[0].q, shell[0].v, usable(shell[0].v));
  long long emitted = 1;
  if (emitted >= budget.max_points) return;
  if (on_degree) on_degree(0);

  // value of a previous-shell vector, by binary search (shells stay lex-sorted)
  const auto find_in = [](const std::vector<Entry>& entries,
                          const std::vector<int>& q) -> const Entry* {
    const auto it = std::lower_bound(entries.begin(), entries.end(), q,
                                     [](const Entry& e, const std::vector<int>& key) {
                                       return e.q < key;
                                     });
    return it != entries.end() && it->q == q ? &*it : nullptr;
  };

  std::vector<int> parent_q(r);
  for (long long degree = 1; degree <= budget.max_degree; ++degree) {
    std::vector<Entry> next;
    next.reserve(shell.size() * 2);
    for (const auto& parent : shell) {
      // adding at positions up to the first nonzero generates each vector once
      const int jmax = std::min(parent.first_nz, r - 1);
      for (int j = 0; j <= jmax; ++j) {
        Entry child;
        child.q = parent.q;
        ++child.q[j];
        child.first_nz = j;
        // evaluate through the best usable predecessor: along balanced
        // staircase paths the intermediates stay inside double range where a
        // fixed predecessor choice would overflow or underflow
        int best_j = j;
        const Entry* best = &parent;
        double best_norm = usable(parent.v) ? parent.v.cwiseAbs().maxCoeff()
                                            : std::numeric_limits<double>::infinity();
        for (int l = 0; l < r; ++l) {
          if (l == j || child.q[l] == 0) continue;
          parent_q = child.q;
          --parent_q[l];
          const Entry* cand = find_in(shell, parent_q);
          if (!cand || !usable(cand->v)) continue;
          const double norm = cand->v.cwiseAbs().maxCoeff();
          if (norm < best_norm) {
            best_norm = norm;
            best = cand;
            best_j = l;
          }
        }
        child.v = ops[best_j] * best->v;
        next.push_back(std::move(child));
      }
    }
    std::sort(next.begin(), next.end(),
              [](const Entry& a, const Entry& b) { return a.q < b.q; });
    bool truncated = false;
    for (const auto& e : next) {
      emit(e.q, e.v, usable(e.v));
      ++emitted;
      if (emitted >= budget.max_points) {
        truncated = true;
        break;
      }
    }
    if (on_degree && !truncated) on_degree(degree);
    if (truncated) return;
    shell = std::move(next);
  }
}

CoverageAccumulator::CoverageAccumulator(Box box, int grid_per_axis,
                                         std::vector<long long> checkpoints)
    : box_(std::move(box)), grid_(grid_per_axis), checkpoints_(std::move(checkpoints)) {
  box_.validate();
  if (grid_ < 2) throw InvalidInput("coverage: grid_per_axis must be at least 2");
  const int dim = box_.real_dim();
  double cells = 1.0;
  for (int i = 0; i < dim; ++i) cells *= grid_;
  if (cells > 4294967296.0) {
    throw InvalidInput("coverage: cell count exceeds 2^32, choose a coarser grid");
  }
  report_.grid_per_axis = grid_;
  report_.cells_total = static_cast<long long>(cells);
  bits_.assign(static_cast<std::size_t>((report_.cells_total + 63) / 64), 0);
  std::sort(checkpoints_.begin(), checkpoints_.end());
}

void CoverageAccumulator::add(const Eigen::VectorXcd& value, bool finite) {
  if (!finite) {
    ++report_.points_nonfinite;
    return;
  }
  ++report_.points_total;
  const int dim = box_.real_dim();
  long long cell = 0;
  for (int axis = 0; axis < dim; ++axis) {
    const std::complex<double> z = value(axis / (box_.field == FieldTag::Real ? 1 : 2));
    const double coord = box_.field == FieldTag::Real
                             ? z.real()
                             : (axis % 2 == 0 ? z.real() : z.imag());
    if (coord < box_.lo[axis] || coord > box_.hi[axis]) return;
    int idx = static_cast<int>((coord - box_.lo[axis]) / (box_.hi[axis] - box_.lo[axis]) *
                               grid_);
    if (idx >= grid_) idx = grid_ - 1;  // the top edge belongs to the last cell
    cell = cell * grid_ + idx;
  }
  ++report_.points_in_box;
  const std::size_t word = static_cast<std::size_t>(cell >> 6);
  const std::uint64_t mask = 1ull << (cell & 63);
  if (!(bits_[word] & mask)) {
    bits_[word] |= mask;
    ++report_.cells_hit;
  }
}

double CoverageAccumulator::fraction() const {
  return static_cast<double>(report_.cells_hit) / static_cast<double>(report_.cells_total);
}

void CoverageAccumulator::record(long long degree) {
  if (!report_.budget_degrees.empty() && report_.budget_degrees.back() == degree) {
    report_.coverage.back() = fraction();
    return;
  }
  report_.budget_degrees.push_back(degree);
  report_.coverage.push_back(fraction());
}

void CoverageAccumulator::degree_complete(long long degree) {
  const bool requested =
      std::binary_search(checkpoints_.begin(), checkpoints_.end(), degree);
  const bool changed = report_.coverage.empty() ||
                       fraction() > report_.coverage.back();
  if (requested || changed) record(degree);
}

CoverageReport CoverageAccumulator::finish(long long last_degree,
                                           const VerdictThresholds& thresholds) {
  record(last_degree);
  report_.thresholds = thresholds;
  report_.verdict = density_verdict(report_, thresholds);
  return report_;
}

DensityVerdict density_verdict(const CoverageReport& report,
                               const VerdictThresholds& thresholds) {
  const double final_cov = report.final_coverage();
  if (final_cov >= thresholds.dense) return DensityVerdict::DenseEvidence;
  if (report.budget_degrees.size() >= 2) {
    const long long last = report.budget_degrees.back();
    const double gain = final_cov - report.coverage_at_degree(last / 2);
    if (final_cov <= thresholds.sparse && gain <= thresholds.plateau_eps) {
      return DensityVerdict::NowhereDenseEvidence;
    }
  } else if (final_cov <= thresholds.sparse && report.budget_degrees.size() == 1 &&
             report.budget_degrees.back() == 0) {
    return DensityVerdict::Inconclusive;
  }
  return DensityVerdict::Inconclusive;
}

std::vector<long long> doubling_checkpoints(long long max_degree) {
  std::vector<long long> cps;
  long long d = max_degree;
  while (d >= 10) {
    cps.push_back(d);
    d /= 2;
  }
  std::sort(cps.begin(), cps.end());
  return cps;
}

CoverageReport coverage_run(const TupleSpec& tuple, const Eigen::VectorXcd& x,
                            const OrbitBudget& budget, const Box& box, int grid_per_axis,
                            std::vector<long long> checkpoints,
                            const VerdictThresholds& thresholds, std::ostream* csv) {
  CoverageAccumulator acc(box, grid_per_axis, std::move(checkpoints));
  const int r = static_cast<int>(tuple.operators.size());
  if (csv) {
    for (int j = 0; j < r; ++j) *csv << (j ? "," : "") << "k" << (j + 1);
    for (int c = 0; c < box.real_dim(); ++c) *csv << ",coord" << (c + 1);
    *csv << "\n";
  }
  long long last_degree = 0;
  enumerate_orbit(
      tuple, x, budget,
      [&](const std::vector<int>& q, const Eigen::VectorXcd& v, bool finite) {
        acc.add(v, finite);
        long long degree = 0;
        for (int qi : q) degree += qi;
        last_degree = std::max(last_degree, degree);
        if (csv && finite) {
          for (int j = 0; j < r; ++j) *csv << (j ? "," : "") << q[j];
          for (int i = 0; i < v.size(); ++i) {
            if (box.field == FieldTag::Real) {
              *csv << "," << v(i).real();
            } else {
              *csv << "," << v(i).real() << "," << v(i).imag();
            }
          }
          *csv << "\n";
        }
      },
      [&](long long degree) { acc.degree_complete(degree); });
  return acc.finish(last_degree, thresholds);
}

HalfplaneReport halfplane_check(const TupleSpec& tuple, const Eigen::Vector2d& x,
                                const OrbitBudget& budget) {
  if (tuple.n != 2) throw InvalidInput("halfplane_check: tuple must act on R^2");
  if (x(1) == 0.0) throw InvalidInput("halfplane_check: x2 must be nonzero");
  const int r = static_cast<int>(tuple.operators.size());
  std::vector<double> log_a(r);
  for (int j = 0; j < r; ++j) {
    const double a = tuple.operators[j](0, 0).real();
    if (!(a > 0.0)) throw InvalidInput("halfplane_check: diagonal entries must be positive");
    log_a[j] = std::log(a);
  }
  HalfplaneReport report;
  const double sign = x(1) > 0.0 ? 1.0 : -1.0;
  Eigen::VectorXcd x0(2);
  x0 << x(0), x(1);
  enumerate_orbit(tuple, x0, budget,
                  [&](const std::vector<int>& q, const Eigen::VectorXcd& v, bool finite) {
                    if (!finite) return;
                    ++report.points;
                    const double t = v(1).real();
                    if (!(t * sign > 0.0)) ++report.sign_violations;
                    double log_prod = 0.0;
                    for (int j = 0; j < r; ++j) log_prod += q[j] * log_a[j];
                    const double expected = x(1) * std::exp(log_prod);
                    if (std::isfinite(expected) && expected != 0.0) {
                      report.max_rel_err =
                          std::max(report.max_rel_err, std::abs(t - expected) / std::abs(expected));
                    }
                  });
  report.confined = report.sign_violations == 0;
  return report;
}

CommutantCyclicityReport verify_non_cyclic_commutant(const CommutativeAlgebra& alg, int samples,
                                                     std::uint64_t seed) {
  const auto comm = commutant(alg);
  CommutantCyclicityReport report;
  report.commutant_dim = static_cast<int>(comm.size());
  Rng rng(seed);
  const int n = alg.n;

  auto probe = [&](const Matrix& s) {
    if (max_abs(s.entries()) <= 1e-12) return;
    for (int t = 0; t < 8; ++t) {
      Eigen::VectorXcd x(n);
      for (int i = 0; i < n; ++i) {
        x(i) = alg.field == FieldTag::Complex ? rng.complex_sym()
                                              : std::complex<double>(rng.sym(), 0.0);
      }
      const int rank = krylov_rank(s, x, alg.tol);
      report.max_krylov_rank = std::max(report.max_krylov_rank, rank);
      if (rank == n) report.all_non_cyclic = false;
    }
    // shifted-rank certificate with an absolute floor: a numerically zero
    // shift of S must count as rank 0, so singular values are compared
    // against the scale of S itself
    const Eigen::MatrixXcd shifted =
        s.entries() - s(0, 0) * Eigen::MatrixXcd::Identity(n, n);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(shifted);
    const double floor = alg.tol.rank_tol * std::max(1.0, max_abs(s.entries()));
    int rank = 0;
    for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
      if (svd.singularValues()(i) > floor) ++rank;
    }
    report.max_shifted_rank = std::max(report.max_shifted_rank, rank);
  };

  for (const auto& s : comm) probe(s);
  for (int t = 0; t < samples; ++t) {
    Eigen::MatrixXcd combo = Eigen::MatrixXcd::Zero(n, n);
    for (const auto& s : comm) {
      const std::complex<double> c = alg.field == FieldTag::Complex
                                         ? rng.complex_sym()
                                         : std::complex<double>(rng.sym(), 0.0);
      combo += c * s.entries();
    }
    probe(Matrix(alg.field, alg.field == FieldTag::Real
                                ? combo.real().cast<std::complex<double>>()
                                : combo));
  }
  return report;
}

}  // namespace hypertuple
