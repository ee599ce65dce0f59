#include "hypertuple/algebra.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/QR>
#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

namespace hypertuple {

namespace {

Eigen::VectorXcd vectorize(const Eigen::MatrixXcd& m) {
  return Eigen::Map<const Eigen::VectorXcd>(m.data(), m.size());
}

Eigen::MatrixXcd unvectorize(const Eigen::VectorXcd& v, int n) {
  return Eigen::Map<const Eigen::MatrixXcd>(v.data(), n, n);
}

// Incrementally orthonormalized span with relative-residual membership test.
class SpanTracker {
 public:
  explicit SpanTracker(Eigen::Index len) : ortho_(len, 0) {}

  // true (and absorbs the direction) when v leaves the current span
  bool try_add(const Eigen::VectorXcd& v, double rank_tol) {
    const double norm = v.norm();
    if (!(norm > 0.0)) return false;
    Eigen::VectorXcd r = v;
    for (int pass = 0; pass < 2; ++pass) {
      if (ortho_.cols() > 0) r -= ortho_ * (ortho_.adjoint() * r);
    }
    if (r.norm() <= rank_tol * norm) return false;
    ortho_.conservativeResize(Eigen::NoChange, ortho_.cols() + 1);
    ortho_.col(ortho_.cols() - 1) = r / r.norm();
    return true;
  }

 private:
  Eigen::MatrixXcd ortho_;
};

}  // namespace

Eigen::VectorXcd CommutativeAlgebra::coordinates(const Eigen::MatrixXcd& a,
                                                 double* residual) const {
  if (a.rows() != n || a.cols() != n) {
    throw DimensionMismatch("coordinates: matrix is " + std::to_string(a.rows()) + "x" +
                            std::to_string(a.cols()) + ", ambient dimension is " +
                            std::to_string(n));
  }
  const Eigen::VectorXcd v = vectorize(a);
  Eigen::VectorXcd coords = basis_columns.colPivHouseholderQr().solve(v);
  if (residual) {
    *residual = max_abs(unvectorize(basis_columns * coords - v, n));
  }
  return coords;
}

Matrix CommutativeAlgebra::element(const Eigen::VectorXcd& coeffs) const {
  if (coeffs.size() != dim) {
    throw DimensionMismatch("element: expected " + std::to_string(dim) + " coefficients");
  }
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 0; i < dim; ++i) sum += coeffs(i) * basis[i].entries();
  if (field == FieldTag::Real) {
    const double imag = max_abs_imag(sum);
    if (imag > 1e-12 * std::max(1.0, max_abs(sum))) {
      throw InvalidInput("element: complex coefficients in a real algebra");
    }
    return Matrix(field, sum.real().cast<std::complex<double>>());
  }
  return Matrix(field, sum);
}

bool CommutativeAlgebra::contains(const Eigen::MatrixXcd& a, double max_residual) const {
  double resid = 0.0;
  coordinates(a, &resid);
  return resid <= max_residual * std::max(1.0, max_abs(a));
}

CommutativeAlgebra close_algebra(const std::vector<Matrix>& tuple, const Tolerance& tol,
                                 int ambient_n, FieldTag ambient_field) {
  CommutativeAlgebra alg;
  alg.tol = tol;
  if (tuple.empty()) {
    alg.n = ambient_n;
    alg.field = ambient_field;
  } else {
    alg.n = tuple.front().n();
    alg.field = tuple.front().field();
    for (const auto& m : tuple) {
      if (m.n() != alg.n || m.field() != alg.field) {
        throw DimensionMismatch("close_algebra: mixed dimensions or fields in the tuple");
      }
    }
  }
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    for (std::size_t j = i + 1; j < tuple.size(); ++j) {
      const Eigen::MatrixXcd comm = tuple[i].entries() * tuple[j].entries() -
                                    tuple[j].entries() * tuple[i].entries();
      const double norm = max_abs(comm);
      if (norm > tol.eq_tol) {
        throw NonCommuting("operators " + std::to_string(i) + " and " + std::to_string(j) +
                           " have commutator max-norm " + std::to_string(norm));
      }
    }
  }
  alg.generators = tuple;

  const int n = alg.n;
  SpanTracker span(static_cast<Eigen::Index>(n) * n);
  alg.basis.push_back(Matrix::identity(alg.field, n));
  span.try_add(vectorize(alg.basis[0].entries()), tol.rank_tol);
  for (const auto& g : tuple) {
    if (span.try_add(vectorize(g.entries()), tol.rank_tol)) alg.basis.push_back(g);
  }

  // fixed point over products; new basis members are normalized to unit
  // Frobenius norm to keep the elimination well-scaled
  bool grew = true;
  while (grew) {
    grew = false;
    const std::size_t current = alg.basis.size();
    for (std::size_t i = 1; i < current && !grew; ++i) {
      for (std::size_t j = i; j < current && !grew; ++j) {
        Eigen::MatrixXcd p = alg.basis[i].entries() * alg.basis[j].entries();
        const double norm = p.norm();
        if (norm <= 1e-12 * alg.basis[i].entries().norm() * alg.basis[j].entries().norm()) {
          continue;
        }
        if (span.try_add(vectorize(p), tol.rank_tol)) {
          alg.basis.push_back(Matrix(alg.field, p / norm));
          grew = true;
        }
      }
    }
    if (alg.basis.size() > static_cast<std::size_t>(n) * n) {
      throw NumericalFailure("close_algebra: basis exceeded n^2 elements");
    }
  }
  alg.dim = static_cast<int>(alg.basis.size());

  alg.basis_columns.resize(static_cast<Eigen::Index>(n) * n, alg.dim);
  for (int i = 0; i < alg.dim; ++i) alg.basis_columns.col(i) = vectorize(alg.basis[i].entries());

  // structure constants by least squares against the closed basis
  auto solver = alg.basis_columns.colPivHouseholderQr();
  alg.left_mult.assign(alg.dim, Eigen::MatrixXcd::Zero(alg.dim, alg.dim));
  for (int i = 0; i < alg.dim; ++i) {
    for (int j = 0; j < alg.dim; ++j) {
      const Eigen::MatrixXcd prod = alg.basis[i].entries() * alg.basis[j].entries();
      const Eigen::VectorXcd v = vectorize(prod);
      const Eigen::VectorXcd coords = solver.solve(v);
      const double resid = max_abs(unvectorize(alg.basis_columns * coords - v, n));
      if (resid > 1e-8 * std::max(1.0, max_abs(prod))) {
        throw NumericalFailure("close_algebra: structure constant residual " +
                               std::to_string(resid) + " at pair (" + std::to_string(i) + "," +
                               std::to_string(j) + ")");
      }
      alg.left_mult[i].col(j) = coords;
    }
  }
  return alg;
}

std::vector<Matrix> commutant(const CommutativeAlgebra& alg) {
  const int n = alg.n;
  if (alg.generators.empty()) {
    // commutant of the scalars is everything
    std::vector<Matrix> full;
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < n; ++i) {
        Eigen::MatrixXcd e = Eigen::MatrixXcd::Zero(n, n);
        e(i, j) = 1.0;
        full.push_back(Matrix(alg.field, e));
      }
    }
    return full;
  }
  // rows of the stacked system (I (x) g - g^T (x) I) vec(S) = 0, column-major
  std::vector<Eigen::VectorXcd> rows;
  rows.reserve(alg.generators.size() * n * n);
  for (const auto& gen : alg.generators) {
    const Eigen::MatrixXcd& g = gen.entries();
    for (int q = 0; q < n; ++q) {
      for (int p = 0; p < n; ++p) {
        Eigen::VectorXcd row = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(n) * n);
        for (int r = 0; r < n; ++r) row(r + q * n) += g(p, r);
        for (int s = 0; s < n; ++s) row(p + s * n) -= g(s, q);
        rows.push_back(std::move(row));
      }
    }
  }
  std::vector<Matrix> basis;
  for (const auto& v : nullspace_basis(rows, alg.field, alg.tol)) {
    Eigen::MatrixXcd m = unvectorize(v, n);
    if (alg.field == FieldTag::Real) m = m.real().cast<std::complex<double>>();
    basis.push_back(Matrix(alg.field, m));
  }
  return basis;
}

std::optional<Eigen::VectorXcd> find_cyclic_vector(const CommutativeAlgebra& alg, int attempts,
                                                   std::uint64_t seed) {
  if (alg.dim < alg.n) return std::nullopt;  // dimension obstruction, certain
  Rng rng(seed);
  const int n = alg.n;
  for (int attempt = 0; attempt < attempts; ++attempt) {
    Eigen::VectorXcd x(n);
    for (int i = 0; i < n; ++i) {
      x(i) = alg.field == FieldTag::Complex ? rng.complex_sym()
                                            : std::complex<double>(rng.sym(), 0.0);
    }
    Eigen::MatrixXcd columns(n, alg.dim);
    for (int i = 0; i < alg.dim; ++i) columns.col(i) = alg.basis[i].entries() * x;
    if (numeric_rank(columns, alg.tol.rank_tol) == n) return x;
  }
  return std::nullopt;
}

Eigen::MatrixXcd regular_representation(const CommutativeAlgebra& alg,
                                        const Eigen::VectorXcd& coeffs) {
  if (coeffs.size() != alg.dim) {
    throw DimensionMismatch("regular_representation: expected " + std::to_string(alg.dim) +
                            " coefficients");
  }
  Eigen::MatrixXcd r = Eigen::MatrixXcd::Zero(alg.dim, alg.dim);
  for (int i = 0; i < alg.dim; ++i) r += coeffs(i) * alg.left_mult[i];
  return r;
}

const char* character_kind_name(CharacterKind k) {
  return k == CharacterKind::RealValued ? "REAL_VALUED" : "COMPLEX_PAIR_MEMBER";
}

Eigen::MatrixXcd contour_projector(const Eigen::MatrixXcd& a, std::complex<double> center,
                                   double radius, int nodes) {
  const Eigen::Index m = a.rows();
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(m, m);
  Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(m, m);
  for (int j = 0; j < nodes; ++j) {
    const double theta = 2.0 * M_PI * j / nodes;
    const std::complex<double> w = std::polar(radius, theta);
    const std::complex<double> zeta = center + w;
    const Eigen::MatrixXcd resolvent = (zeta * id - a).partialPivLu().solve(id);
    p += (w / static_cast<double>(nodes)) * resolvent;
  }
  return p;
}

namespace {

struct Cluster {
  std::complex<double> center;
  double spread = 0.0;  // max member distance from center
  std::vector<int> members;
};

std::vector<Cluster> single_linkage(const std::vector<std::complex<double>>& points,
                                    double radius) {
  const int m = static_cast<int>(points.size());
  std::vector<int> parent(m);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      if (std::abs(points[i] - points[j]) <= radius) parent[find(i)] = find(j);
    }
  }
  std::vector<Cluster> clusters;
  std::vector<int> root_to_cluster(m, -1);
  for (int i = 0; i < m; ++i) {
    const int r = find(i);
    if (root_to_cluster[r] < 0) {
      root_to_cluster[r] = static_cast<int>(clusters.size());
      clusters.push_back({});
    }
    clusters[root_to_cluster[r]].members.push_back(i);
  }
  for (auto& c : clusters) {
    std::complex<double> sum = 0.0;
    for (int i : c.members) sum += points[i];
    c.center = sum / static_cast<double>(c.members.size());
    for (int i : c.members) c.spread = std::max(c.spread, std::abs(points[i] - c.center));
  }
  std::sort(clusters.begin(), clusters.end(), [](const Cluster& a, const Cluster& b) {
    if (a.center.real() != b.center.real()) return a.center.real() < b.center.real();
    return a.center.imag() < b.center.imag();
  });
  return clusters;
}

}  // namespace

CharacterTable compute_characters(const CommutativeAlgebra& alg, const Tolerance& tol,
                                  std::uint64_t seed) {
  const int d = alg.dim;
  const int n = alg.n;
  Rng rng(seed);
  double best_residual = std::numeric_limits<double>::infinity();

  for (int attempt = 0; attempt < 8; ++attempt) {
    // random separating element; real coefficients in the real case preserve
    // the conjugation symmetry of the character values
    Eigen::VectorXcd coeffs(d);
    for (int i = 0; i < d; ++i) {
      coeffs(i) = alg.field == FieldTag::Complex ? rng.complex_sym()
                                                 : std::complex<double>(rng.sym(), 0.0);
    }
    const Eigen::MatrixXcd regrep = regular_representation(alg, coeffs);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(regrep, false);
    if (solver.info() != Eigen::Success) continue;
    std::vector<std::complex<double>> evals(solver.eigenvalues().data(),
                                            solver.eigenvalues().data() + d);
    const auto clusters = single_linkage(evals, tol.cluster_tol);
    const int kappa = static_cast<int>(clusters.size());

    // circle radii: halfway between the cluster spread and the gap to the
    // nearest foreign eigenvalue
    bool separable = true;
    std::vector<double> radii(kappa);
    for (int c = 0; c < kappa && separable; ++c) {
      double gap = std::numeric_limits<double>::infinity();
      for (int o = 0; o < kappa; ++o) {
        if (o == c) continue;
        for (int i : clusters[o].members) {
          gap = std::min(gap, std::abs(evals[i] - clusters[c].center));
        }
      }
      if (kappa == 1) {
        radii[c] = clusters[c].spread + std::max(1.0, clusters[c].spread);
      } else if (gap <= 2.0 * clusters[c].spread + tol.cluster_tol) {
        separable = false;
      } else {
        radii[c] = 0.5 * (clusters[c].spread + gap);
      }
    }
    if (!separable) continue;

    // ambient element and its spectral idempotents
    Eigen::MatrixXcd ambient = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 0; i < d; ++i) ambient += coeffs(i) * alg.basis[i].entries();

    std::vector<Matrix> idempotents;
    std::vector<Eigen::MatrixXcd> projectors;
    for (int c = 0; c < kappa; ++c) {
      idempotents.push_back(
          Matrix(FieldTag::Complex, contour_projector(ambient, clusters[c].center, radii[c])));
      projectors.push_back(contour_projector(regrep, clusters[c].center, radii[c]));
    }

    // idempotent axioms in the ambient algebra
    double residual = 0.0;
    Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(n, n);
    for (int c = 0; c < kappa; ++c) {
      const Eigen::MatrixXcd& p = idempotents[c].entries();
      sum += p;
      residual = std::max(residual, max_abs(p * p - p));
      for (int o = c + 1; o < kappa; ++o) {
        residual = std::max(residual, max_abs(p * idempotents[o].entries()));
      }
    }
    residual = std::max(residual, max_abs(sum - Eigen::MatrixXcd::Identity(n, n)));
    best_residual = std::min(best_residual, residual);
    if (residual > 1e-7) continue;

    // character values from normalized projector traces
    CharacterTable table;
    table.seed = seed;
    table.kappa = kappa;
    table.idempotents = std::move(idempotents);
    table.regrep_projectors = std::move(projectors);
    table.idempotent_residual = residual;
    bool trace_ok = true;
    for (int c = 0; c < kappa; ++c) {
      Character chi;
      chi.values.resize(d);
      const std::complex<double> tr = table.regrep_projectors[c].trace();
      if (std::abs(tr) < 0.5) {  // the trace is the block dimension, a positive integer
        trace_ok = false;
        break;
      }
      for (int i = 0; i < d; ++i) {
        chi.values(i) = (alg.left_mult[i] * table.regrep_projectors[c]).trace() / tr;
      }
      table.characters.push_back(std::move(chi));
    }
    if (!trace_ok || std::abs(table.characters.front().values(0) - 1.0) > 1e-8) continue;

    // classify real-valued characters vs conjugate pairs
    bool paired_ok = true;
    for (int c = 0; c < kappa; ++c) {
      auto& chi = table.characters[c];
      const double imag = max_abs_imag(chi.values);
      chi.kind = imag <= tol.cluster_tol ? CharacterKind::RealValued
                                         : CharacterKind::ComplexPairMember;
    }
    for (int c = 0; c < kappa; ++c) {
      auto& chi = table.characters[c];
      if (chi.kind != CharacterKind::ComplexPairMember || chi.partner) continue;
      for (int o = 0; o < kappa; ++o) {
        if (o == c || table.characters[o].partner) continue;
        if (max_abs(table.characters[o].values - chi.values.conjugate()) <= tol.cluster_tol) {
          chi.partner = o;
          table.characters[o].partner = c;
          break;
        }
      }
      if (alg.field == FieldTag::Real && !chi.partner) {
        paired_ok = false;
        break;
      }
    }
    if (!paired_ok) continue;

    if (alg.field == FieldTag::Real) {
      for (const auto& chi : table.characters) {
        if (chi.kind == CharacterKind::RealValued) ++table.kappa1;
      }
      table.kappa0 = (kappa - table.kappa1) / 2;
    }
    return table;
  }
  throw CharacterSeparationFailure("no separating element found after 8 attempts; best residual " +
                                   std::to_string(best_residual));
}

std::complex<double> character_value(const CharacterTable& table, int chi_index,
                                     const Eigen::VectorXcd& coeffs) {
  if (chi_index < 0 || chi_index >= static_cast<int>(table.characters.size())) {
    throw InvalidInput("character_value: index " + std::to_string(chi_index) + " out of range");
  }
  const auto& chi = table.characters[chi_index];
  if (coeffs.size() != chi.values.size()) {
    throw DimensionMismatch("character_value: coefficient length mismatch");
  }
  return chi.values.cwiseProduct(coeffs).sum();
}

}  // namespace hypertuple
