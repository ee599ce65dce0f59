#include "hypertuple/construct.hpp"

#include <cmath>

namespace hypertuple {

const char* construction_name(Construction c) {
  switch (c) {
    case Construction::ComplexMinimal: return "COMPLEX_MINIMAL";
    case Construction::RealMinimal: return "REAL_MINIMAL";
    case Construction::Gallery: return "GALLERY";
    case Construction::User: return "USER";
  }
  return "?";
}

Construction construction_from_name(const std::string& name) {
  if (name == "COMPLEX_MINIMAL") return Construction::ComplexMinimal;
  if (name == "REAL_MINIMAL") return Construction::RealMinimal;
  if (name == "GALLERY") return Construction::Gallery;
  if (name == "USER") return Construction::User;
  throw InvalidInput("unknown construction name: " + name);
}

int min_tuple_size(FieldTag field, int n) {
  if (n < 1) throw InvalidInput("min_tuple_size: n must be >= 1");
  if (field == FieldTag::Complex) return n + 1;
  return n % 2 == 0 ? n / 2 + 1 : (n + 3) / 2;
}

namespace {

// Greedy rank tracker over the matrices viewed as real vectors of length 2n^2.
class RealSpanTracker {
 public:
  explicit RealSpanTracker(int n) : len_(2 * n * n), ortho_(len_, 0) {}

  bool try_add(const Eigen::MatrixXcd& m, double rank_tol) {
    Eigen::VectorXd v(len_);
    const Eigen::Map<const Eigen::VectorXcd> flat(m.data(), m.size());
    v.head(len_ / 2) = flat.real();
    v.tail(len_ / 2) = flat.imag();
    const double norm = v.norm();
    if (!(norm > 0.0)) return false;
    Eigen::VectorXd r = v;
    for (int pass = 0; pass < 2; ++pass) {
      if (ortho_.cols() > 0) r -= ortho_ * (ortho_.transpose() * r);
    }
    if (r.norm() <= rank_tol * norm) return false;
    ortho_.conservativeResize(Eigen::NoChange, ortho_.cols() + 1);
    ortho_.col(ortho_.cols() - 1) = r / r.norm();
    return true;
  }

 private:
  int len_;
  Eigen::MatrixXd ortho_;
};

std::vector<double> real_coordinate_vector(const CommutativeAlgebra& alg,
                                           const Eigen::MatrixXcd& m, bool complex_case) {
  const Eigen::VectorXcd coords = alg.coordinates(m);
  std::vector<double> v;
  if (complex_case) {
    v.reserve(2 * alg.dim);
    for (int i = 0; i < alg.dim; ++i) v.push_back(coords(i).real());
    for (int i = 0; i < alg.dim; ++i) v.push_back(coords(i).imag());
  } else {
    v.reserve(alg.dim);
    for (int i = 0; i < alg.dim; ++i) v.push_back(coords(i).real());
  }
  return v;
}

}  // namespace

TupleSpec build_tuple_complex(const CommutativeAlgebra& alg, const CharacterTable& table,
                              AlphaScheme scheme, std::uint64_t seed,
                              const std::string& algebra_id) {
  if (alg.field != FieldTag::Complex) {
    throw InvalidInput("build_tuple_complex: algebra must be complex");
  }
  if (alg.dim != alg.n || !find_cyclic_vector(alg, 64, seed).has_value()) {
    throw NotCyclicAlgebra("build_tuple_complex: algebra is not cyclic on C^" +
                           std::to_string(alg.n));
  }
  const int n = alg.n;
  const int k = table.kappa;

  std::vector<Matrix> bs = ker_exp_generators(alg, table);
  RealSpanTracker span(n);
  for (const auto& b : bs) {
    if (!span.try_add(b.entries(), alg.tol.rank_tol)) {
      throw NumericalFailure("build_tuple_complex: kernel generators are dependent");
    }
  }
  // extend to a real basis of the algebra, candidates in the fixed order
  // basis[0], i*basis[0], basis[1], i*basis[1], ...
  const std::complex<double> iunit(0.0, 1.0);
  for (int i = 0; i < alg.dim && static_cast<int>(bs.size()) < 2 * n; ++i) {
    for (int variant = 0; variant < 2 && static_cast<int>(bs.size()) < 2 * n; ++variant) {
      Eigen::MatrixXcd cand = alg.basis[i].entries();
      if (variant == 1) cand = iunit * cand;
      if (span.try_add(cand, alg.tol.rank_tol)) {
        bs.push_back(Matrix(FieldTag::Complex, cand));
      }
    }
  }
  if (static_cast<int>(bs.size()) != 2 * n) {
    throw NumericalFailure("build_tuple_complex: could not extend to a real basis");
  }

  // B0 from the completing generator in the algebra's real coordinate space
  std::vector<std::vector<double>> coords;
  for (const auto& b : bs) coords.push_back(real_coordinate_vector(alg, b.entries(), true));
  const IndependentReals alpha = independent_reals(2 * n, scheme);
  const std::vector<double> x0 = completing_generator(coords, alpha, alg.tol);
  Eigen::VectorXcd b0_coords(alg.dim);
  for (int i = 0; i < alg.dim; ++i) b0_coords(i) = {x0[i], x0[alg.dim + i]};
  const Matrix b0 = alg.element(b0_coords);

  TupleSpec tuple;
  tuple.field = FieldTag::Complex;
  tuple.n = n;
  tuple.provenance = {algebra_id, Construction::ComplexMinimal, scheme, seed};
  tuple.predicted_size = 2 * n - k + 1;
  tuple.operators.push_back(alg_exp(b0));
  for (int j = k; j < 2 * n; ++j) tuple.operators.push_back(alg_exp(bs[j]));
  return tuple;
}

TupleSpec build_tuple_real(const CommutativeAlgebra& alg, const CharacterTable& table,
                           AlphaScheme scheme, std::uint64_t seed,
                           const std::string& algebra_id) {
  if (alg.field != FieldTag::Real) {
    throw InvalidInput("build_tuple_real: algebra must be real");
  }
  if (alg.dim != alg.n || !find_cyclic_vector(alg, 64, seed).has_value()) {
    throw NotCyclicAlgebra("build_tuple_real: algebra is not cyclic on R^" +
                           std::to_string(alg.n));
  }
  const int n = alg.n;
  const int k = table.kappa0;

  std::vector<Matrix> bs = ker_exp_generators(alg, table);
  RealSpanTracker span(n);
  for (const auto& b : bs) {
    if (!span.try_add(b.entries(), alg.tol.rank_tol)) {
      throw NumericalFailure("build_tuple_real: kernel generators are dependent");
    }
  }
  for (int i = 0; i < alg.dim && static_cast<int>(bs.size()) < n; ++i) {
    if (span.try_add(alg.basis[i].entries(), alg.tol.rank_tol)) {
      bs.push_back(alg.basis[i]);
    }
  }
  if (static_cast<int>(bs.size()) != n) {
    throw NumericalFailure("build_tuple_real: could not extend to a basis");
  }

  // sign-group generators occupy the lowest available C slots, the rest are I
  const SignGroup signs = sign_group(alg, table);
  std::vector<Matrix> c_factors;
  for (int j = k; j < n; ++j) {
    const int t = j - k;
    c_factors.push_back(t < static_cast<int>(signs.generators.size())
                            ? signs.generators[t]
                            : Matrix::identity(FieldTag::Real, n));
  }

  // B0 from the group completing generator: bits track which C_j is which
  // sign generator, C_0..C_k are the identity
  std::vector<std::vector<double>> coords;
  std::vector<GroupElement> bits;
  for (int j = 0; j < n; ++j) {
    coords.push_back(real_coordinate_vector(alg, bs[j].entries(), false));
    GroupElement g = GroupElement::identity(signs.m);
    if (j >= k && j - k < signs.m) g.bits[j - k] = 1;
    bits.push_back(std::move(g));
  }
  const IndependentReals alpha = independent_reals(n, scheme);
  const auto [g0, x0] = group_completing_generator(coords, bits, alpha, alg.tol);
  Eigen::VectorXcd b0_coords(alg.dim);
  for (int i = 0; i < alg.dim; ++i) b0_coords(i) = x0[i];
  const Matrix b0 = alg.element(b0_coords);

  TupleSpec tuple;
  tuple.field = FieldTag::Real;
  tuple.n = n;
  tuple.provenance = {algebra_id, Construction::RealMinimal, scheme, seed};
  tuple.predicted_size = n - k + 1;
  tuple.operators.push_back(alg_exp(b0));  // C_0 = I
  for (int j = k; j < n; ++j) {
    tuple.operators.push_back(mat_mul(c_factors[j - k], alg_exp(bs[j])));
  }
  return tuple;
}

namespace {

Matrix block_diag(FieldTag field, const std::vector<Eigen::MatrixXcd>& blocks) {
  int n = 0;
  for (const auto& b : blocks) n += static_cast<int>(b.rows());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  int at = 0;
  for (const auto& b : blocks) {
    m.block(at, at, b.rows(), b.cols()) = b;
    at += static_cast<int>(b.rows());
  }
  return Matrix(field, m);
}

Eigen::MatrixXcd rotation_block(double a, double b) {
  Eigen::MatrixXcd m(2, 2);
  m << a, b, -b, a;
  return m;
}

}  // namespace

std::vector<std::string> gallery_names() {
  return {"diag", "jordan2", "rotation", "rotation_sum", "rotation_sum_odd", "az", "f4"};
}

GalleryEntry gallery(const std::string& name, FieldTag field, int param) {
  GalleryEntry entry;
  entry.name = name;
  if (name == "diag") {
    const int n = param;
    if (n < 1) throw InvalidInput("gallery diag: need n >= 1");
    Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 0; i < n; ++i) d(i, i) = i + 1.0;
    entry.algebra = close_algebra({Matrix(field, d)});
    if (field == FieldTag::Complex) {
      entry.expected_kappa = n;
    } else {
      entry.expected_kappa01 = {0, n};
    }
    entry.notes = "all diagonal operators; exactly n characters over C";
  } else if (name == "jordan2") {
    Eigen::MatrixXcd nil(2, 2);
    nil << 0, 1, 0, 0;
    entry.algebra = close_algebra({Matrix(FieldTag::Complex, nil)});
    entry.expected_kappa = 1;
    entry.notes = "matrices [[a,b],[0,a]] over C; one character";
  } else if (name == "rotation") {
    entry.algebra = close_algebra({Matrix(FieldTag::Real, rotation_block(0, 1))});
    entry.expected_kappa01 = {1, 0};
    entry.notes = "matrices [[a,b],[-b,a]] on R^2; one conjugate pair";
  } else if (name == "rotation_sum") {
    const int m = param;
    if (m < 1) throw InvalidInput("gallery rotation_sum: need m >= 1");
    std::vector<Eigen::MatrixXcd> blocks;
    for (int i = 1; i <= m; ++i) blocks.push_back(rotation_block(i, 1));
    entry.algebra = close_algebra({block_diag(FieldTag::Real, blocks)});
    entry.expected_kappa01 = {m, 0};
    entry.notes = "direct sum of m rotation algebras on R^{2m}";
  } else if (name == "rotation_sum_odd") {
    const int m = param;
    if (m < 0) throw InvalidInput("gallery rotation_sum_odd: need m >= 0");
    std::vector<Eigen::MatrixXcd> blocks;
    blocks.push_back(Eigen::MatrixXcd::Constant(1, 1, -1.0));
    for (int i = 1; i <= m; ++i) blocks.push_back(rotation_block(i, 1));
    entry.algebra = close_algebra({block_diag(FieldTag::Real, blocks)});
    entry.expected_kappa01 = {m, 1};
    entry.notes = "L(R^1) plus m rotation algebras on R^{2m+1}";
  } else if (name == "az") {
    Eigen::MatrixXcd a010 = Eigen::MatrixXcd::Zero(3, 3);
    a010(1, 0) = 1;
    Eigen::MatrixXcd a001 = Eigen::MatrixXcd::Zero(3, 3);
    a001(2, 0) = 1;
    entry.algebra = close_algebra({Matrix(field, a010), Matrix(field, a001)});
    if (field == FieldTag::Complex) {
      entry.expected_kappa = 1;
    } else {
      entry.expected_kappa01 = {0, 1};
    }
    entry.notes = "A_z = [[z1,0,0],[z2,z1,0],[z3,0,z1]]; cyclic vector (1,0,0); "
                  "every commuting operator is non-cyclic";
  } else if (name == "f4") {
    Eigen::MatrixXcd nil(2, 2);
    nil << 0, 1, 0, 0;
    entry.algebra = close_algebra({Matrix(FieldTag::Real, nil)});
    entry.expected_kappa01 = {0, 1};
    entry.notes = "real [[a,b],[0,a]] algebra carrying the half-plane triple; "
                  "see f4_triple for the operators";
  } else {
    throw InvalidInput("unknown gallery name: " + name);
  }
  return entry;
}

GalleryEntry minimal_gallery_for(FieldTag field, int n) {
  if (n < 1) throw InvalidInput("minimal_gallery_for: n must be >= 1");
  if (field == FieldTag::Complex) return gallery("diag", field, n);
  if (n % 2 == 0) return gallery("rotation_sum", field, n / 2);
  return gallery("rotation_sum_odd", field, (n - 1) / 2);
}

TupleSpec f4_triple(double a1, double b1, double a2, double b2, AlphaScheme scheme,
                    const Tolerance& tol) {
  if (!(a1 > 0.0) || !(a2 > 0.0)) throw InvalidInput("f4_triple: a1, a2 must be positive");
  if (b1 == 0.0 || b2 == 0.0) throw InvalidInput("f4_triple: b1, b2 must be nonzero");
  const double v1x = b1 / a1, v1y = std::log(a1);
  const double v2x = b2 / a2, v2y = std::log(a2);
  const double det = v1x * v2y - v1y * v2x;
  if (std::abs(det) < tol.rank_tol) {
    throw DependentVectors("f4_triple: (b1/a1, ln a1) and (b2/a2, ln a2) are dependent");
  }
  const IndependentReals alpha = independent_reals(2, scheme);
  const std::vector<double> v3 =
      completing_generator({{v1x, v1y}, {v2x, v2y}}, alpha, tol);
  const double a3 = std::exp(v3[1]);
  const double b3 = a3 * v3[0];

  TupleSpec tuple;
  tuple.field = FieldTag::Real;
  tuple.n = 2;
  tuple.provenance = {"f4", Construction::Gallery, scheme, 0};
  tuple.predicted_size = 3;
  for (auto [a, b] : {std::pair{a1, b1}, std::pair{a2, b2}, std::pair{a3, b3}}) {
    Eigen::MatrixXcd t(2, 2);
    t << a, b, 0, a;
    tuple.operators.push_back(Matrix(FieldTag::Real, t));
  }
  return tuple;
}

std::optional<std::size_t> two_dim_cyclic_member(const TupleSpec& tuple, const Tolerance& tol) {
  if (tuple.n != 2) throw InvalidInput("two_dim_cyclic_member: tuple must act on K^2");
  for (std::size_t i = 0; i < tuple.operators.size(); ++i) {
    const Eigen::MatrixXcd& t = tuple.operators[i].entries();
    const std::complex<double> mean = t.trace() / 2.0;
    if (max_abs(t - mean * Eigen::MatrixXcd::Identity(2, 2)) > tol.eq_tol) return i;
  }
  return std::nullopt;  // AllScalar: the tuple cannot be hypercyclic
}

}  // namespace hypertuple
