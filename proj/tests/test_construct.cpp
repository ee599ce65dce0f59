#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hypertuple/construct.hpp"

using namespace hypertuple;
using cplx = std::complex<double>;

namespace {

void check_tuple_wellformed(const TupleSpec& tuple, const CommutativeAlgebra& alg) {
  // pairwise commutators
  for (std::size_t i = 0; i < tuple.operators.size(); ++i) {
    for (std::size_t j = i + 1; j < tuple.operators.size(); ++j) {
      CHECK(max_abs(tuple.operators[i].entries() * tuple.operators[j].entries() -
                    tuple.operators[j].entries() * tuple.operators[i].entries()) <= 1e-8);
    }
  }
  // invertibility and membership in the source algebra
  for (const auto& op : tuple.operators) {
    CHECK_NOTHROW(mat_inverse(op));
    double resid = 0.0;
    alg.coordinates(op.entries(), &resid);
    CHECK(resid <= 1e-8 * std::max(1.0, max_abs(op.entries())));
  }
  CHECK(static_cast<int>(tuple.operators.size()) == tuple.predicted_size);
}

}  // namespace

TEST_CASE("min_tuple_size formulas") {
  CHECK(min_tuple_size(FieldTag::Complex, 3) == 4);
  CHECK(min_tuple_size(FieldTag::Real, 2) == 2);
  CHECK(min_tuple_size(FieldTag::Real, 3) == 3);
  for (int n = 1; n <= 6; ++n) {
    CHECK(min_tuple_size(FieldTag::Complex, n) == n + 1);
    const int expected = n % 2 == 0 ? n / 2 + 1 : (n + 3) / 2;
    CHECK(min_tuple_size(FieldTag::Real, n) == expected);
  }
  CHECK_THROWS_AS(min_tuple_size(FieldTag::Real, 0), InvalidInput);
}

TEST_CASE("gallery character counts") {
  Tolerance tol;
  struct Expect {
    std::string name;
    FieldTag field;
    int param;
    int kappa, kappa0, kappa1;
  };
  const std::vector<Expect> cases = {
      {"diag", FieldTag::Complex, 3, 3, 0, 0},   {"jordan2", FieldTag::Complex, 0, 1, 0, 0},
      {"rotation", FieldTag::Real, 0, 2, 1, 0},  {"rotation_sum", FieldTag::Real, 2, 4, 2, 0},
      {"rotation_sum_odd", FieldTag::Real, 1, 3, 1, 1}, {"az", FieldTag::Complex, 0, 1, 0, 0},
      {"az", FieldTag::Real, 0, 1, 0, 1},        {"f4", FieldTag::Real, 0, 1, 0, 1},
  };
  for (const auto& c : cases) {
    CAPTURE(c.name);
    auto entry = gallery(c.name, c.field, c.param);
    auto table = compute_characters(entry.algebra, tol, 1);
    CHECK(table.kappa == c.kappa);
    if (entry.algebra.field == FieldTag::Real) {
      CHECK(table.kappa0 == c.kappa0);
      CHECK(table.kappa1 == c.kappa1);
    }
    CHECK(find_cyclic_vector(entry.algebra, 64, 3).has_value() == entry.expected_cyclic);
  }
  CHECK_THROWS_AS(gallery("nope"), InvalidInput);

  // az has cyclic vector (1,0,0)
  auto az = gallery("az", FieldTag::Complex);
  Eigen::VectorXcd e1 = Eigen::VectorXcd::Zero(3);
  e1(0) = 1;
  Eigen::MatrixXcd cols(3, az.algebra.dim);
  for (int i = 0; i < az.algebra.dim; ++i) cols.col(i) = az.algebra.basis[i].entries() * e1;
  CHECK(numeric_rank(cols, 1e-8) == 3);
}

TEST_CASE("build_tuple_complex sizes and structure") {
  Tolerance tol;
  // the C^1 case: 2 operators from C * I
  auto line = gallery("diag", FieldTag::Complex, 1);
  auto tline = compute_characters(line.algebra, tol, 42);
  auto tuple1 = build_tuple_complex(line.algebra, tline, AlphaScheme::SqrtPrimes, 42, "diag");
  CHECK(tuple1.operators.size() == 2);
  check_tuple_wellformed(tuple1, line.algebra);
  // e^{B0} = e^{-sqrt3 - 2 sqrt2 pi i}, e^{B2} = e
  CHECK(std::abs(std::abs(tuple1.operators[0](0, 0)) - std::exp(-std::sqrt(3.0))) <= 1e-9);
  CHECK(std::abs(tuple1.operators[1](0, 0) - std::exp(1.0)) <= 1e-9);

  // diag(n, C) gives exactly n+1 operators for n <= 4
  for (int n = 2; n <= 4; ++n) {
    auto entry = gallery("diag", FieldTag::Complex, n);
    auto table = compute_characters(entry.algebra, tol, 42);
    auto tuple = build_tuple_complex(entry.algebra, table, AlphaScheme::SqrtPrimes, 42, "diag");
    CHECK(static_cast<int>(tuple.operators.size()) == n + 1);
    CHECK(tuple.predicted_size == min_tuple_size(FieldTag::Complex, n));
    check_tuple_wellformed(tuple, entry.algebra);
  }

  // az over C: 6 operators (m = 2*3 - 1 + 1)
  auto az = gallery("az", FieldTag::Complex);
  auto taz = compute_characters(az.algebra, tol, 42);
  auto taztuple = build_tuple_complex(az.algebra, taz, AlphaScheme::SqrtPrimes, 42, "az");
  CHECK(taztuple.operators.size() == 6);
  check_tuple_wellformed(taztuple, az.algebra);

  // non-cyclic algebra is rejected
  auto scalars = close_algebra({Matrix::identity(FieldTag::Complex, 2)});
  auto tscal = compute_characters(scalars, tol, 1);
  CHECK_THROWS_AS(build_tuple_complex(scalars, tscal, AlphaScheme::SqrtPrimes, 1, "x"),
                  NotCyclicAlgebra);
}

TEST_CASE("build_tuple_real sizes and structure") {
  Tolerance tol;
  // A_1: 2 operators (r = 2 - 1 + 1)
  auto rot = gallery("rotation", FieldTag::Real);
  auto trot = compute_characters(rot.algebra, tol, 42);
  auto rtuple = build_tuple_real(rot.algebra, trot, AlphaScheme::SqrtPrimes, 42, "rotation");
  CHECK(rtuple.operators.size() == 2);
  check_tuple_wellformed(rtuple, rot.algebra);

  // az over R: 4 operators, one of them carrying the -I sign factor
  auto az = gallery("az", FieldTag::Real);
  auto taz = compute_characters(az.algebra, tol, 42);
  auto aztuple = build_tuple_real(az.algebra, taz, AlphaScheme::SqrtPrimes, 42, "az");
  CHECK(aztuple.operators.size() == 4);
  check_tuple_wellformed(aztuple, az.algebra);

  // rotation sums hit the Corollary counts for n <= 5
  for (int n = 1; n <= 5; ++n) {
    auto entry = minimal_gallery_for(FieldTag::Real, n);
    auto table = compute_characters(entry.algebra, tol, 42);
    auto tuple = build_tuple_real(entry.algebra, table, AlphaScheme::SqrtPrimes, 42, entry.name);
    CHECK(static_cast<int>(tuple.operators.size()) == min_tuple_size(FieldTag::Real, n));
    check_tuple_wellformed(tuple, entry.algebra);
  }
}

TEST_CASE("f4_triple") {
  auto tuple = f4_triple(2.0, 1.0, 0.5, 1.0);
  REQUIRE(tuple.operators.size() == 3);

  // derived check: the defining vectors are independent
  const double det = 0.5 * (-std::log(2.0)) - 2.0 * std::log(2.0);
  REQUIRE(std::abs(det) > 1e-8);

  // a3 = 2^{sqrt3 - sqrt2}, b3 = a3 (-sqrt2/2 - 2 sqrt3)
  const double a3 = std::exp((std::sqrt(3.0) - std::sqrt(2.0)) * std::log(2.0));
  const double b3 = a3 * (-std::sqrt(2.0) * 0.5 - std::sqrt(3.0) * 2.0);
  CHECK(tuple.operators[2](0, 0).real() == doctest::Approx(a3).epsilon(1e-12));
  CHECK(tuple.operators[2](0, 1).real() == doctest::Approx(b3).epsilon(1e-12));
  CHECK(tuple.operators[2](0, 0).real() > 0.0);
  CHECK(tuple.operators[2](0, 1).real() != 0.0);

  // every member is non-diagonalizable: (T - aI) is nonzero with square zero
  for (const auto& op : tuple.operators) {
    const Eigen::MatrixXcd nil =
        op.entries() - op(0, 0) * Eigen::MatrixXcd::Identity(2, 2);
    CHECK(max_abs(nil) > 0.0);
    CHECK(max_abs(Eigen::MatrixXcd(nil * nil)) == 0.0);
  }

  // proportional vectors are rejected: (b2/a2, ln a2) = 2 (b1/a1, ln a1)
  CHECK_THROWS_AS(f4_triple(2.0, 1.0, 4.0, 4.0), DependentVectors);
}

TEST_CASE("two_dim_cyclic_member") {
  TupleSpec t;
  t.field = FieldTag::Complex;
  t.n = 2;
  Eigen::MatrixXcd jordan(2, 2);
  jordan << 1, 1, 0, 1;
  t.operators.push_back(Matrix(FieldTag::Complex, 2.0 * Eigen::MatrixXcd::Identity(2, 2)));
  t.operators.push_back(Matrix(FieldTag::Complex, jordan));
  t.predicted_size = 2;
  auto idx = two_dim_cyclic_member(t);
  REQUIRE(idx.has_value());
  CHECK(*idx == 1);

  TupleSpec scalars;
  scalars.field = FieldTag::Complex;
  scalars.n = 2;
  scalars.operators.push_back(Matrix::identity(FieldTag::Complex, 2));
  scalars.operators.push_back(Matrix(FieldTag::Complex, 3.0 * Eigen::MatrixXcd::Identity(2, 2)));
  CHECK_FALSE(two_dim_cyclic_member(scalars).has_value());

  // constructed 2-tuple from A_1 has a non-scalar member
  auto rot = gallery("rotation", FieldTag::Real);
  auto table = compute_characters(rot.algebra, Tolerance{}, 7);
  auto rtuple = build_tuple_real(rot.algebra, table, AlphaScheme::SqrtPrimes, 7, "rotation");
  CHECK(two_dim_cyclic_member(rtuple).has_value());
}
