#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <complex>

#include "hypertuple/numkit.hpp"

using namespace hypertuple;
using cplx = std::complex<double>;

namespace {

Matrix from_rows(FieldTag f, std::initializer_list<std::initializer_list<cplx>> rows) {
  const int n = static_cast<int>(rows.size());
  Eigen::MatrixXcd m(n, n);
  int i = 0;
  for (const auto& row : rows) {
    int j = 0;
    for (const auto& v : row) m(i, j++) = v;
    ++i;
  }
  return Matrix(f, m);
}

Matrix random_matrix(FieldTag f, int n, Rng& rng) {
  Eigen::MatrixXcd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      m(i, j) = f == FieldTag::Complex ? rng.complex_sym() : cplx(rng.sym(), 0.0);
  return Matrix(f, m);
}

// greedy multiset matching of eigenvalue lists
double multiset_distance(std::vector<cplx> a, std::vector<cplx> b) {
  REQUIRE(a.size() == b.size());
  double worst = 0.0;
  for (const cplx& va : a) {
    std::size_t best = 0;
    double bestd = 1e300;
    for (std::size_t i = 0; i < b.size(); ++i) {
      const double d = std::abs(va - b[i]);
      if (d < bestd) {
        bestd = d;
        best = i;
      }
    }
    worst = std::max(worst, bestd);
    b.erase(b.begin() + static_cast<long>(best));
  }
  return worst;
}

}  // namespace

TEST_CASE("matrix construction validates invariants") {
  CHECK_THROWS_AS(Matrix(FieldTag::Real, Eigen::MatrixXcd::Constant(2, 2, cplx(0, 1))), InvalidInput);
  CHECK_THROWS_AS(Matrix(FieldTag::Real, Eigen::MatrixXcd::Zero(2, 3)), DimensionMismatch);
  Eigen::MatrixXcd bad = Eigen::MatrixXcd::Zero(2, 2);
  bad(0, 0) = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(Matrix(FieldTag::Complex, bad), InvalidInput);
  CHECK_THROWS_AS(Matrix(FieldTag::Real, Eigen::MatrixXcd::Zero(65, 65)), InvalidInput);
}

TEST_CASE("mat_mul identity, diagonal and nilpotent cases") {
  auto a = from_rows(FieldTag::Complex, {{cplx(1, 2), cplx(0, -1)}, {cplx(3, 0), cplx(4, 4)}});
  auto id = Matrix::identity(FieldTag::Complex, 2);
  CHECK(max_abs(mat_mul(id, a).entries() - a.entries()) == 0.0);

  auto d1 = from_rows(FieldTag::Real, {{2, 0}, {0, 3}});
  auto d2 = from_rows(FieldTag::Real, {{5, 0}, {0, 7}});
  auto prod = mat_mul(d1, d2);
  CHECK(prod(0, 0) == cplx(10, 0));
  CHECK(prod(1, 1) == cplx(21, 0));

  auto nil = from_rows(FieldTag::Real, {{0, 1}, {0, 0}});
  CHECK(max_abs(mat_mul(nil, nil).entries()) == 0.0);

  auto b3 = Matrix::identity(FieldTag::Complex, 3);
  CHECK_THROWS_AS(mat_mul(a, b3), DimensionMismatch);
  CHECK_THROWS_AS(mat_mul(a, mat_mul(d1, d2)), DimensionMismatch);
}

TEST_CASE("mat_inverse basics and singular detection") {
  auto id3 = Matrix::identity(FieldTag::Real, 3);
  CHECK(max_abs(mat_inverse(id3).entries() - id3.entries()) <= 1e-14);

  auto d = from_rows(FieldTag::Real, {{2, 0}, {0, 4}});
  auto di = mat_inverse(d);
  CHECK(std::abs(di(0, 0) - cplx(0.5, 0)) <= 1e-14);
  CHECK(std::abs(di(1, 1) - cplx(0.25, 0)) <= 1e-14);

  CHECK_THROWS_AS(mat_inverse(Matrix::zeros(FieldTag::Complex, 2)), SingularMatrix);
}

TEST_CASE("random inverse residual stays small") {
  Rng rng(1234);
  for (FieldTag f : {FieldTag::Real, FieldTag::Complex}) {
    for (int trial = 0; trial < 25; ++trial) {
      const int n = 2 + static_cast<int>(rng.raw() % 5);
      for (;;) {
        auto a = random_matrix(f, n, rng);
        try {
          auto inv = mat_inverse(a);
          const Eigen::MatrixXcd resid =
              mat_mul(a, inv).entries() - Eigen::MatrixXcd::Identity(n, n);
          CHECK(max_abs(resid) <= 1e-7);
          break;
        } catch (const SingularMatrix&) {
          // regenerate
        }
      }
    }
  }
}

TEST_CASE("eigenvalues of known spectra") {
  auto d = from_rows(FieldTag::Real, {{1, 0, 0}, {0, 2, 0}, {0, 0, 3}});
  auto ev = eigenvalues(d);
  CHECK(multiset_distance(ev, {cplx(1, 0), cplx(2, 0), cplx(3, 0)}) <= 1e-9);

  auto jordan = from_rows(FieldTag::Real, {{1, 1}, {0, 1}});
  CHECK(multiset_distance(eigenvalues(jordan), {cplx(1, 0), cplx(1, 0)}) <= 1e-6);

  auto rot = from_rows(FieldTag::Real, {{0, 1}, {-1, 0}});
  CHECK(multiset_distance(eigenvalues(rot), {cplx(0, 1), cplx(0, -1)}) <= 1e-9);
}

TEST_CASE("eigenvalues invariant under similarity") {
  Rng rng(77);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + static_cast<int>(rng.raw() % 4);
    auto a = random_matrix(FieldTag::Complex, n, rng);
    for (;;) {
      auto s = random_matrix(FieldTag::Complex, n, rng);
      try {
        auto sinv = mat_inverse(s);
        auto conj = mat_mul(mat_mul(s, a), sinv);
        CHECK(multiset_distance(eigenvalues(a), eigenvalues(conj)) <= 1e-5);
        break;
      } catch (const SingularMatrix&) {
      }
    }
  }
}

TEST_CASE("nullspace_basis shapes") {
  Eigen::VectorXcd r0(2), r1(2);
  r0 << 1, 0;
  r1 << 0, 1;
  CHECK(nullspace_basis({r0, r1}, FieldTag::Real).empty());

  Eigen::VectorXcd zero3 = Eigen::VectorXcd::Zero(3);
  CHECK(nullspace_basis({zero3}, FieldTag::Real).size() == 3);

  Eigen::VectorXcd ones(2);
  ones << 1, 1;
  auto basis = nullspace_basis({ones}, FieldTag::Real);
  REQUIRE(basis.size() == 1);
  // proportional to (1, -1)
  CHECK(std::abs(basis[0](0) + basis[0](1)) <= 1e-12);
  CHECK(std::abs(basis[0].norm() - 1.0) <= 1e-12);

  Eigen::VectorXcd shorter(1);
  shorter << 1;
  CHECK_THROWS_AS(nullspace_basis({ones, shorter}, FieldTag::Real), DimensionMismatch);
}

TEST_CASE("krylov_rank on pinned cases") {
  auto id2 = Matrix::identity(FieldTag::Complex, 2);
  Eigen::VectorXcd x(2);
  x << 1, 2;
  CHECK(krylov_rank(id2, x) == 1);

  auto jordan = from_rows(FieldTag::Real, {{1, 1}, {0, 1}});
  Eigen::VectorXcd e2(2);
  e2 << 0, 1;
  CHECK(krylov_rank(jordan, e2) == 2);

  // diag(1,1,2): minimal polynomial (x-1)(x-2). Oracle: exact integer
  // elimination on the Krylov columns of x = (1,1,1) gives rank 2:
  // det [x Ax A^2x] = 0 while the leading 2x2 minor is nonzero.
  {
    const long long col0[3] = {1, 1, 1};
    const long long col1[3] = {1, 1, 2};
    const long long col2[3] = {1, 1, 4};
    const long long det = col0[0] * (col1[1] * col2[2] - col1[2] * col2[1]) -
                          col1[0] * (col0[1] * col2[2] - col0[2] * col2[1]) +
                          col2[0] * (col0[1] * col1[2] - col0[2] * col1[1]);
    const long long minor01 = col0[0] * col1[2] - col0[2] * col1[0];
    REQUIRE(det == 0);
    REQUIRE(minor01 != 0);
  }
  auto d = from_rows(FieldTag::Real, {{1, 0, 0}, {0, 1, 0}, {0, 0, 2}});
  Eigen::VectorXcd g(3);
  g << 1, 1, 1;
  CHECK(krylov_rank(d, g) == 2);
}

TEST_CASE("krylov_rank bounded by minimal polynomial degree") {
  // Jordan structures with known minimal polynomial degree, n <= 4.
  struct Case {
    Matrix m;
    int minpoly_degree;
  };
  std::vector<Case> cases;
  cases.push_back({from_rows(FieldTag::Real, {{1, 0}, {0, 1}}), 1});
  cases.push_back({from_rows(FieldTag::Real, {{1, 1}, {0, 1}}), 2});
  cases.push_back({from_rows(FieldTag::Real, {{2, 1, 0}, {0, 2, 0}, {0, 0, 2}}), 2});
  cases.push_back({from_rows(FieldTag::Real, {{2, 1, 0}, {0, 2, 1}, {0, 0, 2}}), 3});
  cases.push_back({from_rows(FieldTag::Real,
                             {{3, 1, 0, 0}, {0, 3, 0, 0}, {0, 0, 5, 1}, {0, 0, 0, 5}}),
                   4});
  Rng rng(9);
  for (const auto& c : cases) {
    for (int t = 0; t < 8; ++t) {
      Eigen::VectorXcd x(c.m.n());
      for (int i = 0; i < c.m.n(); ++i) x(i) = cplx(rng.sym(), 0);
      CHECK(krylov_rank(c.m, x) <= c.minpoly_degree);
    }
  }
}
