#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "hypertuple/expmap.hpp"

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

Matrix scalar1(FieldTag f, cplx v) { return from_rows(f, {{v}}); }

CommutativeAlgebra line_algebra(FieldTag f) { return close_algebra({}, Tolerance{}, 1, f); }

CommutativeAlgebra rotation_algebra() {
  return close_algebra({from_rows(FieldTag::Real, {{0, 1}, {-1, 0}})});
}

CommutativeAlgebra az_algebra(FieldTag f) {
  auto a010 = from_rows(f, {{0, 0, 0}, {1, 0, 0}, {0, 0, 0}});
  auto a001 = from_rows(f, {{0, 0, 0}, {0, 0, 0}, {1, 0, 0}});
  return close_algebra({a010, a001});
}

Eigen::VectorXcd random_coeffs(FieldTag f, int d, Rng& rng) {
  Eigen::VectorXcd c(d);
  for (int i = 0; i < d; ++i)
    c(i) = f == FieldTag::Complex ? rng.complex_sym() : cplx(rng.sym(), 0.0);
  return c;
}

}  // namespace

TEST_CASE("alg_exp pinned values") {
  CHECK(max_abs(alg_exp(Matrix::zeros(FieldTag::Real, 3)).entries() -
                Eigen::MatrixXcd::Identity(3, 3)) <= 1e-15);

  auto d = from_rows(FieldTag::Real, {{std::log(2.0), 0}, {0, std::log(3.0)}});
  auto ed = alg_exp(d);
  CHECK(std::abs(ed(0, 0) - 2.0) <= 1e-12);
  CHECK(std::abs(ed(1, 1) - 3.0) <= 1e-12);

  auto nil = from_rows(FieldTag::Real, {{0, 1}, {0, 0}});
  auto en = alg_exp(nil);
  CHECK(std::abs(en(0, 0) - 1.0) <= 1e-15);
  CHECK(std::abs(en(0, 1) - 1.0) <= 1e-15);
  CHECK(std::abs(en(1, 0)) == 0.0);
}

TEST_CASE("alg_exp is a homomorphism on commuting pairs") {
  Rng rng(321);
  for (int trial = 0; trial < 10; ++trial) {
    const FieldTag f = trial % 2 == 0 ? FieldTag::Complex : FieldTag::Real;
    const int n = 2 + static_cast<int>(rng.raw() % 3);
    Eigen::MatrixXcd g(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        g(i, j) = f == FieldTag::Complex ? rng.complex_sym() : cplx(rng.sym(), 0.0);
    auto alg = close_algebra({Matrix(f, g)});
    auto a = alg.element(random_coeffs(f, alg.dim, rng));
    auto b = alg.element(random_coeffs(f, alg.dim, rng));
    auto lhs = alg_exp(Matrix(f, a.entries() + b.entries()));
    auto rhs = mat_mul(alg_exp(a), alg_exp(b));
    CHECK(max_abs(lhs.entries() - rhs.entries()) <= 1e-7);
  }
}

TEST_CASE("alg_log pinned values") {
  // log I = 0 in the diagonal algebra
  auto diag = close_algebra({from_rows(FieldTag::Complex, {{2, 0}, {0, 3}})});
  auto table = compute_characters(diag, Tolerance{}, 5);
  auto zero = alg_log(diag, Matrix::identity(FieldTag::Complex, 2), std::nullopt, &table);
  CHECK(max_abs(zero.entries()) <= 1e-9);

  // diag(2,3) with the cut along the negative real axis -> diag(ln2, ln3)
  auto b = alg_log(diag, from_rows(FieldTag::Complex, {{2, 0}, {0, 3}}), BranchCut{M_PI}, &table);
  CHECK(std::abs(b(0, 0) - std::log(2.0)) <= 1e-9);
  CHECK(std::abs(b(1, 1) - std::log(3.0)) <= 1e-9);

  // a = -I in C * I on C^1: branch determined by the auto cut; the contract
  // is the exp roundtrip, not a specific branch value
  auto line = line_algebra(FieldTag::Complex);
  auto tline = compute_characters(line, Tolerance{}, 5);
  auto minus = scalar1(FieldTag::Complex, -1.0);
  auto lg = alg_log(line, minus, std::nullopt, &tline);
  CHECK(max_abs(alg_exp(lg).entries() - minus.entries()) <= 1e-9);
  CHECK(std::abs(std::abs(lg(0, 0).imag()) - M_PI) <= 1e-9);

  // explicit cut through the spectrum is rejected
  CHECK_THROWS_AS(alg_log(line, minus, BranchCut{M_PI}, &tline), RayHitsSpectrum);
  // singular element
  CHECK_THROWS_AS(alg_log(diag, Matrix::zeros(FieldTag::Complex, 2), std::nullopt, &table),
                  NotInvertible);
  // element outside the algebra
  CHECK_THROWS_AS(
      alg_log(diag, from_rows(FieldTag::Complex, {{1, 1}, {0, 1}}), std::nullopt, &table),
      NotInAlgebra);
}

TEST_CASE("exp-log roundtrip on random algebra elements") {
  Rng rng(777);
  Tolerance tol;
  for (int trial = 0; trial < 6; ++trial) {
    const FieldTag f = trial % 2 == 0 ? FieldTag::Complex : FieldTag::Real;
    const int n = 2 + static_cast<int>(rng.raw() % 3);
    Eigen::MatrixXcd g(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        g(i, j) = f == FieldTag::Complex ? rng.complex_sym() : cplx(rng.sym(), 0.0);
    auto alg = close_algebra({Matrix(f, g)});
    auto table = compute_characters(alg, tol, 99 + trial);
    int done = 0;
    while (done < 50) {
      auto a = alg.element(random_coeffs(f, alg.dim, rng));
      try {
        if (f == FieldTag::Real) {
          auto pre = has_exp_preimage(alg, a, table);
          if (!pre.exists) continue;
          CHECK(max_abs(alg_exp(*pre.witness).entries() - a.entries()) <=
                1e-7 * std::max(1.0, max_abs(a.entries())));
        } else {
          auto b = alg_log(alg, a, std::nullopt, &table);
          CHECK(max_abs(alg_exp(b).entries() - a.entries()) <=
                1e-7 * std::max(1.0, max_abs(a.entries())));
        }
        ++done;
      } catch (const NotInvertible&) {
        // rare; draw again
      }
    }
  }
}

TEST_CASE("ker_exp_generators") {
  // C * I on C^1: single generator 2 pi i
  auto line = line_algebra(FieldTag::Complex);
  auto tline = compute_characters(line, Tolerance{}, 1);
  auto kline = ker_exp_generators(line, tline);
  REQUIRE(kline.size() == 1);
  CHECK(std::abs(kline[0](0, 0) - cplx(0, 2 * M_PI)) <= 1e-9);

  // A_0: single character with p = I
  auto a0 = close_algebra({from_rows(FieldTag::Complex, {{0, 1}, {0, 0}})});
  auto t0 = compute_characters(a0, Tolerance{}, 1);
  auto k0 = ker_exp_generators(a0, t0);
  REQUIRE(k0.size() == 1);
  CHECK(max_abs(k0[0].entries() - cplx(0, 2 * M_PI) * Eigen::MatrixXcd::Identity(2, 2)) <= 1e-7);

  // A_1 on R^2: 2 pi J up to sign; oracle is the direct exponential
  auto rot = rotation_algebra();
  auto trot = compute_characters(rot, Tolerance{}, 1);
  auto krot = ker_exp_generators(rot, trot);
  REQUIRE(krot.size() == 1);
  Eigen::MatrixXcd j(2, 2);
  j << 0, 1, -1, 0;
  const double plus = max_abs(krot[0].entries() - 2 * M_PI * j);
  const double minus = max_abs(krot[0].entries() + 2 * M_PI * j);
  CHECK(std::min(plus, minus) <= 1e-7);

  // every kernel generator exponentiates to the identity; generators are
  // linearly independent as n^2-vectors
  for (const auto& alg_table : {std::make_pair(&line, &tline), std::make_pair(&rot, &trot)}) {
    auto gens = ker_exp_generators(*alg_table.first, *alg_table.second);
    Eigen::MatrixXcd cols(alg_table.first->n * alg_table.first->n, gens.size());
    for (std::size_t i = 0; i < gens.size(); ++i) {
      CHECK(max_abs(alg_exp(gens[i]).entries() -
                    Eigen::MatrixXcd::Identity(gens[i].n(), gens[i].n())) <= 1e-6);
      cols.col(i) = Eigen::Map<const Eigen::VectorXcd>(gens[i].entries().data(),
                                                       gens[i].entries().size());
    }
    CHECK(numeric_rank(cols, 1e-8) == static_cast<int>(gens.size()));
  }
}

TEST_CASE("sign_group") {
  auto rot = rotation_algebra();
  auto trot = compute_characters(rot, Tolerance{}, 1);
  auto grot = sign_group(rot, trot);
  CHECK(grot.m == 0);
  CHECK(grot.generators.empty());

  auto diag = close_algebra({from_rows(FieldTag::Real, {{1, 0}, {0, 2}})});
  auto tdiag = compute_characters(diag, Tolerance{}, 1);
  auto gdiag = sign_group(diag, tdiag);
  REQUIRE(gdiag.m == 2);
  REQUIRE(gdiag.generators.size() == 2);
  for (const auto& g : gdiag.generators) {
    CHECK(max_abs(mat_mul(g, g).entries() - Eigen::MatrixXcd::Identity(2, 2)) <= 1e-7);
    CHECK(std::abs(std::abs(g(0, 0).real()) - 1.0) <= 1e-7);  // diag(+-1, +-1)
    CHECK(std::abs(g(0, 1)) <= 1e-7);
    // commutes with every basis element
    for (const auto& b : diag.basis) {
      CHECK(max_abs(g.entries() * b.entries() - b.entries() * g.entries()) <= 1e-7);
    }
  }

  // A_z over R: single real character with p = I, so the generator is -I
  auto az = az_algebra(FieldTag::Real);
  auto taz = compute_characters(az, Tolerance{}, 1);
  auto gaz = sign_group(az, taz);
  REQUIRE(gaz.m == 1);
  CHECK(max_abs(gaz.generators[0].entries() + Eigen::MatrixXcd::Identity(3, 3)) <= 1e-7);
  CHECK(max_abs(mat_mul(gaz.generators[0], gaz.generators[0]).entries() -
                Eigen::MatrixXcd::Identity(3, 3)) <= 1e-9);

  auto line = line_algebra(FieldTag::Complex);
  auto tline = compute_characters(line, Tolerance{}, 1);
  CHECK_THROWS_AS(sign_group(line, tline), ComplexFieldError);
}

TEST_CASE("has_exp_preimage") {
  auto line = line_algebra(FieldTag::Real);
  auto tline = compute_characters(line, Tolerance{}, 1);

  auto pos = has_exp_preimage(line, scalar1(FieldTag::Real, 4.0), tline);
  REQUIRE(pos.exists);
  CHECK(std::abs((*pos.witness)(0, 0).real() - std::log(4.0)) <= 1e-9);

  auto neg = has_exp_preimage(line, scalar1(FieldTag::Real, -1.0), tline);
  CHECK_FALSE(neg.exists);

  // rotation by pi has a real logarithm despite being -I (kappa1 = 0)
  auto rot = rotation_algebra();
  auto trot = compute_characters(rot, Tolerance{}, 1);
  auto rpi = has_exp_preimage(rot, from_rows(FieldTag::Real, {{-1, 0}, {0, -1}}), trot);
  REQUIRE(rpi.exists);
  CHECK(max_abs(alg_exp(*rpi.witness).entries() + Eigen::MatrixXcd::Identity(2, 2)) <= 1e-9);
  Eigen::MatrixXcd j(2, 2);
  j << 0, 1, -1, 0;
  const double dplus = max_abs(rpi.witness->entries() - M_PI * j);
  const double dminus = max_abs(rpi.witness->entries() + M_PI * j);
  CHECK(std::min(dplus, dminus) <= 1e-9);

  // negative real-character value blocks the real log
  auto diag = close_algebra({from_rows(FieldTag::Real, {{1, 0}, {0, 2}})});
  auto tdiag = compute_characters(diag, Tolerance{}, 1);
  CHECK_FALSE(has_exp_preimage(diag, from_rows(FieldTag::Real, {{-2, 0}, {0, 3}}), tdiag).exists);
  CHECK_THROWS_AS(alg_log(diag, from_rows(FieldTag::Real, {{-2, 0}, {0, 3}}), std::nullopt, &tdiag),
                  NoRealLog);
}

TEST_CASE("real factorization through the sign group") {
  // every invertible element of a real algebra is g * exp(b) for some sign
  // element g: flip the sign of each negative real character value
  Rng rng(1606);
  Eigen::MatrixXcd gen(3, 3);
  gen << 1, 0, 0, 0, -2, 1, 0, 0, -2;  // eigenvalues 1, -2, -2 (Jordan block)
  auto alg = close_algebra({Matrix(FieldTag::Real, gen.real().cast<cplx>())});
  auto table = compute_characters(alg, Tolerance{}, 2);
  auto signs = sign_group(alg, table);
  REQUIRE(signs.m == table.kappa1);
  int checked = 0;
  while (checked < 50) {
    auto a = alg.element(random_coeffs(FieldTag::Real, alg.dim, rng));
    const Eigen::VectorXcd coords = alg.coordinates(a.entries());
    bool invertible = true;
    Eigen::MatrixXcd flip = Eigen::MatrixXcd::Identity(3, 3);
    int sign_index = 0;
    for (int c = 0; c < table.kappa; ++c) {
      const cplx v = character_value(table, c, coords);
      if (std::abs(v) < 1e-6) invertible = false;
      if (table.characters[c].kind == CharacterKind::RealValued) {
        if (v.real() < 0.0) flip = flip * signs.generators[sign_index].entries();
        ++sign_index;
      }
    }
    if (!invertible) continue;
    Matrix ga(FieldTag::Real, (flip * a.entries()).real().cast<cplx>());
    CHECK(has_exp_preimage(alg, ga, table).exists);
    ++checked;
  }
}
