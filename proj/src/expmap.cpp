#include "hypertuple/expmap.hpp"

#include <cmath>

namespace hypertuple {

namespace {

constexpr std::uint64_t kInternalTableSeed = 0x5eedu;

}  // namespace

Matrix alg_exp(const Matrix& a) {
  const int n = a.n();
  Eigen::MatrixXcd x = a.entries();
  double norm = max_abs(x);
  int squarings = 0;
  while (norm > 0.5 && squarings < 120) {
    norm *= 0.5;
    ++squarings;
  }
  x /= std::pow(2.0, squarings);

  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Identity(n, n);
  Eigen::MatrixXcd term = Eigen::MatrixXcd::Identity(n, n);
  for (int j = 1; j <= 40; ++j) {
    term = (term * x) / static_cast<double>(j);
    sum += term;
    if (max_abs(term) <= 1e-18 * std::max(1.0, max_abs(sum))) break;
  }
  for (int s = 0; s < squarings; ++s) {
    sum = sum * sum;
    if (!sum.allFinite()) throw NumericalFailure("alg_exp: overflow while squaring");
  }
  if (!sum.allFinite()) throw NumericalFailure("alg_exp: overflow");
  if (a.field() == FieldTag::Real) {
    return Matrix(a.field(), sum.real().cast<std::complex<double>>());
  }
  return Matrix(a.field(), sum);
}

double ray_distance(std::complex<double> z, double angle) {
  const double delta = std::abs(std::remainder(std::arg(z) - angle, 2.0 * M_PI));
  if (delta >= M_PI / 2.0) return std::abs(z);
  return std::abs(z) * std::sin(delta);
}

double auto_branch_angle(const std::vector<std::complex<double>>& spectrum) {
  double best_angle = M_PI;
  double best_score = -1.0;
  for (int k = 0; k < 360; ++k) {
    const double angle = -M_PI + 2.0 * M_PI * k / 360.0;
    double score = std::numeric_limits<double>::infinity();
    for (const auto& z : spectrum) score = std::min(score, ray_distance(z, angle));
    const bool better =
        score > best_score + 1e-15 ||
        (std::abs(score - best_score) <= 1e-15 &&
         (std::abs(angle) < std::abs(best_angle) - 1e-15 ||
          (std::abs(std::abs(angle) - std::abs(best_angle)) <= 1e-15 && angle < best_angle)));
    if (better) {
      best_score = score;
      best_angle = angle;
    }
  }
  return best_angle;
}

namespace {

// log with the branch cut along the ray at `angle`, using the 2 pi window
// that contains arg 0: positive reals always get real logarithms and the cut
// along the negative reals reproduces principal values
std::complex<double> log_with_cut(std::complex<double> z, double angle) {
  const double base = angle >= 0.0 ? angle - 2.0 * M_PI : angle;
  double arg = std::arg(z);
  while (arg >= base + 2.0 * M_PI) arg -= 2.0 * M_PI;
  while (arg < base) arg += 2.0 * M_PI;
  return {std::log(std::abs(z)), arg};
}

}  // namespace

Matrix alg_log(const CommutativeAlgebra& alg, const Matrix& a, std::optional<BranchCut> cut,
               const CharacterTable* table) {
  if (a.n() != alg.n || a.field() != alg.field) {
    throw DimensionMismatch("alg_log: element does not match the algebra's ambient space");
  }
  double resid = 0.0;
  const Eigen::VectorXcd coords = alg.coordinates(a.entries(), &resid);
  if (resid > 1e-8 * std::max(1.0, max_abs(a.entries()))) {
    throw NotInAlgebra("alg_log: projection residual " + std::to_string(resid));
  }

  CharacterTable local;
  if (!table) {
    local = compute_characters(alg, alg.tol, kInternalTableSeed);
    table = &local;
  }
  const int kappa = table->kappa;
  std::vector<std::complex<double>> vals(kappa);
  double scale = 0.0;
  for (int c = 0; c < kappa; ++c) {
    vals[c] = character_value(*table, c, coords);
    scale = std::max(scale, std::abs(vals[c]));
  }
  for (int c = 0; c < kappa; ++c) {
    if (std::abs(vals[c]) <= alg.tol.rank_tol * std::max(1.0, scale)) {
      throw NotInvertible("alg_log: a character vanishes on the element");
    }
  }

  std::vector<std::complex<double>> w(kappa);
  if (alg.field == FieldTag::Complex) {
    double angle;
    if (cut) {
      angle = cut->angle;
      for (const auto& v : vals) {
        if (ray_distance(v, angle) < alg.tol.cluster_tol) {
          throw RayHitsSpectrum("alg_log: explicit cut passes within cluster_tol of chi(a)");
        }
      }
    } else {
      angle = auto_branch_angle(vals);
    }
    for (int c = 0; c < kappa; ++c) w[c] = log_with_cut(vals[c], angle);
  } else {
    // conjugate-symmetric branches keep the result real; the explicit cut
    // parameter is not consulted here
    std::vector<bool> done(kappa, false);
    for (int c = 0; c < kappa; ++c) {
      if (done[c]) continue;
      const auto& chi = table->characters[c];
      if (chi.kind == CharacterKind::RealValued) {
        if (!(vals[c].real() > 0.0)) {
          throw NoRealLog("alg_log: real-valued character is not positive on the element");
        }
        w[c] = std::log(vals[c].real());
        done[c] = true;
      } else {
        if (!chi.partner) throw NumericalFailure("alg_log: unpaired complex character");
        const int p = *chi.partner;
        w[c] = std::log(vals[c]);  // principal
        w[p] = std::conj(w[c]);
        done[c] = done[p] = true;
      }
    }
  }

  const int n = alg.n;
  Eigen::MatrixXcd semisimple = Eigen::MatrixXcd::Zero(n, n);
  for (int c = 0; c < kappa; ++c) semisimple += vals[c] * table->idempotents[c].entries();
  const Eigen::MatrixXcd nil_total = a.entries() - semisimple;

  Eigen::MatrixXcd b = Eigen::MatrixXcd::Zero(n, n);
  for (int c = 0; c < kappa; ++c) {
    b += w[c] * table->idempotents[c].entries();
    // log(1 + m) on the nilpotent corner part m = n_chi / chi(a)
    const Eigen::MatrixXcd m = (nil_total * table->idempotents[c].entries()) / vals[c];
    Eigen::MatrixXcd power = m;
    double sign = 1.0;
    for (int j = 1; j <= alg.dim - 1; ++j) {
      b += (sign / j) * power;
      if (j < alg.dim - 1) {
        power = power * m;
        sign = -sign;
        if (max_abs(power) <= 1e-18) break;
      }
    }
  }

  if (alg.field == FieldTag::Real) {
    const double imag = max_abs_imag(b);
    if (imag > 1e-7) {
      throw NumericalFailure("alg_log: imaginary residue " + std::to_string(imag) +
                             " on a real algebra");
    }
    return Matrix(alg.field, b.real().cast<std::complex<double>>());
  }
  return Matrix(alg.field, b);
}

std::vector<Matrix> ker_exp_generators(const CommutativeAlgebra& alg,
                                       const CharacterTable& table) {
  const std::complex<double> two_pi_i(0.0, 2.0 * M_PI);
  std::vector<Matrix> gens;
  if (alg.field == FieldTag::Complex) {
    for (const auto& p : table.idempotents) {
      gens.push_back(Matrix(FieldTag::Complex, two_pi_i * p.entries()));
    }
    return gens;
  }
  for (int c = 0; c < table.kappa; ++c) {
    const auto& chi = table.characters[c];
    if (chi.kind != CharacterKind::ComplexPairMember || !chi.partner || *chi.partner < c) {
      continue;  // one generator per pair, taken at the lower index
    }
    const Eigen::MatrixXcd k =
        two_pi_i * (table.idempotents[c].entries() - table.idempotents[*chi.partner].entries());
    const double imag = max_abs_imag(k);
    if (imag > 1e-7) {
      throw NumericalFailure("ker_exp_generators: imaginary residue " + std::to_string(imag));
    }
    gens.push_back(Matrix(FieldTag::Real, k.real().cast<std::complex<double>>()));
  }
  return gens;
}

SignGroup sign_group(const CommutativeAlgebra& alg, const CharacterTable& table) {
  if (alg.field != FieldTag::Real) {
    throw ComplexFieldError("sign_group is defined for real algebras only");
  }
  SignGroup g;
  g.m = table.kappa1;
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(alg.n, alg.n);
  for (int c = 0; c < table.kappa; ++c) {
    if (table.characters[c].kind != CharacterKind::RealValued) continue;
    const Eigen::MatrixXcd b = id - 2.0 * table.idempotents[c].entries();
    const double imag = max_abs_imag(b);
    if (imag > 1e-7) {
      throw NumericalFailure("sign_group: imaginary residue " + std::to_string(imag));
    }
    g.generators.push_back(Matrix(FieldTag::Real, b.real().cast<std::complex<double>>()));
  }
  return g;
}

ExpPreimage has_exp_preimage(const CommutativeAlgebra& alg, const Matrix& a,
                             const CharacterTable& table) {
  double resid = 0.0;
  const Eigen::VectorXcd coords = alg.coordinates(a.entries(), &resid);
  if (resid > 1e-8 * std::max(1.0, max_abs(a.entries()))) {
    throw NotInAlgebra("has_exp_preimage: projection residual " + std::to_string(resid));
  }
  double scale = 0.0;
  std::vector<std::complex<double>> vals(table.kappa);
  for (int c = 0; c < table.kappa; ++c) {
    vals[c] = character_value(table, c, coords);
    scale = std::max(scale, std::abs(vals[c]));
  }
  for (const auto& v : vals) {
    if (std::abs(v) <= alg.tol.rank_tol * std::max(1.0, scale)) return {false, std::nullopt};
  }
  if (alg.field == FieldTag::Real) {
    for (int c = 0; c < table.kappa; ++c) {
      if (table.characters[c].kind == CharacterKind::RealValued && !(vals[c].real() > 0.0)) {
        return {false, std::nullopt};
      }
    }
  }
  return {true, alg_log(alg, a, std::nullopt, &table)};
}

}  // namespace hypertuple
