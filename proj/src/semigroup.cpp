#include "hypertuple/semigroup.hpp"

#include <cmath>
#include <limits>

namespace hypertuple {

const char* alpha_scheme_name(AlphaScheme s) {
  switch (s) {
    case AlphaScheme::SqrtPrimes: return "SQRT_PRIMES";
    case AlphaScheme::LogPrimes: return "LOG_PRIMES";
    case AlphaScheme::User: return "USER";
  }
  return "?";
}

std::vector<long long> first_primes(int count) {
  std::vector<long long> primes;
  primes.reserve(count);
  long long candidate = 2;
  while (static_cast<int>(primes.size()) < count) {
    bool is_prime = true;
    for (long long p : primes) {
      if (p * p > candidate) break;
      if (candidate % p == 0) {
        is_prime = false;
        break;
      }
    }
    if (is_prime) primes.push_back(candidate);
    ++candidate;
  }
  return primes;
}

IndependentReals independent_reals(int d, AlphaScheme scheme, std::vector<double> user_values) {
  if (d < 1) throw InvalidInput("independent_reals: d must be >= 1");
  IndependentReals out;
  out.scheme = scheme;
  switch (scheme) {
    case AlphaScheme::SqrtPrimes: {
      for (long long p : first_primes(d)) out.values.push_back(std::sqrt(static_cast<double>(p)));
      break;
    }
    case AlphaScheme::LogPrimes: {
      for (long long p : first_primes(d)) out.values.push_back(std::log(static_cast<double>(p)));
      break;
    }
    case AlphaScheme::User: {
      if (static_cast<int>(user_values.size()) != d) {
        throw InvalidInput("independent_reals: USER scheme requires exactly d values");
      }
      for (double v : user_values) {
        if (!(v > 0.0)) throw InvalidInput("independent_reals: values must be strictly positive");
      }
      out.values = std::move(user_values);
      break;
    }
  }
  return out;
}

KroneckerResult kronecker_approx(const IndependentReals& alpha, const std::vector<double>& x,
                                 double eps, long long m0_max) {
  const int d = alpha.d();
  if (static_cast<int>(x.size()) != d) {
    throw DimensionMismatch("kronecker_approx: target dimension " + std::to_string(x.size()) +
                            " vs alpha dimension " + std::to_string(d));
  }
  if (eps < 0.0) throw InvalidInput("kronecker_approx: eps must be nonnegative");
  if (m0_max < 0) throw InvalidInput("kronecker_approx: m0_max must be nonnegative");

  KroneckerResult result;
  result.best.error = std::numeric_limits<double>::infinity();
  std::vector<long long> m(d);
  for (long long m0 = 0; m0 <= m0_max; ++m0) {
    double err = 0.0;
    for (int l = 0; l < d; ++l) {
      long long ml = std::llround(x[l] + static_cast<double>(m0) * alpha.values[l]);
      if (ml < 0) ml = 0;
      m[l] = ml;
      const double e = std::abs(static_cast<double>(ml) -
                                static_cast<double>(m0) * alpha.values[l] - x[l]);
      if (e > err) err = e;
    }
    if (err < result.best.error) {
      result.best.m0 = m0;
      result.best.m = m;
      result.best.error = err;
    }
    if (err <= eps) {
      result.found = true;
      result.best.m0 = m0;
      result.best.m = m;
      result.best.error = err;
      return result;
    }
  }
  result.found = false;
  return result;
}

namespace {

Eigen::MatrixXd stack_rows(const std::vector<std::vector<double>>& vectors, int d) {
  Eigen::MatrixXd m(vectors.size(), d);
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (static_cast<int>(vectors[i].size()) != d) {
      throw DimensionMismatch("vector " + std::to_string(i) + " has length " +
                              std::to_string(vectors[i].size()) + ", expected " +
                              std::to_string(d));
    }
    for (int j = 0; j < d; ++j) m(i, j) = vectors[i][j];
  }
  return m;
}

int real_rank(const Eigen::MatrixXd& m, double rank_tol) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) <= 0.0) return 0;
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > rank_tol * sv(0)) ++rank;
  }
  return rank;
}

}  // namespace

std::vector<double> completing_generator(const std::vector<std::vector<double>>& basis,
                                         const IndependentReals& alpha, const Tolerance& tol) {
  const int d = alpha.d();
  if (static_cast<int>(basis.size()) != d) {
    throw InvalidInput("completing_generator: need exactly d = " + std::to_string(d) +
                       " basis vectors, got " + std::to_string(basis.size()));
  }
  const Eigen::MatrixXd m = stack_rows(basis, d);
  if (real_rank(m, tol.rank_tol) != d) {
    throw InvalidInput("completing_generator: basis is rank-deficient");
  }
  std::vector<double> x0(d, 0.0);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) x0[j] -= alpha.values[i] * basis[i][j];
  }
  return x0;
}

std::pair<GroupElement, std::vector<double>> group_completing_generator(
    const std::vector<std::vector<double>>& basis, const std::vector<GroupElement>& group_gens,
    const IndependentReals& alpha, const Tolerance& tol) {
  if (group_gens.size() != basis.size()) {
    throw InvalidInput("group_completing_generator: need one group element per basis vector");
  }
  int m = group_gens.empty() ? 0 : group_gens.front().m();
  for (const auto& g : group_gens) {
    if (g.m() != m) throw InvalidInput("group_completing_generator: inconsistent group rank m");
  }
  // bit rank over Z_2 must reach m
  std::vector<std::vector<std::uint8_t>> rows;
  for (const auto& g : group_gens) rows.push_back(g.bits);
  int rank = 0;
  for (int col = 0; col < m; ++col) {
    int pivot = -1;
    for (std::size_t r = rank; r < rows.size(); ++r) {
      if (rows[r][col]) {
        pivot = static_cast<int>(r);
        break;
      }
    }
    if (pivot < 0) continue;
    std::swap(rows[rank], rows[pivot]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (static_cast<int>(r) != rank && rows[r][col]) {
        for (int c = 0; c < m; ++c) rows[r][c] ^= rows[rank][c];
      }
    }
    ++rank;
  }
  if (rank < m) {
    throw InvalidInput("group_completing_generator: group elements do not generate Z_2^" +
                       std::to_string(m));
  }
  return {GroupElement::identity(m), completing_generator(basis, alpha, tol)};
}

const char* subgroup_verdict_name(SubgroupVerdict v) {
  switch (v) {
    case SubgroupVerdict::ProperSubspace: return "PROPER_SUBSPACE";
    case SubgroupVerdict::FullRankLattice: return "FULL_RANK_LATTICE";
    case SubgroupVerdict::Overdetermined: return "OVERDETERMINED";
  }
  return "?";
}

SubgroupClassification classify_subgroup(const std::vector<std::vector<double>>& generators,
                                         int d, const Tolerance& tol) {
  if (d < 1) throw InvalidInput("classify_subgroup: d must be >= 1");
  const int k = static_cast<int>(generators.size());
  const int rank = k == 0 ? 0 : real_rank(stack_rows(generators, d), tol.rank_tol);
  SubgroupClassification out;
  out.span_rank = rank;
  if (rank < d) {
    out.verdict = SubgroupVerdict::ProperSubspace;
  } else if (k == d) {
    out.verdict = SubgroupVerdict::FullRankLattice;
  } else {
    out.verdict = SubgroupVerdict::Overdetermined;
  }
  return out;
}

}  // namespace hypertuple
