#ifndef HYPERTUPLE_SEMIGROUP_HPP
#define HYPERTUPLE_SEMIGROUP_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "hypertuple/numkit.hpp"

namespace hypertuple {

enum class AlphaScheme { SqrtPrimes, LogPrimes, User };

const char* alpha_scheme_name(AlphaScheme s);

// Positive reals that are linearly independent over Q as exact reals.
// In floating point they are surrogates: density statements about the
// semigroups built from them are verified only through finite-budget
// coverage experiments, never proved.
struct IndependentReals {
  std::vector<double> values;
  AlphaScheme scheme = AlphaScheme::SqrtPrimes;

  int d() const { return static_cast<int>(values.size()); }
};

std::vector<long long> first_primes(int count);

IndependentReals independent_reals(int d, AlphaScheme scheme,
                                   std::vector<double> user_values = {});

struct KroneckerSolution {
  long long m0 = 0;
  std::vector<long long> m;
  double error = 0.0;
};

// found=false wraps the best-error candidate (NotFound is a value).
struct KroneckerResult {
  bool found = false;
  KroneckerSolution best;
};

// Exhaustive scan over m0 = 0..m0_max with m[l] = round(x[l] + m0*alpha[l])
// clamped at 0; returns the first candidate with sup-norm error <= eps.
// The scan is simultaneously the algorithm and its own oracle.
KroneckerResult kronecker_approx(const IndependentReals& alpha, const std::vector<double>& x,
                                 double eps, long long m0_max);

// x0 = -(alpha_1 x_1 + ... + alpha_d x_d); the semigroup generated by
// {x0, basis...} is dense in R^d as an exact-real statement.
std::vector<double> completing_generator(const std::vector<std::vector<double>>& basis,
                                         const IndependentReals& alpha,
                                         const Tolerance& tol = {});

// Element of Z_2^m in additive notation.
struct GroupElement {
  std::vector<std::uint8_t> bits;

  int m() const { return static_cast<int>(bits.size()); }
  static GroupElement identity(int m) { return GroupElement{std::vector<std::uint8_t>(m, 0)}; }
};

// Returns (g0, x0) with g0 the identity of Z_2^m; pairing (g0, x0) with
// (group_gens[i], basis[i]) yields a generator list of a dense subsemigroup
// of Z_2^m x R^d. group_gens must generate the full group (bit rank m).
std::pair<GroupElement, std::vector<double>> group_completing_generator(
    const std::vector<std::vector<double>>& basis, const std::vector<GroupElement>& group_gens,
    const IndependentReals& alpha, const Tolerance& tol = {});

enum class SubgroupVerdict { ProperSubspace, FullRankLattice, Overdetermined };

const char* subgroup_verdict_name(SubgroupVerdict v);

struct SubgroupClassification {
  SubgroupVerdict verdict = SubgroupVerdict::ProperSubspace;
  int span_rank = 0;
};

// Rank-based trichotomy for the additive subgroup generated by the given
// vectors: rank < d is nowhere dense inside a proper subspace, k = d = rank
// is a discrete lattice, k > d = rank leaves density possible.
SubgroupClassification classify_subgroup(const std::vector<std::vector<double>>& generators,
                                         int d, const Tolerance& tol = {});

}  // namespace hypertuple

#endif  // HYPERTUPLE_SEMIGROUP_HPP
