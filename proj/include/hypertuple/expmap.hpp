#ifndef HYPERTUPLE_EXPMAP_HPP
#define HYPERTUPLE_EXPMAP_HPP

#include <optional>
#include <vector>

#include "hypertuple/algebra.hpp"

namespace hypertuple {

// Direction of the ray L = {t e^{i angle} : t >= 0} excluded by a branch of
// the logarithm. The ray must clear the character values of the argument by
// at least cluster_tol.
struct BranchCut {
  double angle = 0.0;  // in (-pi, pi]
};

// Matrix exponential by scaling-and-squaring with a series core.
Matrix alg_exp(const Matrix& a);

// Logarithm inside the algebra through the character/nilpotent decomposition
// a = sum (chi(a) p_chi + n_chi); the nilpotent series terminates after
// dim-1 terms. cut = nullopt selects the ray automatically (complex case);
// real algebras use conjugate-symmetric per-pair principal branches and
// require a to lie in the image of exp. A precomputed table may be passed;
// otherwise one is computed with a fixed internal seed.
Matrix alg_log(const CommutativeAlgebra& alg, const Matrix& a,
               std::optional<BranchCut> cut = std::nullopt,
               const CharacterTable* table = nullptr);

// Generators of ker exp: 2 pi i p_chi (complex case) or
// 2 pi i (p_chi - p_conj(chi)) per conjugate pair (real case, real output).
std::vector<Matrix> ker_exp_generators(const CommutativeAlgebra& alg,
                                       const CharacterTable& table);

// The finite group G = Z_2^{kappa1} of involutions complementing exp(A)
// inside the invertibles of a real algebra; generators I - 2 p over the
// real-valued characters.
struct SignGroup {
  std::vector<Matrix> generators;
  int m = 0;  // = kappa1
};

SignGroup sign_group(const CommutativeAlgebra& alg, const CharacterTable& table);

struct ExpPreimage {
  bool exists = false;
  std::optional<Matrix> witness;  // b with alg_exp(b) close to a
};

// Membership in exp(A): a invertible with chi(a) > 0 for every real-valued
// character (always true for invertible elements of complex algebras).
ExpPreimage has_exp_preimage(const CommutativeAlgebra& alg, const Matrix& a,
                             const CharacterTable& table);

// Ray selected by maximizing the minimal distance from the ray to the given
// spectrum over 360 sampled angles; ties prefer angles closest to zero.
double auto_branch_angle(const std::vector<std::complex<double>>& spectrum);

double ray_distance(std::complex<double> z, double angle);

}  // namespace hypertuple

#endif  // HYPERTUPLE_EXPMAP_HPP
