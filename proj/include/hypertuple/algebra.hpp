#ifndef HYPERTUPLE_ALGEBRA_HPP
#define HYPERTUPLE_ALGEBRA_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "hypertuple/numkit.hpp"

namespace hypertuple {

// Unital commutative subalgebra of L(K^n) generated by a commuting tuple.
// basis[0] is always the identity; left_mult[i] is the matrix of
// multiplication by basis[i] in basis coordinates, so the structure constants
// are structure[i][j][k] = left_mult[i](k, j).
struct CommutativeAlgebra {
  FieldTag field = FieldTag::Complex;
  int n = 0;    // ambient dimension
  int dim = 0;  // algebra dimension d
  std::vector<Matrix> basis;
  std::vector<Eigen::MatrixXcd> left_mult;
  std::vector<Matrix> generators;
  Tolerance tol;

  // n^2 x d matrix whose columns are the vectorized basis elements
  Eigen::MatrixXcd basis_columns;

  // Least-squares coordinates of an ambient matrix in the basis; *residual
  // (if given) receives the max-norm of the unexplained part.
  Eigen::VectorXcd coordinates(const Eigen::MatrixXcd& a, double* residual = nullptr) const;

  // Sum of coeffs[i] * basis[i]. For a real algebra the coefficients must be
  // real up to 1e-12; tiny imaginary noise is truncated.
  Matrix element(const Eigen::VectorXcd& coeffs) const;

  bool contains(const Eigen::MatrixXcd& a, double max_residual = 1e-8) const;
};

// Unital closure of a commuting tuple by repeated products and elimination.
// ambient_n / ambient_field are consulted only when the tuple is empty.
CommutativeAlgebra close_algebra(const std::vector<Matrix>& tuple, const Tolerance& tol = {},
                                 int ambient_n = 1, FieldTag ambient_field = FieldTag::Complex);

// Basis of the commutant {S : Sg = gS for every generator}.
std::vector<Matrix> commutant(const CommutativeAlgebra& alg);

// Seeded random search for x with rank {basis[i] x} = n. nullopt means
// NotCyclic: certain when dim < n, overwhelming evidence otherwise.
std::optional<Eigen::VectorXcd> find_cyclic_vector(const CommutativeAlgebra& alg, int attempts,
                                                   std::uint64_t seed);

// Matrix of x -> a x on the algebra, a = sum coeffs[i] * basis[i].
Eigen::MatrixXcd regular_representation(const CommutativeAlgebra& alg,
                                        const Eigen::VectorXcd& coeffs);

enum class CharacterKind { RealValued, ComplexPairMember };

const char* character_kind_name(CharacterKind k);

struct Character {
  Eigen::VectorXcd values;  // chi on each basis element
  CharacterKind kind = CharacterKind::RealValued;
  std::optional<int> partner;  // index of the conjugate character, if any
};

struct CharacterTable {
  std::vector<Character> characters;
  int kappa = 0;   // number of characters (of the complexification)
  int kappa0 = 0;  // conjugate pairs (real algebras)
  int kappa1 = 0;  // real-valued characters (real algebras)
  std::vector<Matrix> idempotents;                 // ambient p_chi, complex entries
  std::vector<Eigen::MatrixXcd> regrep_projectors; // d x d spectral projectors
  double idempotent_residual = 0.0;                // worst axiom residual observed
  std::uint64_t seed = 0;
};

// Characters and spectral idempotents of the (complexified) algebra.
// A random element separates the characters; its resolvent is integrated
// along circles splitting the spectrum, one cluster per character. Retries
// with a fresh random element up to 8 times before giving up.
CharacterTable compute_characters(const CommutativeAlgebra& alg, const Tolerance& tol,
                                  std::uint64_t seed);

inline constexpr int kContourNodes = 64;

std::complex<double> character_value(const CharacterTable& table, int chi_index,
                                     const Eigen::VectorXcd& coeffs);

// Discretized resolvent contour integral (trapezoid rule on a circle); the
// test-suite cross-checks it against generalized-eigenspace projectors.
Eigen::MatrixXcd contour_projector(const Eigen::MatrixXcd& a, std::complex<double> center,
                                   double radius, int nodes = kContourNodes);

}  // namespace hypertuple

#endif  // HYPERTUPLE_ALGEBRA_HPP
