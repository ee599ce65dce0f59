#ifndef HYPERTUPLE_CONSTRUCT_HPP
#define HYPERTUPLE_CONSTRUCT_HPP

#include <optional>
#include <string>
#include <vector>

#include "hypertuple/algebra.hpp"
#include "hypertuple/expmap.hpp"
#include "hypertuple/semigroup.hpp"

namespace hypertuple {

enum class Construction { ComplexMinimal, RealMinimal, Gallery, User };

const char* construction_name(Construction c);
Construction construction_from_name(const std::string& name);

struct Provenance {
  std::string algebra_id = "user";
  Construction construction = Construction::User;
  AlphaScheme alpha_scheme = AlphaScheme::SqrtPrimes;
  std::uint64_t seed = 0;
};

// Ordered list of commuting invertible operators plus how it was made.
struct TupleSpec {
  FieldTag field = FieldTag::Complex;
  int n = 0;
  std::vector<Matrix> operators;
  Provenance provenance;
  int predicted_size = 0;
};

// Minimal cardinality of a hypercyclic tuple on K^n:
// n+1 over C; n/2 + 1 (n even) or (n+3)/2 (n odd) over R.
int min_tuple_size(FieldTag field, int n);

// Tuple (e^{B0}, e^{B_{k+1}}, ..., e^{B_{2n}}) built from the kernel-of-exp
// generators, a greedy real-basis extension and a completing generator;
// size 2n - kappa + 1.
TupleSpec build_tuple_complex(const CommutativeAlgebra& alg, const CharacterTable& table,
                              AlphaScheme scheme, std::uint64_t seed,
                              const std::string& algebra_id = "user");

// Tuple (C0 e^{B0}, C_{k+1} e^{B_{k+1}}, ..., C_n e^{B_n}) with sign-group
// generators assigned to the lowest available slots; size n - kappa0 + 1.
TupleSpec build_tuple_real(const CommutativeAlgebra& alg, const CharacterTable& table,
                           AlphaScheme scheme, std::uint64_t seed,
                           const std::string& algebra_id = "user");

struct GalleryEntry {
  std::string name;
  CommutativeAlgebra algebra;
  std::optional<int> expected_kappa;                 // complex case
  std::optional<std::pair<int, int>> expected_kappa01;  // (kappa0, kappa1), real case
  bool expected_cyclic = true;
  std::string notes;
};

// Named algebras: diag, jordan2, rotation, rotation_sum, rotation_sum_odd,
// az, f4. `param` is n for diag and m for the rotation sums.
GalleryEntry gallery(const std::string& name, FieldTag field = FieldTag::Complex, int param = 0);

std::vector<std::string> gallery_names();

// Gallery algebra realizing the minimal tuple size on K^n: diag over C,
// rotation sums over R.
GalleryEntry minimal_gallery_for(FieldTag field, int n);

// Commuting triple T_j = [[a_j, b_j], [0, a_j]] whose half-plane orbits are
// dense but not all of R^2; the third member completes the log-plane vectors
// (b_j/a_j, ln a_j) to a dense semigroup.
TupleSpec f4_triple(double a1, double b1, double a2, double b2,
                    AlphaScheme scheme = AlphaScheme::SqrtPrimes, const Tolerance& tol = {});

// Index of the first non-scalar (hence cyclic) member of a tuple on K^2;
// nullopt is the AllScalar verdict, under which the tuple cannot be
// hypercyclic.
std::optional<std::size_t> two_dim_cyclic_member(const TupleSpec& tuple,
                                                 const Tolerance& tol = {});

}  // namespace hypertuple

#endif  // HYPERTUPLE_CONSTRUCT_HPP
