#ifndef HYPERTUPLE_NUMKIT_HPP
#define HYPERTUPLE_NUMKIT_HPP

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "hypertuple/common.hpp"

namespace hypertuple {

enum class FieldTag { Real, Complex };

const char* field_name(FieldTag f);

// Thresholds shared by every numerical routine in the library.
struct Tolerance {
  double eq_tol = 1e-9;       // entrywise comparison
  double rank_tol = 1e-8;     // singular values below rank_tol * sigma_max count as zero
  double cluster_tol = 1e-6;  // eigenvalue clustering radius
};

// Dense square matrix over R or C, dimension at most 64. Entries are always
// complex pairs of doubles; FieldTag::Real is a constraint tag guaranteeing
// exactly zero imaginary parts, not a separate representation.
class Matrix {
 public:
  Matrix(FieldTag field, Eigen::MatrixXcd entries);

  static Matrix identity(FieldTag field, int n);
  static Matrix zeros(FieldTag field, int n);

  FieldTag field() const { return field_; }
  int n() const { return static_cast<int>(entries_.rows()); }
  const Eigen::MatrixXcd& entries() const { return entries_; }
  std::complex<double> operator()(int i, int j) const { return entries_(i, j); }

 private:
  FieldTag field_;
  Eigen::MatrixXcd entries_;
};

inline constexpr int kMaxDimension = 64;

// max-norm (largest entry magnitude); zero for empty input
double max_abs(const Eigen::MatrixXcd& m);
double max_abs_imag(const Eigen::MatrixXcd& m);

Matrix mat_mul(const Matrix& a, const Matrix& b);

// Inverse by fully pivoted elimination; pivots below rank_tol (relative to
// the largest pivot) raise SingularMatrix.
Matrix mat_inverse(const Matrix& a, const Tolerance& tol = {});

// All n eigenvalues with algebraic multiplicity, order unspecified.
std::vector<std::complex<double>> eigenvalues(const Matrix& a);

// Rank of a column family: number of singular values above
// rank_tol * sigma_max.
int numeric_rank(const Eigen::MatrixXcd& columns, double rank_tol);

// Orthonormal basis of the numerical nullspace of the row system. For
// FieldTag::Real the rows must be real and the basis comes out real.
std::vector<Eigen::VectorXcd> nullspace_basis(const std::vector<Eigen::VectorXcd>& rows,
                                              FieldTag field, const Tolerance& tol = {});

// Rank of {x, ax, a^2 x, ..., a^{n-1} x}.
int krylov_rank(const Matrix& a, const Eigen::VectorXcd& x, const Tolerance& tol = {});

}  // namespace hypertuple

#endif  // HYPERTUPLE_NUMKIT_HPP
