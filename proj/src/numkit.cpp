#include "hypertuple/numkit.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>

namespace hypertuple {

const char* field_name(FieldTag f) {
  return f == FieldTag::Real ? "R" : "C";
}

Matrix::Matrix(FieldTag field, Eigen::MatrixXcd entries)
    : field_(field), entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols() || entries_.rows() < 1) {
    throw DimensionMismatch("matrix must be square and non-empty, got " +
                            std::to_string(entries_.rows()) + "x" +
                            std::to_string(entries_.cols()));
  }
  if (entries_.rows() > kMaxDimension) {
    throw InvalidInput("matrix dimension " + std::to_string(entries_.rows()) +
                       " exceeds supported maximum " + std::to_string(kMaxDimension));
  }
  if (!entries_.allFinite()) {
    throw InvalidInput("matrix entries must be finite");
  }
  if (field_ == FieldTag::Real && max_abs_imag(entries_) != 0.0) {
    throw InvalidInput("real matrix has nonzero imaginary part");
  }
}

Matrix Matrix::identity(FieldTag field, int n) {
  return Matrix(field, Eigen::MatrixXcd::Identity(n, n));
}

Matrix Matrix::zeros(FieldTag field, int n) {
  return Matrix(field, Eigen::MatrixXcd::Zero(n, n));
}

double max_abs(const Eigen::MatrixXcd& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().maxCoeff();
}

double max_abs_imag(const Eigen::MatrixXcd& m) {
  if (m.size() == 0) return 0.0;
  return m.imag().cwiseAbs().maxCoeff();
}

Matrix mat_mul(const Matrix& a, const Matrix& b) {
  if (a.n() != b.n()) {
    throw DimensionMismatch("mat_mul: " + std::to_string(a.n()) + " vs " +
                            std::to_string(b.n()));
  }
  if (a.field() != b.field()) {
    throw DimensionMismatch(std::string("mat_mul: field mismatch ") +
                            field_name(a.field()) + " vs " + field_name(b.field()));
  }
  return Matrix(a.field(), a.entries() * b.entries());
}

Matrix mat_inverse(const Matrix& a, const Tolerance& tol) {
  if (a.field() == FieldTag::Real) {
    // real path keeps the imaginary parts exactly zero
    Eigen::MatrixXd re = a.entries().real();
    Eigen::FullPivLU<Eigen::MatrixXd> lu(re);
    lu.setThreshold(tol.rank_tol);
    if (!lu.isInvertible()) {
      throw SingularMatrix("pivot below rank tolerance " + std::to_string(tol.rank_tol));
    }
    Eigen::MatrixXd inv = lu.inverse();
    return Matrix(a.field(), inv.cast<std::complex<double>>());
  }
  Eigen::FullPivLU<Eigen::MatrixXcd> lu(a.entries());
  lu.setThreshold(tol.rank_tol);
  if (!lu.isInvertible()) {
    throw SingularMatrix("pivot below rank tolerance " + std::to_string(tol.rank_tol));
  }
  return Matrix(a.field(), lu.inverse());
}

std::vector<std::complex<double>> eigenvalues(const Matrix& a) {
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(a.entries(), /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw NumericalFailure("eigenvalue iteration did not converge");
  }
  const Eigen::VectorXcd& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

int numeric_rank(const Eigen::MatrixXcd& columns, double rank_tol) {
  if (columns.size() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(columns);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) <= 0.0) return 0;
  const double cutoff = rank_tol * sv(0);
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > cutoff) ++rank;
  }
  return rank;
}

namespace {

template <typename Scalar>
std::vector<Eigen::VectorXcd> nullspace_impl(
    const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& rows, double rank_tol) {
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  Eigen::JacobiSVD<Mat> svd(rows, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double smax = sv.size() > 0 ? sv(0) : 0.0;
  const double cutoff = rank_tol * smax;
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (smax > 0.0 && sv(i) > cutoff) ++rank;
  }
  std::vector<Eigen::VectorXcd> basis;
  const auto& v = svd.matrixV();
  for (Eigen::Index j = rank; j < v.cols(); ++j) {
    basis.push_back(v.col(j).template cast<std::complex<double>>());
  }
  return basis;
}

}  // namespace

std::vector<Eigen::VectorXcd> nullspace_basis(const std::vector<Eigen::VectorXcd>& rows,
                                              FieldTag field, const Tolerance& tol) {
  if (rows.empty()) return {};
  const Eigen::Index len = rows.front().size();
  for (const auto& r : rows) {
    if (r.size() != len) {
      throw DimensionMismatch("nullspace_basis: rows of different lengths");
    }
  }
  if (field == FieldTag::Real) {
    Eigen::MatrixXd m(rows.size(), len);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (max_abs_imag(rows[i]) > tol.eq_tol) {
        throw InvalidInput("nullspace_basis: complex row in a real system");
      }
      m.row(i) = rows[i].real();
    }
    return nullspace_impl<double>(m, tol.rank_tol);
  }
  Eigen::MatrixXcd m(rows.size(), len);
  for (std::size_t i = 0; i < rows.size(); ++i) m.row(i) = rows[i];
  return nullspace_impl<std::complex<double>>(m, tol.rank_tol);
}

int krylov_rank(const Matrix& a, const Eigen::VectorXcd& x, const Tolerance& tol) {
  if (x.size() != a.n()) {
    throw DimensionMismatch("krylov_rank: vector length " + std::to_string(x.size()) +
                            " vs matrix dimension " + std::to_string(a.n()));
  }
  const int n = a.n();
  Eigen::MatrixXcd krylov(n, n);
  Eigen::VectorXcd v = x;
  for (int j = 0; j < n; ++j) {
    krylov.col(j) = v;
    if (j + 1 < n) v = a.entries() * v;
  }
  return numeric_rank(krylov, tol.rank_tol);
}

}  // namespace hypertuple
