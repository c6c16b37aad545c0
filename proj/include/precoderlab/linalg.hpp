#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

#include "precoderlab/errors.hpp"

namespace precoderlab {

using cxd = std::complex<double>;
using ComplexVector = std::vector<cxd>;

/// Dense row-major complex matrix. Sized for the handful-of-antennas
/// problems this library targets; no attempt at blocking or BLAS.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), e_(rows * cols, cxd{0.0, 0.0}) {}

  static ComplexMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  cxd& operator()(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
  const cxd& operator()(std::size_t i, std::size_t j) const {
    return e_[i * cols_ + j];
  }

  ComplexVector col(std::size_t j) const;
  void set_col(std::size_t j, const ComplexVector& v);

  const std::vector<cxd>& entries() const { return e_; }
  std::vector<cxd>& entries() { return e_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cxd> e_;
};

// ---- vector helpers ----

/// Inner product with the first argument conjugated: sum_i conj(x_i) y_i.
cxd dot(const ComplexVector& x, const ComplexVector& y);
double norm2(const ComplexVector& x);
double norm(const ComplexVector& x);
/// x / ||x||. Throws ZeroOperatorError for a (near-)zero vector.
ComplexVector normalized(const ComplexVector& x);

ComplexVector matvec(const ComplexMatrix& a, const ComplexVector& x);
/// A^H x.
ComplexVector matvec_adjoint(const ComplexMatrix& a, const ComplexVector& x);
double frobenius_norm(const ComplexMatrix& a);

/// A^H A (cols x cols). Built from the upper triangle and mirrored, so the
/// result is Hermitian to the last bit.
ComplexMatrix gram(const ComplexMatrix& a);
/// ridge*I + A A^H (rows x rows), Hermitian-exact as above. A may have zero
/// columns, in which case the result is ridge*I.
ComplexMatrix ridged_outer_gram(const ComplexMatrix& a, double ridge);

// ---- Hermitian positive-definite solve ----

inline constexpr double kHermitianTol = 1e-12;

/// Cholesky factorization A = L L^H of a Hermitian positive-definite matrix.
/// Factor once, solve many right-hand sides.
///
/// Throws NotHermitianError if any |A_ij - conj(A_ji)| exceeds kHermitianTol,
/// and NotPositiveDefiniteError if a pivot falls at or below
/// 1e-14 * trace(A)/n.
class HpdFactor {
 public:
  explicit HpdFactor(const ComplexMatrix& a);

  ComplexVector solve(const ComplexVector& b) const;
  std::size_t dim() const { return l_.rows(); }

 private:
  ComplexMatrix l_;
};

/// One-shot solve A x = b for Hermitian positive-definite A.
ComplexVector hpd_solve(const ComplexMatrix& a, const ComplexVector& b);

// ---- rank-one update solve ----

struct RankOneUpdateSolve {
  ComplexVector y;  ///< (A + x x^H)^{-1} x
  double scale;     ///< 1 / (1 + x^H A^{-1} x)
};

using LinearOperator = std::function<ComplexVector(const ComplexVector&)>;

/// Solves (A + x x^H) y = x given only an A^{-1} applier, as
/// y = A^{-1}x / (1 + x^H A^{-1} x). For Hermitian positive-definite A the
/// denominator is real and > 1, and y is collinear with A^{-1}x by
/// construction. Throws DegenerateUpdateError if |1 + x^H A^{-1} x| <= 1e-14.
RankOneUpdateSolve rank_one_update_solve(const LinearOperator& solve_a,
                                         const ComplexVector& x);

// ---- dominant eigenvector ----

struct EigenPair {
  ComplexVector v;  ///< unit-norm eigenvector estimate
  cxd value;        ///< Rayleigh-quotient eigenvalue estimate
};

inline constexpr double kEigTol = 1e-12;
inline constexpr int kEigMaxIter = 10000;

/// Power iteration on the operator v -> M v. Returns a unit vector v and
/// lambda with ||M v - lambda v|| <= tol * |lambda|. The start vector must
/// have nonzero overlap with the dominant mode.
EigenPair dominant_eigvec(const LinearOperator& apply, std::size_t dim,
                          const ComplexVector& start, double tol = kEigTol,
                          int max_iter = kEigMaxIter);

}  // namespace precoderlab
