#include "precoderlab/linalg.hpp"

#include <cmath>
#include <string>

namespace precoderlab {

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexVector ComplexMatrix::col(std::size_t j) const {
  if (j >= cols_) throw IndexOutOfRangeError("column index out of range");
  ComplexVector v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

void ComplexMatrix::set_col(std::size_t j, const ComplexVector& v) {
  if (j >= cols_ || v.size() != rows_)
    throw DimensionMismatchError("set_col: shape mismatch");
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

cxd dot(const ComplexVector& x, const ComplexVector& y) {
  if (x.size() != y.size()) throw DimensionMismatchError("dot: length mismatch");
  cxd s{0.0, 0.0};
  for (std::size_t i = 0; i < x.size(); ++i) s += std::conj(x[i]) * y[i];
  return s;
}

double norm2(const ComplexVector& x) {
  double s = 0.0;
  for (const cxd& v : x) s += std::norm(v);
  return s;
}

double norm(const ComplexVector& x) { return std::sqrt(norm2(x)); }

ComplexVector normalized(const ComplexVector& x) {
  const double n = norm(x);
  if (n <= 1e-300) throw ZeroOperatorError("cannot normalize a zero vector");
  ComplexVector y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = x[i] / n;
  return y;
}

ComplexVector matvec(const ComplexMatrix& a, const ComplexVector& x) {
  if (x.size() != a.cols()) throw DimensionMismatchError("matvec: shape mismatch");
  ComplexVector y(a.rows(), cxd{0.0, 0.0});
  for (std::size_t i = 0; i < a.rows(); ++i) {
    cxd s{0.0, 0.0};
    for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

ComplexVector matvec_adjoint(const ComplexMatrix& a, const ComplexVector& x) {
  if (x.size() != a.rows())
    throw DimensionMismatchError("matvec_adjoint: shape mismatch");
  ComplexVector y(a.cols(), cxd{0.0, 0.0});
  for (std::size_t j = 0; j < a.cols(); ++j) {
    cxd s{0.0, 0.0};
    for (std::size_t i = 0; i < a.rows(); ++i) s += std::conj(a(i, j)) * x[i];
    y[j] = s;
  }
  return y;
}

double frobenius_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (const cxd& v : a.entries()) s += std::norm(v);
  return std::sqrt(s);
}

ComplexMatrix gram(const ComplexMatrix& a) {
  const std::size_t k = a.cols();
  ComplexMatrix g(k, k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i; j < k; ++j) {
      cxd s{0.0, 0.0};
      for (std::size_t t = 0; t < a.rows(); ++t) s += std::conj(a(t, i)) * a(t, j);
      g(i, j) = s;
      if (j != i) g(j, i) = std::conj(s);
    }
  }
  // exact real diagonal
  for (std::size_t i = 0; i < k; ++i) g(i, i) = cxd{g(i, i).real(), 0.0};
  return g;
}

ComplexMatrix ridged_outer_gram(const ComplexMatrix& a, double ridge) {
  const std::size_t n = a.rows();
  ComplexMatrix g(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      cxd s{0.0, 0.0};
      for (std::size_t t = 0; t < a.cols(); ++t) s += a(i, t) * std::conj(a(j, t));
      g(i, j) = s;
      if (j != i) g(j, i) = std::conj(s);
    }
    g(i, i) = cxd{g(i, i).real() + ridge, 0.0};
  }
  return g;
}

HpdFactor::HpdFactor(const ComplexMatrix& a) {
  const std::size_t n = a.rows();
  if (n != a.cols()) throw DimensionMismatchError("HpdFactor: matrix not square");
  if (n == 0) throw InvalidDimensionError("HpdFactor: empty matrix");

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (std::abs(a(i, j) - std::conj(a(j, i))) > kHermitianTol)
        throw NotHermitianError("matrix is not Hermitian within tolerance");

  double trace = 0.0;
  for (std::size_t i = 0; i < n; ++i) trace += a(i, i).real();
  const double pivot_floor = 1e-14 * trace / static_cast<double>(n);

  l_ = ComplexMatrix(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double d = a(j, j).real();
    for (std::size_t k = 0; k < j; ++k) d -= std::norm(l_(j, k));
    if (d <= pivot_floor)
      throw NotPositiveDefiniteError("pivot " + std::to_string(j) +
                                     " at or below threshold");
    const double ljj = std::sqrt(d);
    l_(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      cxd s = a(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l_(i, k) * std::conj(l_(j, k));
      l_(i, j) = s / ljj;
    }
  }
}

ComplexVector HpdFactor::solve(const ComplexVector& b) const {
  const std::size_t n = dim();
  if (b.size() != n) throw DimensionMismatchError("HpdFactor::solve: shape mismatch");
  ComplexVector z(n);
  for (std::size_t i = 0; i < n; ++i) {
    cxd s = b[i];
    for (std::size_t k = 0; k < i; ++k) s -= l_(i, k) * z[k];
    z[i] = s / l_(i, i).real();
  }
  ComplexVector x(n);
  for (std::size_t ii = n; ii-- > 0;) {
    cxd s = z[ii];
    for (std::size_t k = ii + 1; k < n; ++k) s -= std::conj(l_(k, ii)) * x[k];
    x[ii] = s / l_(ii, ii).real();
  }
  return x;
}

ComplexVector hpd_solve(const ComplexMatrix& a, const ComplexVector& b) {
  return HpdFactor(a).solve(b);
}

RankOneUpdateSolve rank_one_update_solve(const LinearOperator& solve_a,
                                         const ComplexVector& x) {
  ComplexVector ax = solve_a(x);
  if (ax.size() != x.size())
    throw DimensionMismatchError("rank_one_update_solve: solver changed dimension");
  const cxd q = dot(x, ax);
  const cxd denom = 1.0 + q;
  if (std::abs(denom) <= 1e-14)
    throw DegenerateUpdateError("1 + x^H A^{-1} x vanishes");
  // For Hermitian positive-definite A the quadratic form is real; keeping
  // only the real part preserves exact collinearity with A^{-1}x.
  const double scale = 1.0 / denom.real();
  ComplexVector y(ax.size());
  for (std::size_t i = 0; i < ax.size(); ++i) y[i] = ax[i] * scale;
  return {std::move(y), scale};
}

EigenPair dominant_eigvec(const LinearOperator& apply, std::size_t dim,
                          const ComplexVector& start, double tol,
                          int max_iter) {
  if (dim == 0) throw InvalidDimensionError("dominant_eigvec: dim must be >= 1");
  if (start.size() != dim)
    throw DimensionMismatchError("dominant_eigvec: start vector has wrong length");

  ComplexVector w = apply(start);
  double nw = norm(w);
  if (nw <= 1e-300) throw ZeroOperatorError("operator annihilates the start vector");
  ComplexVector v(dim);
  for (std::size_t i = 0; i < dim; ++i) v[i] = w[i] / nw;

  for (int iter = 0; iter < max_iter; ++iter) {
    w = apply(v);
    const cxd lambda = dot(v, w);
    double resid2 = 0.0;
    for (std::size_t i = 0; i < dim; ++i) resid2 += std::norm(w[i] - lambda * v[i]);
    if (std::sqrt(resid2) <= tol * std::abs(lambda)) return {v, lambda};
    nw = norm(w);
    if (nw <= 1e-300) throw ZeroOperatorError("operator annihilates the iterate");
    for (std::size_t i = 0; i < dim; ++i) v[i] = w[i] / nw;
  }
  throw NoConvergenceError("power iteration did not converge", max_iter);
}

}  // namespace precoderlab
