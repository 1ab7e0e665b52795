#include "qscreen/linalg.hpp"

#include <algorithm>
#include <cmath>

#include "qscreen/kernels.hpp"

namespace qscreen {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

double Matrix::frobenius_squared() const { return kernels::dot(data_, data_); }

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix product dimension mismatch");
  Matrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

Matrix operator*(double s, Matrix a) {
  for (auto& v : a.data_) v *= s;
  return a;
}

// ---------------------------------------------------------------------------

PivotedLdlt::PivotedLdlt(const Matrix& a, double relative_tolerance) : n_(a.rows()) {
  if (a.rows() != a.cols()) throw std::invalid_argument("LDLT needs a square matrix");
  // Working copy in the original indexing; permutation tracked separately.
  std::vector<double> w(a.data().begin(), a.data().end());
  auto at = [&](std::size_t r, std::size_t c) -> double& { return w[r * n_ + c]; };
  perm_.resize(n_);
  for (std::size_t i = 0; i < n_; ++i) perm_[i] = i;
  l_.assign(n_ * n_, 0.0);
  d_.assign(n_, 0.0);

  double largest = 0.0;
  for (std::size_t k = 0; k < n_; ++k) {
    std::size_t best = k;
    for (std::size_t i = k + 1; i < n_; ++i) {
      if (at(perm_[i], perm_[i]) > at(perm_[best], perm_[best])) best = i;
    }
    std::swap(perm_[k], perm_[best]);
    for (std::size_t c = 0; c < k; ++c) std::swap(l_[k * n_ + c], l_[best * n_ + c]);

    const std::size_t p = perm_[k];
    const double pivot = at(p, p);
    largest = std::max(largest, pivot);
    if (!(pivot > relative_tolerance * largest) || largest <= 0.0) {
      std::vector<std::size_t> dependent(perm_.begin() + static_cast<std::ptrdiff_t>(k), perm_.end());
      std::sort(dependent.begin(), dependent.end());
      throw SingularMatrixError("symmetric system is singular", std::move(dependent));
    }
    d_[k] = pivot;
    l_[k * n_ + k] = 1.0;
    for (std::size_t i = k + 1; i < n_; ++i) {
      const std::size_t q = perm_[i];
      l_[i * n_ + k] = at(q, p) / pivot;
    }
    for (std::size_t i = k + 1; i < n_; ++i) {
      const std::size_t qi = perm_[i];
      for (std::size_t j = k + 1; j <= i; ++j) {
        const std::size_t qj = perm_[j];
        const double v = at(qi, qj) - l_[i * n_ + k] * pivot * l_[j * n_ + k];
        at(qi, qj) = v;
        at(qj, qi) = v;
      }
    }
  }
}

void PivotedLdlt::solve_in_place(std::span<double> b) const {
  if (b.size() != n_) throw std::invalid_argument("LDLT solve dimension mismatch");
  std::vector<double> y(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    double v = b[perm_[i]];
    for (std::size_t j = 0; j < i; ++j) v -= l_[i * n_ + j] * y[j];
    y[i] = v;
  }
  for (std::size_t i = 0; i < n_; ++i) y[i] /= d_[i];
  for (std::size_t i = n_; i-- > 0;) {
    double v = y[i];
    for (std::size_t j = i + 1; j < n_; ++j) v -= l_[j * n_ + i] * y[j];
    y[i] = v;
  }
  for (std::size_t i = 0; i < n_; ++i) b[perm_[i]] = y[i];
}

Matrix PivotedLdlt::solve(const Matrix& b) const {
  if (b.rows() != n_) throw std::invalid_argument("LDLT solve dimension mismatch");
  Matrix out = b;
  std::vector<double> col(n_);
  for (std::size_t c = 0; c < b.cols(); ++c) {
    for (std::size_t r = 0; r < n_; ++r) col[r] = b(r, c);
    solve_in_place(col);
    for (std::size_t r = 0; r < n_; ++r) out(r, c) = col[r];
  }
  return out;
}

// ---------------------------------------------------------------------------

Cholesky::Cholesky(const Matrix& a, double symmetry_tolerance) : n_(a.rows()) {
  if (a.rows() != a.cols()) throw NotPositiveDefiniteError("covariance matrix is not square");
  double scale = 0.0;
  for (double v : a.data()) scale = std::max(scale, std::abs(v));
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < i; ++j) {
      if (std::abs(a(i, j) - a(j, i)) > symmetry_tolerance * std::max(scale, 1.0)) {
        throw NotPositiveDefiniteError("covariance matrix is not symmetric at (" + std::to_string(i + 1) + "," +
                                       std::to_string(j + 1) + ")");
      }
    }
  l_.assign(n_ * n_, 0.0);
  for (std::size_t j = 0; j < n_; ++j) {
    double diag = a(j, j);
    for (std::size_t k = 0; k < j; ++k) diag -= l_[j * n_ + k] * l_[j * n_ + k];
    if (!(diag > 0.0)) {
      throw NotPositiveDefiniteError("covariance matrix is not positive definite (pivot " + std::to_string(j + 1) +
                                     ")");
    }
    const double ljj = std::sqrt(diag);
    l_[j * n_ + j] = ljj;
    for (std::size_t i = j + 1; i < n_; ++i) {
      double v = a(i, j);
      for (std::size_t k = 0; k < j; ++k) v -= l_[i * n_ + k] * l_[j * n_ + k];
      l_[i * n_ + j] = v / ljj;
    }
  }
}

void Cholesky::forward_in_place(std::span<double> x) const {
  if (x.size() != n_) throw std::invalid_argument("triangular solve dimension mismatch");
  for (std::size_t i = 0; i < n_; ++i) {
    double v = x[i];
    for (std::size_t k = 0; k < i; ++k) v -= l_[i * n_ + k] * x[k];
    x[i] = v / l_[i * n_ + i];
  }
}

Matrix Cholesky::forward(const Matrix& b) const {
  if (b.rows() != n_) throw std::invalid_argument("triangular solve dimension mismatch");
  Matrix out = b;
  std::vector<double> col(n_);
  for (std::size_t c = 0; c < b.cols(); ++c) {
    for (std::size_t r = 0; r < n_; ++r) col[r] = b(r, c);
    forward_in_place(col);
    for (std::size_t r = 0; r < n_; ++r) out(r, c) = col[r];
  }
  return out;
}

}  // namespace qscreen
