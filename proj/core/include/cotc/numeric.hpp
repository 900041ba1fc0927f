#pragma once

// Dense small-matrix numerics shared by every analysis module.
//
// Matrices are tiny (N <= 8 in practice), so everything is a plain
// row-major heap buffer and every algorithm favours robustness over speed.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <span>
#include <vector>

#include "cotc/errors.hpp"

namespace cotc {

using Complex = std::complex<double>;

template <typename T>
class BasicMatrix {
 public:
  using value_type = T;

  BasicMatrix() = default;

  BasicMatrix(std::size_t rows, std::size_t cols, T fill = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  BasicMatrix(std::initializer_list<std::initializer_list<T>> init) {
    rows_ = init.size();
    cols_ = rows_ == 0 ? 0 : init.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) {
        throw DimensionError("ragged matrix initializer");
      }
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static BasicMatrix identity(std::size_t n) {
    BasicMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T{1};
    return m;
  }

  static BasicMatrix zeros(std::size_t rows, std::size_t cols) { return BasicMatrix(rows, cols); }

  static BasicMatrix diagonal(std::span<const T> diag) {
    BasicMatrix m(diag.size(), diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }
  bool empty() const noexcept { return data_.empty(); }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<T> data() noexcept { return data_; }
  std::span<const T> data() const noexcept { return data_; }

  std::vector<T> column(std::size_t c) const {
    std::vector<T> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
    return out;
  }

  std::vector<T> row(std::size_t r) const {
    return std::vector<T>(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                          data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
  }

  BasicMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_) throw DimensionError("block out of range");
    BasicMatrix out(nr, nc);
    for (std::size_t r = 0; r < nr; ++r)
      for (std::size_t c = 0; c < nc; ++c) out(r, c) = (*this)(r0 + r, c0 + c);
    return out;
  }

  void set_block(std::size_t r0, std::size_t c0, const BasicMatrix& b) {
    if (r0 + b.rows() > rows_ || c0 + b.cols() > cols_) throw DimensionError("block out of range");
    for (std::size_t r = 0; r < b.rows(); ++r)
      for (std::size_t c = 0; c < b.cols(); ++c) (*this)(r0 + r, c0 + c) = b(r, c);
  }

  BasicMatrix transpose() const {
    BasicMatrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
    return out;
  }

  BasicMatrix& operator+=(const BasicMatrix& o) {
    require_same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }

  BasicMatrix& operator-=(const BasicMatrix& o) {
    require_same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }

  BasicMatrix& operator*=(T s) {
    for (auto& v : data_) v *= s;
    return *this;
  }

  friend BasicMatrix operator+(BasicMatrix a, const BasicMatrix& b) { return a += b; }
  friend BasicMatrix operator-(BasicMatrix a, const BasicMatrix& b) { return a -= b; }
  friend BasicMatrix operator*(BasicMatrix a, T s) { return a *= s; }
  friend BasicMatrix operator*(T s, BasicMatrix a) { return a *= s; }
  friend BasicMatrix operator-(BasicMatrix a) { return a *= T{-1}; }

  friend BasicMatrix operator*(const BasicMatrix& a, const BasicMatrix& b) {
    if (a.cols_ != b.rows_) throw DimensionError("matrix product: inner dimensions differ");
    BasicMatrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T aik = a(i, k);
        if (aik == T{}) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
      }
    return out;
  }

  friend std::vector<T> operator*(const BasicMatrix& a, std::span<const T> x) {
    if (a.cols_ != x.size()) throw DimensionError("matrix-vector product: size mismatch");
    std::vector<T> out(a.rows_, T{});
    for (std::size_t i = 0; i < a.rows_; ++i) {
      T acc{};
      for (std::size_t j = 0; j < a.cols_; ++j) acc += a(i, j) * x[j];
      out[i] = acc;
    }
    return out;
  }

  friend std::vector<T> operator*(const BasicMatrix& a, const std::vector<T>& x) {
    return a * std::span<const T>(x);
  }

  bool operator==(const BasicMatrix&) const = default;

 private:
  void require_same_shape(const BasicMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionError("matrix shapes differ");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using Matrix = BasicMatrix<double>;
using ComplexMatrix = BasicMatrix<Complex>;
using Vector = std::vector<double>;

// Small vector helpers -------------------------------------------------------

double dot(std::span<const double> a, std::span<const double> b);
Vector add(std::span<const double> a, std::span<const double> b);
Vector subtract(std::span<const double> a, std::span<const double> b);
Vector scale(std::span<const double> a, double s);
double norm2(std::span<const double> a);
double norm_inf(std::span<const double> a);
/// a * b' (column times row).
Matrix outer(std::span<const double> a, std::span<const double> b);
/// Row vector times matrix.
Vector row_times(std::span<const double> row, const Matrix& m);

double norm1(const Matrix& m);
double norm_inf(const Matrix& m);
bool all_finite(const Matrix& m);
ComplexMatrix to_complex(const Matrix& m);

// Core operations ------------------------------------------------------------

/// e^{A t} by scaling and squaring around a degree-13 (or lower) Pade core.
///
/// The Pade degree is the smallest of {3, 5, 7, 9, 13} whose backward-error
/// bound covers ||A t||_1; above the degree-13 bound the matrix is scaled by
/// 2^-s with s = ceil(log2(||A t||_1 / theta_13)) and the result squared s times.
Matrix expm(const Matrix& a, double t = 1.0);

/// (integral_0^t e^{A s} ds) * B, read off the top-right block of
/// exp([[A, B], [0, 0]] t). Never inverts A, so singular A is fine.
Matrix expm_integral(const Matrix& a, const Matrix& b, double t);

/// All eigenvalues (with multiplicity, unordered) via balancing, reduction to
/// upper Hessenberg form and Francis double-shift QR. Throws NumericError
/// after 100 * N QR sweeps without full deflation.
std::vector<Complex> eigenvalues(const Matrix& m);

/// Solves M x = v by LU with partial pivoting. Throws SingularityError when
/// the 1-norm condition number exceeds `max_condition`.
Vector solve_linear(const Matrix& m, std::span<const double> v, double max_condition = 1e14);
std::vector<Complex> solve_linear(const ComplexMatrix& m, std::span<const Complex> v,
                                  double max_condition = 1e14);
/// Column-by-column solve of M X = B.
Matrix solve_linear(const Matrix& m, const Matrix& b, double max_condition = 1e14);

/// Exact 1-norm condition number ||M||_1 ||M^-1||_1 (infinity if singular).
double condition_number(const Matrix& m);

/// Root of f in [lo, hi] by bisection with safeguarded false-position steps.
/// Requires f(lo) * f(hi) <= 0; stops once the bracket is no wider than tol.
double find_root(const std::function<double(double)>& f, double lo, double hi, double tol);
/// Same with tol = 1e-12 * (hi - lo).
double find_root(const std::function<double(double)>& f, double lo, double hi);

/// Minimiser of a unimodal f on [lo, hi] by golden-section search.
double golden_section_min(const std::function<double(double)>& f, double lo, double hi, double rel_tol);

}  // namespace cotc
