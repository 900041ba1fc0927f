#include "cotc/numeric.hpp"

#include <array>
#include <limits>
#include <string>
#include <utility>

namespace cotc {

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw DimensionError("dot: size mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

Vector add(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw DimensionError("add: size mismatch");
  Vector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

Vector subtract(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw DimensionError("subtract: size mismatch");
  Vector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

Vector scale(std::span<const double> a, double s) {
  Vector out(a.begin(), a.end());
  for (auto& v : out) v *= s;
  return out;
}

double norm2(std::span<const double> a) {
  double acc = 0.0;
  for (double v : a) acc += v * v;
  return std::sqrt(acc);
}

double norm_inf(std::span<const double> a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

Matrix outer(std::span<const double> a, std::span<const double> b) {
  Matrix out(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out(i, j) = a[i] * b[j];
  return out;
}

Vector row_times(std::span<const double> row, const Matrix& m) {
  if (row.size() != m.rows()) throw DimensionError("row_times: size mismatch");
  Vector out(m.cols(), 0.0);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[j] += row[i] * m(i, j);
  return out;
}

double norm1(const Matrix& m) {
  double best = 0.0;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    double s = 0.0;
    for (std::size_t r = 0; r < m.rows(); ++r) s += std::abs(m(r, c));
    best = std::max(best, s);
  }
  return best;
}

double norm_inf(const Matrix& m) {
  double best = 0.0;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    double s = 0.0;
    for (std::size_t c = 0; c < m.cols(); ++c) s += std::abs(m(r, c));
    best = std::max(best, s);
  }
  return best;
}

bool all_finite(const Matrix& m) {
  return std::all_of(m.data().begin(), m.data().end(), [](double v) { return std::isfinite(v); });
}

ComplexMatrix to_complex(const Matrix& m) {
  ComplexMatrix out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = m(r, c);
  return out;
}

// ---------------------------------------------------------------------------
// LU factorisation

namespace {

template <typename T>
struct Lu {
  BasicMatrix<T> lu;
  std::vector<std::size_t> perm;
  bool singular = false;
};

template <typename T>
Lu<T> lu_factor(BasicMatrix<T> a) {
  const std::size_t n = a.rows();
  Lu<T> out;
  out.perm.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.perm[i] = i;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    double best = std::abs(a(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::abs(a(i, k)) > best) {
        best = std::abs(a(i, k));
        piv = i;
      }
    }
    if (best == 0.0) {
      out.singular = true;
      continue;
    }
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
      std::swap(out.perm[k], out.perm[piv]);
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const T f = a(i, k) / a(k, k);
      a(i, k) = f;
      if (f == T{}) continue;
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  out.lu = std::move(a);
  return out;
}

template <typename T>
std::vector<T> lu_solve(const Lu<T>& f, std::span<const T> b) {
  const std::size_t n = f.lu.rows();
  std::vector<T> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[f.perm[i]];
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) x[i] -= f.lu(i, j) * x[j];
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t j = i + 1; j < n; ++j) x[i] -= f.lu(i, j) * x[j];
    x[i] /= f.lu(i, i);
  }
  return x;
}

template <typename T>
double matrix_norm1(const BasicMatrix<T>& m) {
  double best = 0.0;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    double s = 0.0;
    for (std::size_t r = 0; r < m.rows(); ++r) s += std::abs(m(r, c));
    best = std::max(best, s);
  }
  return best;
}

// ||M||_1 ||M^-1||_1, with the inverse built column by column. N <= 8 makes
// the exact value cheaper to reason about than an estimator.
template <typename T>
double condition_from_lu(const BasicMatrix<T>& m, const Lu<T>& f) {
  if (f.singular) return std::numeric_limits<double>::infinity();
  const std::size_t n = m.rows();
  double inv_norm = 0.0;
  std::vector<T> e(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::fill(e.begin(), e.end(), T{});
    e[c] = T{1};
    const auto col = lu_solve(f, std::span<const T>(e));
    double s = 0.0;
    for (const auto& v : col) s += std::abs(v);
    if (!std::isfinite(s)) return std::numeric_limits<double>::infinity();
    inv_norm = std::max(inv_norm, s);
  }
  return matrix_norm1(m) * inv_norm;
}

template <typename T>
std::vector<T> solve_impl(const BasicMatrix<T>& m, std::span<const T> v, double max_condition) {
  if (!m.is_square()) throw DimensionError("solve_linear: matrix is not square");
  if (m.rows() != v.size()) throw DimensionError("solve_linear: right-hand side size mismatch");
  const auto f = lu_factor(m);
  const double cond = condition_from_lu(m, f);
  if (!(cond <= max_condition)) {
    throw SingularityError("solve_linear: matrix is singular to working precision (condition " +
                               std::to_string(cond) + ")",
                           cond);
  }
  return lu_solve(f, v);
}

}  // namespace

Vector solve_linear(const Matrix& m, std::span<const double> v, double max_condition) {
  return solve_impl(m, v, max_condition);
}

std::vector<Complex> solve_linear(const ComplexMatrix& m, std::span<const Complex> v,
                                  double max_condition) {
  return solve_impl(m, v, max_condition);
}

Matrix solve_linear(const Matrix& m, const Matrix& b, double max_condition) {
  if (!m.is_square()) throw DimensionError("solve_linear: matrix is not square");
  if (m.rows() != b.rows()) throw DimensionError("solve_linear: right-hand side size mismatch");
  const auto f = lu_factor(m);
  const double cond = condition_from_lu(m, f);
  if (!(cond <= max_condition)) {
    throw SingularityError("solve_linear: matrix is singular to working precision (condition " +
                               std::to_string(cond) + ")",
                           cond);
  }
  Matrix out(b.rows(), b.cols());
  for (std::size_t c = 0; c < b.cols(); ++c) {
    const auto col = b.column(c);
    const auto x = lu_solve(f, std::span<const double>(col));
    for (std::size_t r = 0; r < b.rows(); ++r) out(r, c) = x[r];
  }
  return out;
}

double condition_number(const Matrix& m) {
  if (!m.is_square()) throw DimensionError("condition_number: matrix is not square");
  return condition_from_lu(m, lu_factor(m));
}

// ---------------------------------------------------------------------------
// Matrix exponential (Higham 2005 scaling and squaring)

namespace {

constexpr std::array<double, 14> kPade13 = {
    64764752532480000.0, 32382376266240000.0, 7771770303897600.0, 1187353796428800.0,
    129060195264000.0,   10559470521600.0,    670442572800.0,     33522128640.0,
    1323241920.0,        40840800.0,          960960.0,           16380.0,
    182.0,               1.0};
constexpr std::array<double, 10> kPade9 = {17643225600.0, 8821612800.0, 2075673600.0,
                                           302702400.0,   30270240.0,   2162160.0,
                                           110880.0,      3960.0,       90.0,
                                           1.0};
constexpr std::array<double, 8> kPade7 = {17297280.0, 8648640.0, 1995840.0, 277200.0,
                                          25200.0,    1512.0,    56.0,      1.0};
constexpr std::array<double, 6> kPade5 = {30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0};
constexpr std::array<double, 4> kPade3 = {120.0, 60.0, 12.0, 1.0};

constexpr double kTheta3 = 1.495585217958292e-2;
constexpr double kTheta5 = 2.539398330063230e-1;
constexpr double kTheta7 = 9.504178996162932e-1;
constexpr double kTheta9 = 2.097847961257068e0;
constexpr double kTheta13 = 5.371920351148152e0;

Matrix pade_ratio(const Matrix& u, const Matrix& v) {
  // (V - U)^{-1} (V + U). The denominator is well conditioned by the choice
  // of theta, so no condition guard is needed here.
  const Matrix p = v + u;
  const Matrix q = v - u;
  return solve_linear(q, p, std::numeric_limits<double>::infinity());
}

template <std::size_t K>
Matrix pade_low(const Matrix& a, const std::array<double, K>& b) {
  const std::size_t n = a.rows();
  const Matrix ident = Matrix::identity(n);
  const Matrix a2 = a * a;
  Matrix even_power = ident;
  Matrix u_inner(n, n);
  Matrix v(n, n);
  for (std::size_t k = 0; k < K; k += 2) {
    v += b[k] * even_power;
    u_inner += b[k + 1] * even_power;
    even_power = even_power * a2;
  }
  return pade_ratio(a * u_inner, v);
}

Matrix pade13(const Matrix& a) {
  const std::size_t n = a.rows();
  const auto& b = kPade13;
  const Matrix ident = Matrix::identity(n);
  const Matrix a2 = a * a;
  const Matrix a4 = a2 * a2;
  const Matrix a6 = a4 * a2;
  const Matrix u_inner =
      a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * ident;
  const Matrix v =
      a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * ident;
  return pade_ratio(a * u_inner, v);
}

}  // namespace

Matrix expm(const Matrix& a, double t) {
  if (!a.is_square()) throw DimensionError("expm: matrix is not square");
  if (!all_finite(a) || !std::isfinite(t)) throw DomainError("expm: non-finite input");
  const std::size_t n = a.rows();
  if (n == 0) return a;
  const Matrix at = a * t;
  const double norm = norm1(at);
  if (norm == 0.0) return Matrix::identity(n);
  if (norm <= kTheta3) return pade_low(at, kPade3);
  if (norm <= kTheta5) return pade_low(at, kPade5);
  if (norm <= kTheta7) return pade_low(at, kPade7);
  if (norm <= kTheta9) return pade_low(at, kPade9);

  int squarings = 0;
  if (norm > kTheta13) squarings = static_cast<int>(std::ceil(std::log2(norm / kTheta13)));
  Matrix r = pade13(at * std::ldexp(1.0, -squarings));
  for (int i = 0; i < squarings; ++i) r = r * r;
  return r;
}

Matrix expm_integral(const Matrix& a, const Matrix& b, double t) {
  if (!a.is_square()) throw DimensionError("expm_integral: A is not square");
  if (a.cols() != b.rows()) throw DimensionError("expm_integral: A and B row counts differ");
  const std::size_t n = a.rows();
  const std::size_t k = b.cols();
  Matrix aug(n + k, n + k);
  aug.set_block(0, 0, a);
  aug.set_block(0, n, b);
  return expm(aug, t).block(0, n, n, k);
}

// ---------------------------------------------------------------------------
// Eigenvalues: balance, Hessenberg reduction, Francis double-shift QR.

namespace {

void balance(Matrix& a) {
  constexpr double radix = 2.0;
  constexpr double sqrdx = radix * radix;
  const std::size_t n = a.rows();
  bool done = false;
  while (!done) {
    done = true;
    for (std::size_t i = 0; i < n; ++i) {
      double r = 0.0;
      double c = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        c += std::abs(a(j, i));
        r += std::abs(a(i, j));
      }
      if (c == 0.0 || r == 0.0) continue;
      double g = r / radix;
      double f = 1.0;
      const double s = c + r;
      while (c < g) {
        f *= radix;
        c *= sqrdx;
      }
      g = r * radix;
      while (c > g) {
        f /= radix;
        c /= sqrdx;
      }
      if ((c + r) / f < 0.95 * s) {
        done = false;
        g = 1.0 / f;
        for (std::size_t j = 0; j < n; ++j) a(i, j) *= g;
        for (std::size_t j = 0; j < n; ++j) a(j, i) *= f;
      }
    }
  }
}

// Gaussian elimination with pivoting to upper Hessenberg form.
void reduce_to_hessenberg(Matrix& a) {
  const std::size_t n = a.rows();
  for (std::size_t m = 1; m + 1 < n; ++m) {
    double x = 0.0;
    std::size_t piv = m;
    for (std::size_t j = m; j < n; ++j) {
      if (std::abs(a(j, m - 1)) > std::abs(x)) {
        x = a(j, m - 1);
        piv = j;
      }
    }
    if (piv != m) {
      for (std::size_t j = m - 1; j < n; ++j) std::swap(a(piv, j), a(m, j));
      for (std::size_t j = 0; j < n; ++j) std::swap(a(j, piv), a(j, m));
    }
    if (x == 0.0) continue;
    for (std::size_t i = m + 1; i < n; ++i) {
      double y = a(i, m - 1);
      if (y == 0.0) continue;
      y /= x;
      a(i, m - 1) = 0.0;
      for (std::size_t j = m; j < n; ++j) a(i, j) -= y * a(m, j);
      for (std::size_t j = 0; j < n; ++j) a(j, m) += y * a(j, i);
    }
  }
}

double sign_of(double magnitude, double s) { return s >= 0.0 ? std::abs(magnitude) : -std::abs(magnitude); }

std::vector<Complex> hessenberg_qr(Matrix& a) {
  const int n = static_cast<int>(a.rows());
  std::vector<Complex> w(a.rows());
  const int sweep_cap = 100 * n;
  int sweeps = 0;

  double anorm = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = std::max(i - 1, 0); j < n; ++j) anorm += std::abs(a(i, j));

  int nn = n - 1;
  double t = 0.0;
  while (nn >= 0) {
    int its = 0;
    int l = 0;
    do {
      for (l = nn; l >= 1; --l) {
        double s = std::abs(a(l - 1, l - 1)) + std::abs(a(l, l));
        if (s == 0.0) s = anorm;
        if (std::abs(a(l, l - 1)) + s == s) {
          a(l, l - 1) = 0.0;
          break;
        }
      }
      double x = a(nn, nn);
      if (l == nn) {
        w[nn] = x + t;
        --nn;
        continue;
      }
      double y = a(nn - 1, nn - 1);
      double ww = a(nn, nn - 1) * a(nn - 1, nn);
      if (l == nn - 1) {
        const double p = 0.5 * (y - x);
        const double q = p * p + ww;
        double z = std::sqrt(std::abs(q));
        x += t;
        if (q >= 0.0) {
          z = p + sign_of(z, p);
          w[nn - 1] = w[nn] = x + z;
          if (z != 0.0) w[nn] = x - ww / z;
        } else {
          w[nn - 1] = Complex(x + p, z);
          w[nn] = Complex(x + p, -z);
        }
        nn -= 2;
        continue;
      }

      if (++sweeps > sweep_cap) {
        throw NumericError("eigenvalues: QR iteration did not converge within " +
                           std::to_string(sweep_cap) + " sweeps");
      }
      if (its == 10 || its == 20) {
        // Exceptional shift to break cycles.
        t += x;
        for (int i = 0; i <= nn; ++i) a(i, i) -= x;
        const double s = std::abs(a(nn, nn - 1)) + std::abs(a(nn - 1, nn - 2));
        y = x = 0.75 * s;
        ww = -0.4375 * s * s;
      }
      ++its;

      int m = nn - 2;
      double p = 0.0, q = 0.0, r = 0.0, z = 0.0;
      for (; m >= l; --m) {
        z = a(m, m);
        r = x - z;
        double s = y - z;
        p = (r * s - ww) / a(m + 1, m) + a(m, m + 1);
        q = a(m + 1, m + 1) - z - r - s;
        r = a(m + 2, m + 1);
        s = std::abs(p) + std::abs(q) + std::abs(r);
        p /= s;
        q /= s;
        r /= s;
        if (m == l) break;
        const double u = std::abs(a(m, m - 1)) * (std::abs(q) + std::abs(r));
        const double v = std::abs(p) * (std::abs(a(m - 1, m - 1)) + std::abs(z) + std::abs(a(m + 1, m + 1)));
        if (u + v == v) break;
      }
      for (int i = m + 2; i <= nn; ++i) {
        a(i, i - 2) = 0.0;
        if (i != m + 2) a(i, i - 3) = 0.0;
      }
      for (int k = m; k <= nn - 1; ++k) {
        if (k != m) {
          p = a(k, k - 1);
          q = a(k + 1, k - 1);
          r = 0.0;
          if (k != nn - 1) r = a(k + 2, k - 1);
          x = std::abs(p) + std::abs(q) + std::abs(r);
          if (x != 0.0) {
            p /= x;
            q /= x;
            r /= x;
          }
        }
        const double s = sign_of(std::sqrt(p * p + q * q + r * r), p);
        if (s == 0.0) continue;
        if (k == m) {
          if (l != m) a(k, k - 1) = -a(k, k - 1);
        } else {
          a(k, k - 1) = -s * x;
        }
        p += s;
        x = p / s;
        y = q / s;
        z = r / s;
        q /= p;
        r /= p;
        for (int j = k; j <= nn; ++j) {
          p = a(k, j) + q * a(k + 1, j);
          if (k != nn - 1) {
            p += r * a(k + 2, j);
            a(k + 2, j) -= p * z;
          }
          a(k + 1, j) -= p * y;
          a(k, j) -= p * x;
        }
        const int mmin = nn < k + 3 ? nn : k + 3;
        for (int i = l; i <= mmin; ++i) {
          p = x * a(i, k) + y * a(i, k + 1);
          if (k != nn - 1) {
            p += z * a(i, k + 2);
            a(i, k + 2) -= p * r;
          }
          a(i, k + 1) -= p * q;
          a(i, k) -= p;
        }
      }
    } while (l < nn - 1);
  }
  return w;
}

}  // namespace

std::vector<Complex> eigenvalues(const Matrix& m) {
  if (!m.is_square()) throw DimensionError("eigenvalues: matrix is not square");
  if (!all_finite(m)) throw DomainError("eigenvalues: non-finite entries");
  if (m.rows() == 0) return {};
  Matrix a = m;
  balance(a);
  reduce_to_hessenberg(a);
  return hessenberg_qr(a);
}

// ---------------------------------------------------------------------------
// Scalar root finding and minimisation

double find_root(const std::function<double(double)>& f, double lo, double hi, double tol) {
  if (!(tol > 0.0)) throw DomainError("find_root: tolerance must be positive");
  if (!(lo <= hi)) throw DomainError("find_root: lo must not exceed hi");
  double a = lo;
  double b = hi;
  double fa = f(a);
  double fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if (!std::isfinite(fa) || !std::isfinite(fb) || std::signbit(fa) == std::signbit(fb)) {
    throw BracketError("find_root: no sign change on [" + std::to_string(lo) + ", " +
                       std::to_string(hi) + "]");
  }
  bool bisect_next = false;
  for (int it = 0; it < 1000 && (b - a) > tol; ++it) {
    const double width = b - a;
    double c = 0.5 * (a + b);
    if (!bisect_next) {
      const double secant = b - fb * (b - a) / (fb - fa);
      if (secant > a && secant < b) c = secant;
    }
    if (c <= a || c >= b) break;  // bracket exhausted at double resolution
    const double fc = f(c);
    if (fc == 0.0) return c;
    if (std::signbit(fc) == std::signbit(fa)) {
      a = c;
      fa = fc;
    } else {
      b = c;
      fb = fc;
    }
    // Fall back to a bisection step whenever false position failed to halve
    // the bracket; this bounds the iteration count by 2 log2(width / tol).
    bisect_next = (b - a) > 0.5 * width;
  }
  return std::abs(fa) <= std::abs(fb) ? a : b;
}

double find_root(const std::function<double(double)>& f, double lo, double hi) {
  const double width = hi - lo;
  const double tol = width > 0.0 ? 1e-12 * width : std::numeric_limits<double>::min();
  return find_root(f, lo, hi, tol);
}

double golden_section_min(const std::function<double(double)>& f, double lo, double hi, double rel_tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  const double scale = std::max(std::abs(lo), std::abs(hi));
  for (int it = 0; it < 300 && (b - a) > rel_tol * scale; ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return fc < fd ? c : d;
}

}  // namespace cotc
