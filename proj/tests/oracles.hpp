#pragma once

// Independent reference computations used by the unit tests. Nothing here
// calls into the library under test.

#include <cmath>
#include <cstddef>
#include <functional>
#include <random>
#include <vector>

#include <cotc/model.hpp>
#include <cotc/numeric.hpp>

namespace oracle {

using cotc::Matrix;

/// e^{A t} from the first `terms` Taylor terms. Only for ||A t|| of order 1.
inline Matrix taylor_expm(const Matrix& a, double t, int terms = 50) {
  const std::size_t n = a.rows();
  Matrix sum = Matrix::identity(n);
  Matrix term = Matrix::identity(n);
  for (int k = 1; k < terms; ++k) {
    term = term * a;
    term *= t / k;
    sum += term;
  }
  return sum;
}

/// Composite Simpson rule with n (even) panels.
inline double simpson(const std::function<double(double)>& f, double a, double b, int n = 2000) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

/// Laplace expansion along the first row.
inline double det_cofactor(const Matrix& m) {
  const std::size_t n = m.rows();
  if (n == 1) return m(0, 0);
  if (n == 2) return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  double det = 0.0;
  for (std::size_t c = 0; c < n; ++c) {
    Matrix minor(n - 1, n - 1);
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t j = 0, k = 0; j < n; ++j)
        if (j != c) minor(i - 1, k++) = m(i, j);
    det += (c % 2 ? -1.0 : 1.0) * m(0, c) * det_cofactor(minor);
  }
  return det;
}

/// The on/off drive: vs for t mod T in [0, d), else 0.
inline double square_wave(double t, double vs, double d, double T) {
  const double r = t - T * std::floor(t / T);
  return r < d ? vs : 0.0;
}

/// Two consecutive cycles of length T - delta and T + delta, both starting with the on-time d.
inline double period2_wave(double t, double vs, double d, double T, double delta) {
  const double r = t - 2.0 * T * std::floor(t / (2.0 * T));
  if (r < d) return vs;
  const double t1 = T - delta;
  return (r >= t1 && r < t1 + d) ? vs : 0.0;
}

inline double uniform(std::mt19937& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline double log_uniform(std::mt19937& rng, double lo, double hi) {
  return std::exp(uniform(rng, std::log(lo), std::log(hi)));
}

inline Matrix random_matrix(std::mt19937& rng, std::size_t n, double scale = 1.0) {
  Matrix m(n, n);
  for (double& v : m.data()) v = uniform(rng, -scale, scale);
  return m;
}

/// A buck operating point drawn from practical component ranges.
struct BuckCase {
  cotc::BuckParams p;
  double d;
  double T;
};

inline BuckCase random_buck(std::mt19937& rng) {
  BuckCase c{};
  c.p.R = log_uniform(rng, 0.3, 10.0);
  c.p.L = log_uniform(rng, 1e-6, 10e-6);
  c.p.C = log_uniform(rng, 20e-6, 400e-6);
  c.p.Rc = log_uniform(rng, 2e-3, 40e-3);
  c.p.Ri = log_uniform(rng, 0.01, 0.2);
  c.p.vs = uniform(rng, 3.0, 15.0);
  c.T = log_uniform(rng, 0.8e-6, 5e-6);
  c.d = uniform(rng, 0.15, 0.85) * c.T;
  return c;
}

inline double rms(const std::vector<double>& e) {
  double s = 0.0;
  for (double v : e) s += v * v;
  return std::sqrt(s / static_cast<double>(e.size()));
}

}  // namespace oracle
