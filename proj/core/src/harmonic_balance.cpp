#include "cotc/harmonic_balance.hpp"

#include <numbers>
#include <vector>

namespace cotc {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr Complex kJ{0.0, 1.0};

template <typename T>
T finish(const std::vector<T>& partial, std::size_t count, Summation s) {
  if (count == 0) return T{};
  if (s == Summation::Plain) return partial[count - 1];
  const std::size_t window = std::max<std::size_t>(1, count / 10);
  T acc{};
  for (std::size_t i = count - window; i < count; ++i) acc += partial[i];
  return acc / static_cast<double>(window);
}

template <typename Term>
ConvergenceReport summed(int Nh, Summation s, double offset, double factor, Term term) {
  if (Nh < 1) throw DomainError("harmonic truncation Nh must be at least 1");
  std::vector<double> partial(static_cast<std::size_t>(Nh));
  double acc = 0.0;
  for (int n = 1; n <= Nh; ++n) {
    acc += term(n);
    partial[static_cast<std::size_t>(n - 1)] = acc;
  }
  const auto at = [&](int k) { return offset + factor * finish(partial, static_cast<std::size_t>(std::max(k, 1)), s); };
  return {at(Nh), at(Nh / 2), at(Nh / 4), Nh, s};
}

void check_timing(double d, double T) {
  if (!(d > 0.0 && T > d && std::isfinite(T))) throw DomainError("harmonic balance needs 0 < d < T");
}

struct Stage {
  double a;  // s^2 coefficient of the shared denominator
  double b;  // s coefficient
};

Stage denominator(const BuckParams& p) {
  return {p.L * p.C * (1.0 + p.Rc / p.R), p.L / p.R + p.Rc * p.C};
}

Complex den(Complex s, const BuckParams& p) {
  const auto [a, b] = denominator(p);
  return a * s * s + b * s + 1.0;
}

Complex den_derivative(Complex s, const BuckParams& p) {
  const auto [a, b] = denominator(p);
  return 2.0 * a * s + b;
}

}  // namespace

Complex square_wave_coeff(int n, double vs, double d, double T) {
  check_timing(d, T);
  if (n == 0) return vs * d / T;
  const double ws = 2.0 * kPi / T;
  return vs / (kJ * (2.0 * kPi * n)) * (1.0 - std::exp(-kJ * (n * ws * d)));
}

Complex period2_coeff(int n, double vs, double d, double T, double delta) {
  check_timing(d, T);
  if (!(std::abs(delta) < T)) throw DomainError("period2_coeff: need |delta| < T");
  if (n == 0) return vs * d / T;
  const double ws = 2.0 * kPi / T;
  const double sign = n % 2 == 0 ? 1.0 : -1.0;
  return vs / (-kJ * (2.0 * kPi * n)) * (std::exp(-kJ * (n * ws * d / 2.0)) - 1.0) *
         (1.0 + sign * std::exp(kJ * (n * ws * delta / 2.0)));
}

Complex gv(Complex s, const BuckParams& p) { return (s * p.Rc * p.C + 1.0) / den(s, p); }

Complex gi(Complex s, const BuckParams& p) {
  return ((1.0 + p.Rc / p.R) * p.C * s + 1.0 / p.R) / den(s, p);
}

Complex gv_derivative(Complex s, const BuckParams& p) {
  const Complex q = den(s, p);
  return (p.Rc * p.C * q - (s * p.Rc * p.C + 1.0) * den_derivative(s, p)) / (q * q);
}

Complex gi_derivative(Complex s, const BuckParams& p) {
  const Complex q = den(s, p);
  const double k = (1.0 + p.Rc / p.R) * p.C;
  return (k * q - (k * s + 1.0 / p.R) * den_derivative(s, p)) / (q * q);
}

Complex feedback_gain(Complex s, const BuckParams& p, Scheme scheme) {
  switch (scheme) {
    case Scheme::VCotc:
      return -gv(s, p);
    case Scheme::CCotc:
      return -p.Ri * gi(s, p);
    case Scheme::VCotcCurrentRamp:
      return -(gv(s, p) + p.Ri * gi(s, p));
  }
  return {};
}

Complex feedback_gain_derivative(Complex s, const BuckParams& p, Scheme scheme) {
  switch (scheme) {
    case Scheme::VCotc:
      return -gv_derivative(s, p);
    case Scheme::CCotc:
      return -p.Ri * gi_derivative(s, p);
    case Scheme::VCotcCurrentRamp:
      return -(gv_derivative(s, p) + p.Ri * gi_derivative(s, p));
  }
  return {};
}

Complex loop_gain(Complex s, const BuckParams& p, Scheme scheme, double ma, double T) {
  if (ma == 0.0) throw DomainError("loop_gain: infinite at ma = 0, use the L2 form");
  return feedback_gain(s, p, scheme) * p.vs / (ma * T);
}

double y0_series(double t, const BuckParams& p, Scheme scheme, double vc, double d, double T, int Nh) {
  check_timing(d, T);
  if (Nh < 1) throw DomainError("y0_series: Nh must be at least 1");
  const double ws = 2.0 * kPi / T;
  const double gc0 = -1.0;
  double acc = (1.0 + gc0) * vc - p.vs * (d / T) * feedback_gain(0.0, p, scheme).real();
  Complex tail{};
  for (int n = 1; n <= Nh; ++n) {
    tail += square_wave_coeff(n, p.vs, d, T) * std::exp(kJ * (n * ws * t)) *
            feedback_gain(kJ * (n * ws), p, scheme);
  }
  return acc - 2.0 * tail.real();
}

namespace {

// n-th term of the one-sided PDB sum (e^{-j n ws d/2} - 1)(-1)^n G(j n ws / 2).
Complex pdb_term(int n, double ws, double d, const BuckParams& p, Scheme scheme) {
  const double sign = n % 2 == 0 ? 1.0 : -1.0;
  return (std::exp(-kJ * (n * ws * d / 2.0)) - 1.0) * sign *
         feedback_gain(kJ * (n * ws / 2.0), p, scheme);
}

}  // namespace

ConvergenceReport hb_pdb_splot(const BuckParams& p, Scheme scheme, double d, double T, int Nh,
                               Summation summation) {
  check_timing(d, T);
  const double ws = 2.0 * kPi / T;
  return summed(Nh, summation, 0.0, p.vs / T,
                [&](int n) { return pdb_term(n, ws, d, p, scheme).real(); });
}

Complex h_plot(double ws, const BuckParams& p, Scheme scheme, double d, int Nh, Summation summation) {
  if (Nh < 1) throw DomainError("h_plot: Nh must be at least 1");
  check_timing(d, 2.0 * kPi / ws);
  std::vector<Complex> partial(static_cast<std::size_t>(Nh));
  Complex acc{};
  for (int n = 1; n <= Nh; ++n) {
    acc += pdb_term(n, ws, d, p, scheme);
    partial[static_cast<std::size_t>(n - 1)] = acc;
  }
  return finish(partial, partial.size(), summation);
}

Complex l2_sum(double ws, const BuckParams& p, Scheme scheme, double d, int Nh, Summation summation) {
  if (Nh < 1) throw DomainError("l2_sum: Nh must be at least 1");
  check_timing(d, 2.0 * kPi / ws);
  // The n = 0 term vanishes: (e^0 - 1) G(0) = 0. Pairs (n, -n) are added
  // together so partial sums stay symmetric.
  std::vector<Complex> partial(static_cast<std::size_t>(Nh));
  Complex acc{};
  for (int n = 1; n <= Nh; ++n) {
    acc += pdb_term(n, ws, d, p, scheme) + pdb_term(-n, ws, d, p, scheme);
    partial[static_cast<std::size_t>(n - 1)] = acc;
  }
  return finish(partial, partial.size(), summation);
}

double l2_plot(double ws, const BuckParams& p, Scheme scheme, double d, int Nh, Summation summation) {
  return l2_sum(ws, p, scheme, d, Nh, summation).real();
}

double l1_plot(double ws, const BuckParams& p, Scheme scheme, double ma, double d, int Nh,
               Summation summation) {
  if (ma == 0.0) throw DomainError("l1_plot: loop gain is infinite at ma = 0, use the L2 plot");
  const double T = 2.0 * kPi / ws;
  return l2_plot(ws, p, scheme, d, Nh, summation) * p.vs / (ma * T);
}

LoopGainPdb loop_gain_pdb(const BuckParams& p, Scheme scheme, double ma, double d, double T, int Nh,
                          LoopGainForm form, Summation summation) {
  check_timing(d, T);
  if (ma == 0.0) throw DomainError("loop_gain_pdb: loop gain is infinite at ma = 0, use the L2 plot");
  const double ws = 2.0 * kPi / T;
  if (form == LoopGainForm::Exact) {
    return {l1_plot(ws, p, scheme, ma, d, Nh, summation), 2.0};
  }
  const Complex first = (1.0 - std::exp(-kJ * (ws * d / 2.0))) * loop_gain(kJ * (ws / 2.0), p, scheme, ma, T);
  return {first.real(), 1.0};
}

ConvergenceReport hb_snb_condition(const BuckParams& p, Scheme scheme, double d, double T, int Nh,
                                   Summation summation) {
  check_timing(d, T);
  const double ws = 2.0 * kPi / T;
  const double T2 = T * T;
  const double dc = d / T2 * feedback_gain(0.0, p, scheme).real();
  return summed(Nh, summation, dc, 2.0, [&](int n) {
    const Complex s = kJ * (n * ws);
    const Complex e = std::exp(-kJ * (n * ws * d));
    return (d / T2 * e * feedback_gain(s, p, scheme) +
            (1.0 - e) * feedback_gain_derivative(s, p, scheme) / T2)
        .real();
  });
}

std::pair<double, double> series_identities_check(double D, int Nterms) {
  if (!(D > 0.0 && D < 1.0)) throw DomainError("series_identities_check: duty must lie in (0, 1)");
  if (Nterms < 1) throw DomainError("series_identities_check: Nterms must be at least 1");
  const auto first = summed(Nterms, Summation::Cesaro, 0.0, 1.0, [&](int k) {
    const double sign = k % 2 == 0 ? 1.0 : -1.0;
    return (1.0 - std::cos(kPi * k * D)) * sign / (static_cast<double>(k) * k);
  });
  const auto second = summed(Nterms, Summation::Cesaro, 0.0, 1.0, [&](int k) {
    const double sign = k % 2 == 0 ? 1.0 : -1.0;
    return std::sin(kPi * k * D) * sign / k;
  });
  return {first.value + kPi * kPi * D * D / 4.0, second.value + kPi * D / 2.0};
}

}  // namespace cotc
