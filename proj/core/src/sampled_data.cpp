#include "cotc/sampled_data.hpp"

#include <numbers>
#include <string>

namespace cotc {

namespace {

Vector input_vector(const Inputs& u) { return {u.vs, u.vc}; }

void check_timing(double d, double T) {
  if (!(std::isfinite(d) && std::isfinite(T) && d > 0.0 && T > d))
    throw DomainError("steady state requires 0 < d < T");
}

}  // namespace

Matrix cycle_propagator(const ConverterModel& m, double d, double T) {
  return expm(m.A2, T - d) * expm(m.A1, d);
}

SteadyState steady_state_at(const ConverterModel& m, double d, double T, const Inputs& u) {
  check_timing(d, T);
  const Vector uv = input_vector(u);
  const Matrix on = expm(m.A1, d);
  const Matrix off = expm(m.A2, T - d);
  const Vector forced_on = expm_integral(m.A1, m.B1, d) * uv;
  const Vector forced_off = expm_integral(m.A2, m.B2, T - d) * uv;
  const Vector rhs = add(off * forced_on, forced_off);

  const Matrix lhs = Matrix::identity(m.order()) - off * on;
  SteadyState ss;
  try {
    ss.x0_0 = solve_linear(lhs, rhs);
  } catch (const SingularityError& e) {
    throw SingularityError(
        "steady state: I - e^{A2(T-d)} e^{A1 d} is singular (an integrator pole?); "
        "regularize_integrators replaces zero poles by -delta",
        e.condition());
  }
  ss.x0_d = add(on * ss.x0_0, forced_on);
  ss.xdot0_minus = add(m.A2 * ss.x0_0, m.B2 * uv);
  ss.T = T;
  ss.d = d;
  ss.u = u;
  return ss;
}

double feedback_at(const ConverterModel& m, const SteadyState& ss) {
  return dot(m.C, ss.x0_0) + m.feedthrough(ss.u);
}

double control_voltage_for_period(const ConverterModel& m, const RampSpec& ramp, double T,
                                  double vs) {
  // The switching residual is affine in vc; two evaluations pin it down.
  const auto residual = [&](double vc) {
    const SteadyState ss = steady_state_at(m, ramp.d, T, {vs, vc});
    return feedback_at(m, ss) - ramp.ma * T;
  };
  const double r0 = residual(0.0);
  const double r1 = residual(1.0);
  const double slope = r1 - r0;
  if (slope == 0.0) throw NumericError("control_voltage_for_period: residual independent of vc");
  return -r0 / slope;
}

std::vector<PeriodRoot> solve_period(const ConverterModel& m, const RampSpec& ramp,
                                     const Inputs& u, double T_lo, double T_hi, std::size_t grid) {
  ramp.validate();
  if (!(T_lo > ramp.d && T_hi > T_lo)) throw DomainError("solve_period: need d < T_lo < T_hi");
  if (grid < 3) throw DomainError("solve_period: grid needs at least 3 points");

  const auto residual = [&](double T) {
    return feedback_at(m, steady_state_at(m, ramp.d, T, u)) - ramp.ma * T;
  };

  std::vector<double> ts(grid);
  std::vector<double> rs(grid);
  double scale = 0.0;
  for (std::size_t i = 0; i < grid; ++i) {
    ts[i] = T_lo + (T_hi - T_lo) * static_cast<double>(i) / static_cast<double>(grid - 1);
    rs[i] = residual(ts[i]);
    scale = std::max(scale, std::abs(rs[i] + ramp.ma * ts[i]) + std::abs(ramp.ma * ts[i]));
  }
  const double touch_tol = 1e-9 * std::max(scale, 1e-300);
  const double merge_tol = 1e-6 * (T_hi - T_lo) / static_cast<double>(grid - 1);

  std::vector<PeriodRoot> roots;
  const auto push = [&](double T, int mult) {
    if (!roots.empty() && std::abs(T - roots.back().T) <= merge_tol) {
      roots.back().multiplicity += mult;
      return;
    }
    roots.push_back({T, steady_state_at(m, ramp.d, T, u), mult});
  };

  for (std::size_t i = 0; i < grid; ++i) {
    if (rs[i] == 0.0) {
      push(ts[i], 1);
      continue;
    }
    if (i + 1 < grid && rs[i + 1] != 0.0 && std::signbit(rs[i]) != std::signbit(rs[i + 1])) {
      push(find_root(residual, ts[i], ts[i + 1], 1e-13 * ts[i]), 1);
      continue;
    }
    // Tangency: a local extremum of the residual that reaches zero without
    // crossing it on the grid.
    if (i == 0 || i + 1 >= grid) continue;
    if (std::signbit(rs[i - 1]) != std::signbit(rs[i]) ||
        std::signbit(rs[i + 1]) != std::signbit(rs[i]))
      continue;
    if (!(std::abs(rs[i]) <= std::abs(rs[i - 1]) && std::abs(rs[i]) <= std::abs(rs[i + 1])))
      continue;
    const auto mag = [&](double T) { return std::abs(residual(T)); };
    const double tmin = golden_section_min(mag, ts[i - 1], ts[i + 1], 1e-14);
    if (mag(tmin) <= touch_tol) push(tmin, 2);
  }
  return roots;
}

LinearizedMap linearize(const ConverterModel& m, const SteadyState& ss, double ma) {
  const double cx = dot(m.C, ss.xdot0_minus);
  const double denom = cx - ma;
  if (denom == 0.0 || std::abs(denom) <= 1e-14 * (std::abs(cx) + std::abs(ma))) {
    throw DegenerateSwitchingError(
        "linearize: ramp slope equals the feedback slope at the switching instant");
  }
  const std::size_t n = m.order();
  const Matrix on = expm(m.A1, ss.d);
  const Matrix off = expm(m.A2, ss.T - ss.d);
  const Matrix saltation = Matrix::identity(n) - outer(ss.xdot0_minus, m.C) * (1.0 / denom);

  LinearizedMap lin;
  lin.open_loop = off * on;
  lin.Phi = saltation * lin.open_loop;
  const Matrix forced = off * expm_integral(m.A1, m.B1, ss.d) + expm_integral(m.A2, m.B2, ss.T - ss.d);
  const Matrix gamma = saltation * forced - outer(ss.xdot0_minus, std::span<const double>(m.D)) * (1.0 / denom);
  lin.Gamma1 = gamma.column(0);
  lin.Gamma2 = gamma.column(1);
  lin.E = m.E();
  lin.T = ss.T;
  return lin;
}

std::vector<Complex> poles(const LinearizedMap& lin) { return eigenvalues(lin.Phi); }

double spectral_radius(const LinearizedMap& lin) {
  double r = 0.0;
  for (const auto& p : poles(lin)) r = std::max(r, std::abs(p));
  return r;
}

namespace {

Complex resolvent_gain(const LinearizedMap& lin, Complex z, const Vector& gamma) {
  for (const auto& p : poles(lin)) {
    if (std::abs(z - p) <= 1e-12 * std::max(1.0, std::abs(p)))
      throw PoleEvaluationError("transfer function evaluated at a pole of Phi");
  }
  const std::size_t n = lin.Phi.rows();
  ComplexMatrix zi = to_complex(lin.Phi) * Complex(-1.0);
  for (std::size_t i = 0; i < n; ++i) zi(i, i) += z;
  std::vector<Complex> g(gamma.begin(), gamma.end());
  const auto x = solve_linear(zi, std::span<const Complex>(g));
  Complex acc{};
  for (std::size_t i = 0; i < n; ++i) acc += lin.E[i] * x[i];
  return acc;
}

}  // namespace

Complex control_to_output(const LinearizedMap& lin, Complex z) {
  return resolvent_gain(lin, z, lin.Gamma2);
}

Complex audio_susceptibility(const LinearizedMap& lin, Complex z) {
  return resolvent_gain(lin, z, lin.Gamma1);
}

std::vector<FrequencyPoint> frequency_response(const LinearizedMap& lin, TransferKind kind,
                                               double omega_lo, int points_per_decade) {
  if (!(omega_lo > 0.0) || points_per_decade < 1)
    throw DomainError("frequency_response: need omega_lo > 0 and points_per_decade >= 1");
  const double omega_hi = std::numbers::pi / lin.T;
  std::vector<FrequencyPoint> out;
  if (omega_lo > omega_hi) return out;
  const double decades = std::log10(omega_hi / omega_lo);
  const auto count = static_cast<std::size_t>(std::ceil(decades * points_per_decade)) + 1;
  for (std::size_t i = 0; i < count; ++i) {
    const double w = count == 1 ? omega_lo
                                : omega_lo * std::pow(10.0, decades * static_cast<double>(i) /
                                                                static_cast<double>(count - 1));
    const Complex z = std::polar(1.0, w * lin.T);
    const Complex v = kind == TransferKind::ControlToOutput ? control_to_output(lin, z)
                                                            : audio_susceptibility(lin, z);
    out.push_back({w, v});
  }
  return out;
}

}  // namespace cotc
