#include "cotc/simulator.hpp"

#include <ostream>

namespace cotc {

namespace {

struct OffStage {
  Matrix prop;    // e^{A2 h}
  Vector forced;  // int_0^h e^{A2 s} ds B2 u
};

OffStage off_stage(const ConverterModel& m, const Vector& uv, double h) {
  return {expm(m.A2, h), expm_integral(m.A2, m.B2, h) * uv};
}

}  // namespace

StepResult step_cycle(const ConverterModel& m, const RampSpec& ramp, std::span<const double> x,
                      const Inputs& u, double T_guess, double horizon_factor) {
  if (x.size() != m.order()) throw DimensionError("step_cycle: state size does not match the model");
  if (!std::all_of(x.begin(), x.end(), [](double v) { return std::isfinite(v); }))
    throw DomainError("step_cycle: non-finite state");
  if (!(T_guess > ramp.d)) throw DomainError("step_cycle: T_guess must exceed d");

  const Vector uv{u.vs, u.vc};
  const double d = ramp.d;
  const double fd = m.feedthrough(u);
  const Vector xd = add(expm(m.A1, d) * x, expm_integral(m.A1, m.B1, d) * uv);
  const auto g_of = [&](const Vector& z, double t) { return dot(m.C, z) + fd - ramp.ma * t; };

  if (g_of(xd, d) <= 0.0) return {xd, d, dot(m.C, xd) + fd};

  const auto state_at = [&](double t) {
    const OffStage s = off_stage(m, uv, t - d);
    return add(s.prop * xd, s.forced);
  };

  const double h = T_guess / 1000.0;
  const OffStage step = off_stage(m, uv, h);
  const double horizon = horizon_factor * T_guess;
  Vector z = xd;
  double t = d;
  for (std::size_t k = 1; t < horizon; ++k) {
    const double tn = d + static_cast<double>(k) * h;
    Vector zn = add(step.prop * z, step.forced);
    if (g_of(zn, tn) <= 0.0) {
      // Confirm with the directly evaluated state; the recurrence drifts by
      // rounding, which matters when a root sits exactly on a grid point.
      Vector exact = state_at(tn);
      if (g_of(exact, tn) > 0.0) {
        z = std::move(exact);
        t = tn;
        continue;
      }
      const auto g = [&](double s) { return g_of(state_at(s), s); };
      const double lo = g(t) > 0.0 ? t : d;
      const double Tn = find_root(g, lo, tn, 1e-12 * T_guess);
      const Vector xn = state_at(Tn);
      return {xn, Tn, dot(m.C, xn) + fd};
    }
    z = std::move(zn);
    t = tn;
  }
  throw MissedSwitchingError("step_cycle: feedback never reached the ramp within the scan horizon", 0);
}

std::vector<double> CycleTrace::periods() const {
  std::vector<double> out;
  out.reserve(records.size());
  for (const auto& r : records) out.push_back(r.Tn);
  return out;
}

CycleTrace simulate(const ConverterModel& m, const RampSpec& ramp, std::span<const double> x0,
                    const Inputs& u, std::size_t ncycles, double T_guess) {
  if (ncycles < 1) throw DomainError("simulate: ncycles must be at least 1");
  CycleTrace trace;
  trace.d = ramp.d;
  trace.records.reserve(ncycles);
  Vector x(x0.begin(), x0.end());
  double guess = T_guess;
  for (std::size_t n = 0; n < ncycles; ++n) {
    StepResult r;
    try {
      r = step_cycle(m, ramp, x, u, std::max(guess, 1.5 * ramp.d));
    } catch (const MissedSwitchingError& e) {
      throw MissedSwitchingError("simulate: missed switching at cycle " + std::to_string(n), n);
    }
    trace.records.push_back({n, x, r.Tn, r.y_at_switch, u});
    x = std::move(r.x_next);
    guess = r.Tn;
  }
  return trace;
}

void write_trace_csv(std::ostream& out, const CycleTrace& trace) {
  const auto old_precision = out.precision(17);
  out << "cycle,Tn_seconds,iL_amps,vC_volts,y_at_switch_volts\n";
  for (const auto& r : trace.records) {
    out << r.cycle << ',' << r.Tn << ',' << (r.x.size() > 0 ? r.x[0] : 0.0) << ','
        << (r.x.size() > 1 ? r.x[1] : 0.0) << ',' << r.y_at_switch << '\n';
  }
  out.precision(old_precision);
}

std::string_view to_string(OrbitKind k) {
  switch (k) {
    case OrbitKind::Period1:
      return "PERIOD1";
    case OrbitKind::Period2:
      return "PERIOD2";
    case OrbitKind::Other:
      return "OTHER";
  }
  return "?";
}

namespace {

struct Spread {
  double mean = 0.0;
  double width = 0.0;
};

template <typename It>
Spread spread_of(It first, It last, std::size_t stride) {
  double lo = *first;
  double hi = *first;
  double sum = 0.0;
  std::size_t n = 0;
  for (It it = first; it < last; it += static_cast<std::ptrdiff_t>(stride)) {
    lo = std::min(lo, *it);
    hi = std::max(hi, *it);
    sum += *it;
    ++n;
  }
  return {sum / static_cast<double>(n), hi - lo};
}

}  // namespace

OrbitClass classify_orbit(const CycleTrace& trace, const ClassifyOptions& opt) {
  if (trace.records.size() <= opt.settle + 32)
    throw DomainError("classify_orbit: trace must be longer than settle + 32 cycles");
  const auto ts = trace.periods();
  const auto first = ts.begin() + static_cast<std::ptrdiff_t>(opt.settle);
  const auto all = spread_of(first, ts.end(), 1);

  OrbitClass out;
  if (all.width <= opt.period_tol * all.mean) {
    out.kind = OrbitKind::Period1;
    out.periods = {all.mean};
    return out;
  }
  const auto even = spread_of(first, ts.end(), 2);
  const auto odd = spread_of(first + 1, ts.end(), 2);
  const double delta = 0.5 * std::abs(even.mean - odd.mean);
  if (even.width <= opt.period_tol * even.mean && odd.width <= opt.period_tol * odd.mean &&
      delta > opt.min_delta * all.mean) {
    out.kind = OrbitKind::Period2;
    out.periods = {std::min(even.mean, odd.mean), std::max(even.mean, odd.mean)};
    out.delta = delta;
    return out;
  }
  out.kind = OrbitKind::Other;
  return out;
}

double onset_search(const std::function<bool(double)>& stable, double lo, double hi, int iterations) {
  const bool at_lo = stable(lo);
  const bool at_hi = stable(hi);
  if (at_lo == at_hi)
    throw BracketError("onset_search: the orbit class is the same at both ends of the range");
  for (int i = 0; i < iterations; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (stable(mid) == at_lo)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

namespace {

Vector kicked(std::span<const double> x_star, double rel) {
  const double scale = std::max(norm_inf(x_star), 1e-300);
  Vector x(x_star.begin(), x_star.end());
  for (auto& v : x) v += rel * scale;
  return x;
}

}  // namespace

bool settles_to_period1(const ConverterModel& m, const RampSpec& ramp, std::span<const double> x_star,
                        const Inputs& u, double T, const ProbeOptions& opt) {
  try {
    double kick = opt.kick;
    if (kick <= 0.0) {
      // Size the kick so the early period deviation sits at the classifier's
      // threshold: decay then reads as period 1 and growth does not.
      constexpr double probe = 1e-9;
      const CycleTrace early = simulate(m, ramp, kicked(x_star, probe), u, 3, T);
      double dev = 0.0;
      for (std::size_t k = 1; k < early.records.size(); ++k)
        dev = std::max(dev, std::abs(early.records[k].Tn - T));
      if (!(dev > 0.0)) return true;
      kick = probe * 0.5 * opt.classify.period_tol * T / dev;
    }
    const CycleTrace trace = simulate(m, ramp, kicked(x_star, kick), u, opt.cycles, T);
    return classify_orbit(trace, opt.classify).kind == OrbitKind::Period1;
  } catch (const NumericError&) {
    return false;
  }
}

double estimate_multiplier(const ConverterModel& m, const RampSpec& ramp, std::span<const double> x_star,
                           const Inputs& u, double T, std::size_t cycles, double eps) {
  if (cycles < 3) throw DomainError("estimate_multiplier: needs at least 3 cycles");
  const std::size_t n = x_star.size();
  const double scale = std::max(norm_inf(x_star), 1e-300);
  double best = 0.0;
  for (std::size_t axis = 0; axis < n; ++axis) {
    Vector x(x_star.begin(), x_star.end());
    x[axis] += eps * scale;
    const CycleTrace trace = simulate(m, ramp, x, u, cycles + 1, T);
    std::vector<Vector> dev;
    for (const auto& r : trace.records) dev.push_back(subtract(r.x, x_star));
    // Fit log|dev_k| against k for k >= 1 (the first cycle carries the
    // deadbeat transient of any zero multiplier).
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    std::size_t count = 0;
    for (std::size_t k = 1; k < dev.size(); ++k) {
      const double v = norm2(dev[k]);
      if (!(v > 0.0)) continue;
      const double xk = static_cast<double>(k);
      const double yk = std::log(v);
      sx += xk;
      sy += yk;
      sxx += xk * xk;
      sxy += xk * yk;
      ++count;
    }
    if (count < 2) continue;
    const double c = static_cast<double>(count);
    const double slope = (c * sxy - sx * sy) / (c * sxx - sx * sx);
    double mag = std::exp(slope);
    std::size_t flips = 0;
    for (std::size_t k = 1; k + 1 < dev.size(); ++k)
      if (dot(dev[k], dev[k + 1]) < 0.0) ++flips;
    if (2 * flips > dev.size() - 2) mag = -mag;
    if (std::abs(mag) > std::abs(best)) best = mag;
  }
  return best;
}

}  // namespace cotc
