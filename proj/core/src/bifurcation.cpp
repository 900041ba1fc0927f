#include "cotc/bifurcation.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <utility>

namespace cotc {

namespace {

constexpr std::array<std::pair<Formula, std::string_view>, 32> kFormulaIds{{
    {Formula::SPlotExact, "s-plot-exact"},
    {Formula::PdbGeneral, "pdb-general"},
    {Formula::SnbGeneral, "snb-general"},
    {Formula::SPlotFirstOrder, "s-plot-first-order"},
    {Formula::PoleFirstOrder, "pole-first-order"},
    {Formula::PoleFirstOrderBuck, "pole-first-order-buck"},
    {Formula::PdbBuckExact, "pdb-buck-exact"},
    {Formula::PdbBuckQuadratic, "pdb-buck-quadratic"},
    {Formula::PdbBuckLinear, "pdb-buck-linear"},
    {Formula::OnTimeLinear, "on-time-linear"},
    {Formula::PdbVcotcLinear, "pdb-vcotc-linear"},
    {Formula::OnTimeVcotc, "on-time-vcotc"},
    {Formula::PdbVcotcSmallEsr, "pdb-vcotc-small-esr"},
    {Formula::OnTimeVcotcSmallEsr, "on-time-vcotc-small-esr"},
    {Formula::OnTimeVcotcNoRamp, "on-time-vcotc-no-ramp"},
    {Formula::OnTimeEsrRule, "on-time-esr-rule"},
    {Formula::PoleVcotc, "pole-vcotc"},
    {Formula::OnTimeVcotcPole, "on-time-vcotc-pole"},
    {Formula::PoleVcotcSmallRipple, "pole-vcotc-small-ripple"},
    {Formula::CtPoleVcotc, "ct-pole-vcotc"},
    {Formula::OnTimeCurrentRamp, "on-time-current-ramp"},
    {Formula::OnTimeCurrentRampSmallEsr, "on-time-current-ramp-small-esr"},
    {Formula::PoleCurrentRamp, "pole-current-ramp"},
    {Formula::RiCurrentRampPole, "ri-current-ramp-pole"},
    {Formula::PdbCcotcLinear, "pdb-ccotc-linear"},
    {Formula::PoleCcotc, "pole-ccotc"},
    {Formula::CtPoleCcotc, "ct-pole-ccotc"},
    {Formula::SnbBuckExact, "snb-buck-exact"},
    {Formula::SnbBuckQuadratic, "snb-buck-quadratic"},
    {Formula::SnbVcotcQuadratic, "snb-vcotc-quadratic"},
    {Formula::SnbCcotcQuadratic, "snb-ccotc-quadratic"},
    {Formula::EigenSearch, "eigen-search"},
}};

[[noreturn]] void unsupported(Formula f, std::string_view what) {
  throw UsageError("formula '" + std::string(formula_id(f)) + "' is not a " + std::string(what));
}

void require_scheme(Scheme have, Scheme want, Formula f) {
  if (have != want) {
    throw UsageError("formula '" + std::string(formula_id(f)) + "' applies to " +
                     std::string(to_string(want)) + ", not " + std::string(to_string(have)));
  }
}

void require_no_ramp(double ma, Formula f) {
  if (ma != 0.0)
    throw UsageError("formula '" + std::string(formula_id(f)) + "' assumes ma = 0");
}

void require_buck(const ConverterModel& m, std::string_view who) {
  if (!m.has_buck_structure())
    throw UsageError(std::string(who) + " needs A1 == A2 and B21 == 0");
}

void require_timing(double d, double T) {
  if (!(d > 0.0 && T >= d && std::isfinite(T))) throw DomainError("need 0 < d <= T");
}

struct BuckTerms {
  double cb = 0.0;    // C B11
  double cab = 0.0;   // C A1 B11
  double ca2b = 0.0;  // C A1^2 B11
};

BuckTerms buck_terms(const ConverterModel& m) {
  const Vector b = m.b11();
  const Vector ab = m.A1 * b;
  const Vector a2b = m.A1 * ab;
  return {dot(m.C, b), dot(m.C, ab), dot(m.C, a2b)};
}

double spectral_radius_at(const ConverterModel& m, double d, double T, const Inputs& u, double ma) {
  const SteadyState ss = steady_state_at(m, d, T, u);
  return spectral_radius(linearize(m, ss, ma));
}

}  // namespace

std::string_view formula_id(Formula f) {
  for (const auto& [k, v] : kFormulaIds)
    if (k == f) return v;
  return "?";
}

Formula parse_formula(std::string_view id) {
  for (const auto& [k, v] : kFormulaIds)
    if (v == id) return k;
  throw UsageError("unknown formula id '" + std::string(id) + "'");
}

const std::vector<Formula>& all_formulas() {
  static const std::vector<Formula> all = [] {
    std::vector<Formula> out;
    for (const auto& entry : kFormulaIds) out.push_back(entry.first);
    return out;
  }();
  return all;
}

std::string_view to_string(BifurcationKind k) { return k == BifurcationKind::PDB ? "PDB" : "SNB"; }

// ---------------------------------------------------------------------------

double s_exact(const ConverterModel& m, const SteadyState& ss, double lambda) {
  if (lambda == 0.0) return 0.0;
  const std::size_t n = m.order();
  const Matrix p = expm(m.A1, ss.d) * expm(m.A2, ss.T - ss.d);
  const Matrix lhs = Matrix::identity(n) - p * (1.0 / lambda);
  try {
    return dot(m.C, solve_linear(lhs, ss.xdot0_minus));
  } catch (const SingularityError&) {
    throw PoleEvaluationError("s_exact: lambda is an eigenvalue of the open-loop propagator");
  }
}

double s_approx(const ConverterModel& m, const SteadyState& ss, double lambda) {
  if (lambda == 1.0) throw PoleEvaluationError("s_approx: the approximation has a pole at lambda = 1");
  const Matrix drift = m.A1 * ss.d + m.A2 * (ss.T - ss.d);
  const Vector inner = add(ss.xdot0_minus, scale(drift * ss.xdot0_minus, 1.0 / (lambda - 1.0)));
  return lambda / (lambda - 1.0) * dot(m.C, inner);
}

std::vector<double> locus_poles(const ConverterModel& m, const SteadyState& ss, double ma,
                                double lo, double hi, std::size_t grid) {
  std::vector<double> out;
  if (!(hi > lo) || grid < 2) return out;
  const auto f = [&](double lam) { return s_exact(m, ss, lam) - ma; };
  const double scale_ref = std::abs(ma) + std::abs(dot(m.C, ss.xdot0_minus));
  double prev_x = lo;
  double prev_f = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t i = 0; i < grid; ++i) {
    const double x = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(grid - 1);
    double fx = std::numeric_limits<double>::quiet_NaN();
    try {
      fx = f(x);
    } catch (const PoleEvaluationError&) {
    }
    if (fx == 0.0) {
      out.push_back(x);
    } else if (std::isfinite(fx) && std::isfinite(prev_f) && prev_f != 0.0 &&
               std::signbit(fx) != std::signbit(prev_f)) {
      const double r = find_root(f, prev_x, x, 1e-14 * std::max(1.0, std::abs(x)));
      // A sign change across a resolvent pole is not an intersection.
      if (std::abs(f(r)) <= 1e-6 * std::max(scale_ref, 1.0)) out.push_back(r);
    }
    prev_x = x;
    prev_f = fx;
  }
  return out;
}

// ---------------------------------------------------------------------------

double pdb_boundary_exact(const ConverterModel& m, double vs, double d, double T) {
  require_buck(m, "pdb_boundary_exact");
  require_timing(d, T);
  const std::size_t n = m.order();
  const Matrix e = expm(m.A1, T);
  const Matrix lhs = Matrix::identity(n) - e * e;
  const Vector rhs = (e - expm(m.A1, T - d)) * m.b11();
  return dot(m.C, solve_linear(lhs, rhs)) * vs;
}

double pdb_boundary_approx(const ConverterModel& m, double vs, double d, double T, ApproxOrder order) {
  require_timing(d, T);
  const auto [cb, cab, ca2b] = buck_terms(m);
  const double D = d / T;
  if (order == ApproxOrder::Linear) return D * vs / 2.0 * (d / 2.0 * cab - cb);
  return (-D / 2.0 * cb + D * D / 4.0 * cab * T + (D - D * D * D) / 12.0 * ca2b * T * T) * vs;
}

BoundaryResult pdb_boundary(const BuckParams& p, Scheme s, double d, double T, Formula f) {
  p.validate();
  require_timing(d, T);
  const ConverterModel m = build_model(p, s);
  const double D = d / T;
  const double rho = p.rho();
  BoundaryResult r{BifurcationKind::PDB, 0.0, "V/s", f};
  switch (f) {
    case Formula::PdbGeneral:
      r.critical_value = s_exact(m, steady_state_at(m, d, T, {p.vs, p.vc}), -1.0);
      break;
    case Formula::PdbBuckExact:
      r.critical_value = pdb_boundary_exact(m, p.vs, d, T);
      break;
    case Formula::PdbBuckQuadratic:
      r.critical_value = pdb_boundary_approx(m, p.vs, d, T, ApproxOrder::Full);
      break;
    case Formula::PdbBuckLinear:
      r.critical_value = pdb_boundary_approx(m, p.vs, d, T, ApproxOrder::Linear);
      break;
    case Formula::PdbVcotcLinear:
      require_scheme(s, Scheme::VCotc, f);
      r.critical_value = D * p.vs * rho * rho / (2.0 * p.L * p.C) *
                         (d / 2.0 * (1.0 - p.Rc * p.Rc * p.C / p.L) - p.Rc * p.C / rho);
      break;
    case Formula::PdbVcotcSmallEsr:
      require_scheme(s, Scheme::VCotc, f);
      r.critical_value = D * p.vs / (2.0 * p.L * p.C) * (d / 2.0 - p.Rc * p.C);
      break;
    case Formula::PdbCcotcLinear:
      require_scheme(s, Scheme::CCotc, f);
      r.critical_value = -D * p.vs * p.Ri / (2.0 * p.L) * (d * rho * p.Rc / (2.0 * p.L) + 1.0);
      break;
    default:
      unsupported(f, "PDB boundary");
  }
  return r;
}

double DutyFamily::pdb_exact(double D) const { return pdb_boundary_exact(model, vs(D), d, T(D)); }

DutyExtremum max_pdb_over_duty(const DutyFamily& fam, double D_lo, double D_hi, std::size_t grid,
                               double rel_tol) {
  if (!(D_lo > 0.0 && D_hi <= 1.0 && D_hi > D_lo) || grid < 3)
    throw DomainError("max_pdb_over_duty: need 0 < D_lo < D_hi <= 1 and grid >= 3");
  const auto at = [&](std::size_t i) {
    return D_lo + (D_hi - D_lo) * static_cast<double>(i) / static_cast<double>(grid - 1);
  };
  std::size_t best = 0;
  double best_val = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < grid; ++i) {
    const double v = fam.pdb_exact(at(i));
    if (v > best_val) {
      best_val = v;
      best = i;
    }
  }
  const double lo = at(best == 0 ? 0 : best - 1);
  const double hi = at(std::min(best + 1, grid - 1));
  const double D = golden_section_min([&](double x) { return -fam.pdb_exact(x); }, lo, hi, rel_tol);
  const double v = fam.pdb_exact(D);
  if (v >= best_val) return {D, v};
  return {at(best), best_val};
}

std::optional<OnsetPoint> pdb_onset_duty(const DutyFamily& fam, double ma, double D_lo, double D_hi,
                                         std::size_t grid) {
  if (!(D_lo > 0.0 && D_hi <= 1.0 && D_hi > D_lo) || grid < 2)
    throw DomainError("pdb_onset_duty: need 0 < D_lo < D_hi <= 1 and grid >= 2");
  const auto g = [&](double D) { return fam.pdb_exact(D) - ma; };
  double prev_D = D_lo;
  double prev_g = g(D_lo);
  for (std::size_t i = 1; i < grid; ++i) {
    const double D = D_lo + (D_hi - D_lo) * static_cast<double>(i) / static_cast<double>(grid - 1);
    const double gv = g(D);
    if (prev_g == 0.0 || std::signbit(gv) != std::signbit(prev_g)) {
      const double Dc = prev_g == 0.0 ? prev_D : find_root(g, prev_D, D, 1e-15);
      return OnsetPoint{Dc, fam.T(Dc), fam.vs(Dc)};
    }
    prev_D = D;
    prev_g = gv;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------

double max_on_time(const BuckParams& p, Scheme s, double ma, double D, double T, Formula f) {
  p.validate();
  if (!(D > 0.0 && D < 1.0)) throw DomainError("max_on_time: duty must lie in (0, 1)");
  const double rho = p.rho();
  const double RcC = p.Rc * p.C;
  const double esr_term = 1.0 - p.Rc * p.Rc * p.C / p.L;
  switch (f) {
    case Formula::OnTimeLinear: {
      const auto t = buck_terms(build_model(p, s));
      if (!(t.cab > 0.0))
        throw DomainError("max_on_time: C A1 B11 <= 0 reverses the bound, no maximum on-time exists");
      return 2.0 * (t.cb + 2.0 * ma / (D * p.vs)) / t.cab;
    }
    case Formula::OnTimeVcotc:
      require_scheme(s, Scheme::VCotc, f);
      return 2.0 * (rho * p.Rc / p.L + 2.0 * ma / (D * p.vs)) / (rho * rho / (p.L * p.C) * esr_term);
    case Formula::OnTimeVcotcSmallEsr:
      require_scheme(s, Scheme::VCotc, f);
      return 2.0 * (RcC + 2.0 * ma * p.L * p.C / (D * p.vs));
    case Formula::OnTimeVcotcNoRamp:
      require_scheme(s, Scheme::VCotc, f);
      require_no_ramp(ma, f);
      return 2.0 * RcC / (rho * esr_term);
    case Formula::OnTimeEsrRule:
      require_scheme(s, Scheme::VCotc, f);
      require_no_ramp(ma, f);
      return 2.0 * RcC;
    case Formula::OnTimeVcotcPole: {
      require_scheme(s, Scheme::VCotc, f);
      require_no_ramp(ma, f);
      if (!(T > 0.0)) throw DomainError("max_on_time: the pole-based bound needs T > 0");
      const double tau = (p.R + p.Rc) * p.C;
      return 2.0 * (RcC + T * T / (4.0 * tau)) / (1.0 + T / (2.0 * tau));
    }
    case Formula::OnTimeCurrentRamp:
      require_scheme(s, Scheme::VCotcCurrentRamp, f);
      require_no_ramp(ma, f);
      return 2.0 * (rho * p.Rc + p.Ri) * p.C /
             (rho * rho * (esr_term - RcC * p.Ri / (rho * p.L)));
    case Formula::OnTimeCurrentRampSmallEsr:
      require_scheme(s, Scheme::VCotcCurrentRamp, f);
      require_no_ramp(ma, f);
      return 2.0 * (p.Rc + p.Ri) * p.C;
    case Formula::EigenSearch: {
      const ConverterModel m = build_model(p, s);
      const Inputs u{p.vs, p.vc};
      const auto excess = [&](double d) { return spectral_radius_at(m, d, d / D, u, ma) - 1.0; };
      const double tau = std::max(RcC, 1e-3 * std::sqrt(p.L * p.C));
      double lo = 1e-3 * tau;
      if (excess(lo) >= 0.0)
        throw NumericError("max_on_time: unstable even for a vanishing on-time");
      double hi = lo;
      for (int i = 0; i < 80 && excess(hi) < 0.0; ++i) {
        lo = hi;
        hi *= 2.0;
      }
      if (excess(hi) < 0.0) throw NumericError("max_on_time: no instability found");
      return find_root(excess, lo, hi, 1e-12 * hi);
    }
    default:
      unsupported(f, "maximum on-time formula");
  }
}

double min_sense_resistance(const BuckParams& p, double d, double T, Formula f) {
  p.validate();
  require_timing(d, T);
  const double rho = p.rho();
  const double RcC = p.Rc * p.C;
  switch (f) {
    case Formula::RiCurrentRampPole: {
      const double k = rho * T * (T - d);
      return (2.0 * d - 4.0 * RcC - k / (p.R * p.C)) / (4.0 * p.C + k / p.L);
    }
    case Formula::OnTimeCurrentRamp:
      return (d * rho * rho * (1.0 - p.Rc * p.Rc * p.C / p.L) / 2.0 - rho * RcC) /
             (p.C + d * rho * RcC / (2.0 * p.L));
    case Formula::OnTimeCurrentRampSmallEsr:
      return d / (2.0 * p.C) - p.Rc;
    case Formula::EigenSearch: {
      const auto excess = [&](double ri) {
        BuckParams q = p;
        q.Ri = ri;
        const ConverterModel m = build_model(q, Scheme::VCotcCurrentRamp);
        return spectral_radius_at(m, d, T, {q.vs, q.vc}, 0.0) - 1.0;
      };
      if (excess(0.0) < 0.0) return 0.0;
      double lo = 0.0;
      double hi = p.Rc > 0.0 ? p.Rc : 1e-3;
      for (int i = 0; i < 80 && excess(hi) >= 0.0; ++i) {
        lo = hi;
        hi *= 2.0;
      }
      if (excess(hi) >= 0.0) throw NumericError("min_sense_resistance: no stabilising Ri found");
      return find_root(excess, lo, hi, 1e-12 * hi);
    }
    default:
      unsupported(f, "minimum sense-resistance formula");
  }
}

double closed_form_pole(const BuckParams& p, Scheme s, double d, double T, Formula f) {
  p.validate();
  require_timing(d, T);
  const double rho = p.rho();
  switch (f) {
    case Formula::PoleFirstOrder: {
      const ConverterModel m = build_model(p, s);
      const SteadyState ss = steady_state_at(m, d, T, {p.vs, p.vc});
      const Matrix drift = m.A1 * d + m.A2 * (T - d);
      return 1.0 - dot(m.C, drift * ss.xdot0_minus) / dot(m.C, ss.xdot0_minus);
    }
    case Formula::PoleFirstOrderBuck: {
      const ConverterModel m = build_model(p, s);
      const SteadyState ss = steady_state_at(m, d, T, {p.vs, p.vc});
      const Vector ax = m.A1 * ss.x0_0;
      return 1.0 - dot(m.C, m.A1 * ax) * T / dot(m.C, ax);
    }
    case Formula::PoleVcotc:
      require_scheme(s, Scheme::VCotc, f);
      return 1.0 + 2.0 * T / (2.0 * p.Rc * p.C + T - d) * (rho * (T - d) / (2.0 * p.R * p.C) - 1.0);
    case Formula::PoleVcotcSmallRipple:
      require_scheme(s, Scheme::VCotc, f);
      return 1.0 - 2.0 * T / (2.0 * p.Rc * p.C + T - d);
    case Formula::PoleCurrentRamp:
      require_scheme(s, Scheme::VCotcCurrentRamp, f);
      return 1.0 + 2.0 * T / (2.0 * (p.Rc + p.Ri) * p.C + T - d) *
                       (rho * (T - d) / (2.0 * p.R * p.C) - 1.0 + rho * p.Ri * (T - d) / (2.0 * p.L));
    case Formula::PoleCcotc:
      require_scheme(s, Scheme::CCotc, f);
      return 1.0 - rho * T * (T - d) / (2.0 * p.L * p.C);
    default:
      unsupported(f, "pole formula");
  }
}

double equivalent_ct_pole(double lambda, double T, CtPoleMap map) {
  if (!(T > 0.0)) throw DomainError("equivalent_ct_pole: T must be positive");
  if (map == CtPoleMap::FirstOrder) return (1.0 - lambda) / T;
  if (!(lambda > 0.0)) throw DomainError("equivalent_ct_pole: log map needs lambda > 0");
  return -std::log(lambda) / T;
}

double closed_form_ct_pole(const BuckParams& p, Scheme s, double d, double T, Formula f) {
  p.validate();
  require_timing(d, T);
  switch (f) {
    case Formula::CtPoleVcotc:
      require_scheme(s, Scheme::VCotc, f);
      return 2.0 / (2.0 * p.Rc * p.C + T - d);
    case Formula::CtPoleCcotc:
      require_scheme(s, Scheme::CCotc, f);
      return p.rho() * (T - d) / (2.0 * p.L * p.C);
    default:
      unsupported(f, "continuous-time pole formula");
  }
}

// ---------------------------------------------------------------------------

double snb_boundary_exact(const ConverterModel& m, double vs, double d, double T) {
  require_buck(m, "snb_boundary_exact");
  require_timing(d, T);
  const std::size_t n = m.order();
  const Matrix e = expm(m.A1, T);
  const Matrix lhs = Matrix::identity(n) - e;
  const Vector rhs = (e - expm(m.A1, T - d)) * m.b11();
  return dot(m.C, solve_linear(lhs, solve_linear(lhs, rhs))) * vs;
}

double snb_boundary_approx(const ConverterModel& m, double vs, double d, double T) {
  require_timing(d, T);
  const auto t = buck_terms(m);
  const double cainvb = dot(m.C, solve_linear(m.A1, m.b11()));
  const double D = d / T;
  return (D / T * cainvb - D * D / 2.0 * t.cb + (2.0 * D * D * D - D) / 12.0 * t.cab * T) * vs;
}

BoundaryResult snb_boundary(const BuckParams& p, Scheme s, double d, double T, Formula f) {
  p.validate();
  require_timing(d, T);
  const ConverterModel m = build_model(p, s);
  const double D = d / T;
  const double rho = p.rho();
  const double cubic = (2.0 * D * D * D - D) / 12.0;
  BoundaryResult r{BifurcationKind::SNB, 0.0, "V/s", f};
  switch (f) {
    case Formula::SnbGeneral:
      r.critical_value = s_exact(m, steady_state_at(m, d, T, {p.vs, p.vc}), 1.0);
      break;
    case Formula::SnbBuckExact:
      r.critical_value = snb_boundary_exact(m, p.vs, d, T);
      break;
    case Formula::SnbBuckQuadratic:
      r.critical_value = snb_boundary_approx(m, p.vs, d, T);
      break;
    case Formula::SnbVcotcQuadratic:
      require_scheme(s, Scheme::VCotc, f);
      r.critical_value = p.vs * (-D / T - D * D * rho * p.Rc / (2.0 * p.L) +
                                 cubic * T * rho * rho / (p.L * p.C) * (1.0 - p.Rc * p.Rc * p.C / p.L));
      break;
    case Formula::SnbCcotcQuadratic:
      require_scheme(s, Scheme::CCotc, f);
      r.critical_value = p.vs * p.Ri *
                         (-D / (T * p.R) - D * D / (2.0 * p.L) - cubic * rho * p.Rc * T / (p.L * p.L));
      break;
    default:
      unsupported(f, "SNB boundary");
  }
  return r;
}

std::vector<SweepPoint> sweep(const std::function<double(double)>& f, double lo, double hi,
                              std::size_t n) {
  std::vector<SweepPoint> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x =
        n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    SweepPoint pt{x, std::numeric_limits<double>::quiet_NaN(), {}};
    try {
      pt.y = f(x);
    } catch (const Error& e) {
      pt.error = e.what();
    }
    out.push_back(std::move(pt));
  }
  return out;
}

}  // namespace cotc
