#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numbers>

#include <spdlog/spdlog.h>

#include <cotc/cotc.hpp>

namespace cotc::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

using Handler = ResultTable (*)(const ConverterConfig&, const CommandOptions&);

struct Point {
  double d;
  double T;
  double D;
  BuckParams params;
};

Point base_point(const ConverterConfig& cfg) {
  const double D = cfg.duty();
  return {cfg.d, cfg.period(), D, cfg.params_at(D)};
}

/// Operating point with one swept quantity replaced. D and T move the period
/// with d fixed; d moves the on-time with T fixed.
Point point_at(const ConverterConfig& cfg, const std::string& key, double x) {
  Point pt = base_point(cfg);
  if (key == "D") {
    pt.D = x;
    pt.T = cfg.d / x;
  } else if (key == "T") {
    pt.T = x;
    pt.D = cfg.d / x;
  } else if (key == "d") {
    pt.d = x;
    pt.D = x / pt.T;
  } else {
    throw ConfigError("cannot sweep '" + key + "' here; use D, T or d");
  }
  pt.params = cfg.params_at(pt.D);
  return pt;
}

Column axis_column(const std::string& key) {
  if (key == "D") return {"D", "dimensionless"};
  if (key == "T") return {"T", "seconds"};
  if (key == "d") return {"d", "seconds"};
  if (key == "ma") return {"ma", "volts_per_second"};
  return {key, "dimensionless"};
}

double vc_for(const ConverterConfig& cfg, const ConverterModel& m, const Point& pt) {
  if (cfg.vc) return *cfg.vc;
  return control_voltage_for_period(m, {cfg.ma, pt.d}, pt.T, pt.params.vs);
}

/// Evaluates f, turning library errors into NaN and a debug log line.
double guarded(const std::function<double()>& f, const char* what) {
  try {
    return f();
  } catch (const Error& e) {
    spdlog::debug("{}: {}", what, e.what());
    return kNaN;
  }
}

/// Swept axis: --sweep if given (key restricted to `allowed`), else the default.
Sweep axis(const CommandOptions& opt, const Sweep& fallback, std::initializer_list<const char*> allowed) {
  if (!opt.sweep) return fallback;
  for (const char* k : allowed)
    if (opt.sweep->key == k) return *opt.sweep;
  std::string list;
  for (const char* k : allowed) list += (list.empty() ? "" : ", ") + std::string(k);
  throw ConfigError("--sweep key '" + opt.sweep->key + "' not supported here (use " + list + ")");
}

std::vector<double> single_or_sweep(const CommandOptions& opt, const ConverterConfig& cfg,
                                    std::string& key) {
  if (!opt.sweep) {
    key.clear();
    return {cfg.duty()};
  }
  key = axis(opt, {}, {"D", "T", "d"}).key;
  return opt.sweep->range.samples();
}

std::string join_ids(const std::vector<Formula>& fs) {
  std::string out;
  for (Formula f : fs) {
    if (!out.empty()) out += ',';
    out += formula_id(f);
  }
  return out;
}

std::vector<Formula> select(const std::vector<Formula>& applicable, const CommandOptions& opt) {
  if (!opt.formula) return applicable;
  const Formula f = parse_formula(*opt.formula);
  if (std::find(applicable.begin(), applicable.end(), f) == applicable.end())
    throw ConfigError("formula '" + *opt.formula + "' does not apply here (choose from " +
                      join_ids(applicable) + ")");
  return {f};
}

std::string column_name(Formula f) {
  std::string s(formula_id(f));
  std::replace(s.begin(), s.end(), '-', '_');
  return s;
}

// -- steady state and poles --------------------------------------------------

ResultTable cmd_steady_state(const ConverterConfig& cfg, const CommandOptions&) {
  const Point pt = base_point(cfg);
  const auto m = build_model(pt.params, cfg.scheme);
  const double vc = vc_for(cfg, m, pt);
  const auto ss = steady_state_at(m, pt.d, pt.T, {pt.params.vs, vc});
  ResultTable t({{"T", "seconds"},
                 {"D", "dimensionless"},
                 {"iL0", "amps"},
                 {"vC0", "volts"},
                 {"iLd", "amps"},
                 {"vCd", "volts"},
                 {"diL0", "amps_per_second"},
                 {"dvC0", "volts_per_second"},
                 {"vc", "volts"},
                 {"y0", "volts"}});
  t.add_row({pt.T, pt.D, ss.x0_0[0], ss.x0_0[1], ss.x0_d[0], ss.x0_d[1], ss.xdot0_minus[0],
             ss.xdot0_minus[1], vc, feedback_at(m, ss)});
  t.set_meta("formula_id", "steady-state");
  t.set_meta("scheme", std::string(to_string(cfg.scheme)));
  return t;
}

ResultTable cmd_poles(const ConverterConfig& cfg, const CommandOptions&) {
  const Point pt = base_point(cfg);
  const auto m = build_model(pt.params, cfg.scheme);
  const auto ss = steady_state_at(m, pt.d, pt.T, {pt.params.vs, vc_for(cfg, m, pt)});
  const auto lin = linearize(m, ss, cfg.ma);
  auto ev = poles(lin);
  std::sort(ev.begin(), ev.end(), [](Complex a, Complex b) {
    return a.real() != b.real() ? a.real() > b.real() : a.imag() > b.imag();
  });
  ResultTable t({{"re", "dimensionless"}, {"im", "dimensionless"}, {"abs", "dimensionless"},
                 {"ct_pole", "per_second"}});
  for (Complex z : ev) {
    const double ct = z.imag() == 0.0 ? equivalent_ct_pole(z.real(), pt.T) : kNaN;
    t.add_row({z.real(), z.imag(), std::abs(z), ct});
  }
  t.set_meta("formula_id", std::string(formula_id(Formula::EigenSearch)));
  t.set_meta("ct_pole_map", "first-order");
  t.set_meta("ma", format_number(cfg.ma));
  t.set_meta("spectral_radius", format_number(spectral_radius(lin)));
  return t;
}

// -- S plot and pole locus ---------------------------------------------------

ResultTable cmd_splot(const ConverterConfig& cfg, const CommandOptions& opt) {
  const double lambda = opt.lambda.value_or(-1.0);
  const Sweep ax = axis(opt, {"D", cfg.D_range}, {"D", "T", "d"});
  const bool buck = build_model(cfg.params, cfg.scheme).has_buck_structure();
  Formula exact = Formula::SPlotExact;
  Formula approx = Formula::SPlotFirstOrder;
  if (buck && lambda == -1.0) {
    exact = Formula::PdbBuckExact;
    approx = Formula::PdbBuckQuadratic;
  } else if (buck && lambda == 1.0) {
    exact = Formula::SnbBuckExact;
    approx = Formula::SnbBuckQuadratic;
  }

  ResultTable t({axis_column(ax.key), {"S", "volts_per_second"}, {"S_approx", "volts_per_second"}});
  for (double x : ax.range.samples()) {
    const Point pt = point_at(cfg, ax.key, x);
    const auto m = build_model(pt.params, cfg.scheme);
    const double vs = pt.params.vs;
    const double se = guarded(
        [&] {
          if (exact == Formula::PdbBuckExact) return pdb_boundary_exact(m, vs, pt.d, pt.T);
          if (exact == Formula::SnbBuckExact) return snb_boundary_exact(m, vs, pt.d, pt.T);
          return s_exact(m, steady_state_at(m, pt.d, pt.T, {vs, 0.0}), lambda);
        },
        "splot exact");
    const double sa = guarded(
        [&] {
          if (approx == Formula::PdbBuckQuadratic)
            return pdb_boundary_approx(m, vs, pt.d, pt.T, ApproxOrder::Full);
          if (approx == Formula::SnbBuckQuadratic) return snb_boundary_approx(m, vs, pt.d, pt.T);
          return s_approx(m, steady_state_at(m, pt.d, pt.T, {vs, 0.0}), lambda);
        },
        "splot approx");
    t.add_row({x, se, sa});
  }
  t.set_meta("formula_id", std::string(formula_id(exact)));
  t.set_meta("approx_formula_id", std::string(formula_id(approx)));
  t.set_meta("lambda", format_number(lambda));
  if (cfg.vo) t.set_meta("vo", format_number(*cfg.vo));
  return t;
}

ResultTable cmd_pole_locus(const ConverterConfig& cfg, const CommandOptions& opt) {
  const Sweep ax = axis(opt, {"lambda", cfg.lambda_range}, {"lambda"});
  const Point pt = base_point(cfg);
  const auto m = build_model(pt.params, cfg.scheme);
  const auto ss = steady_state_at(m, pt.d, pt.T, {pt.params.vs, 0.0});
  ResultTable t({{"lambda", "dimensionless"}, {"S", "volts_per_second"},
                 {"S_approx", "volts_per_second"}});
  for (double lam : ax.range.samples()) {
    t.add_row({lam, guarded([&] { return s_exact(m, ss, lam); }, "locus exact"),
               guarded([&] { return s_approx(m, ss, lam); }, "locus approx")});
  }
  t.set_meta("formula_id", std::string(formula_id(Formula::SPlotExact)));
  t.set_meta("approx_formula_id", std::string(formula_id(Formula::SPlotFirstOrder)));
  t.set_meta("ma", format_number(cfg.ma));
  std::string hits;
  if (ax.range.n > 0) {
    for (double r : locus_poles(m, ss, cfg.ma, ax.range.lo, ax.range.hi)) {
      if (!hits.empty()) hits += ' ';
      hits += format_number(r);
    }
  }
  t.set_meta("real_poles_at_ma", hits);
  return t;
}

// -- boundaries --------------------------------------------------------------

std::vector<Formula> pdb_formulas(Scheme s) {
  std::vector<Formula> fs{Formula::PdbGeneral, Formula::PdbBuckExact, Formula::PdbBuckQuadratic,
                          Formula::PdbBuckLinear};
  if (s == Scheme::VCotc) {
    fs.push_back(Formula::PdbVcotcLinear);
    fs.push_back(Formula::PdbVcotcSmallEsr);
  }
  if (s == Scheme::CCotc) fs.push_back(Formula::PdbCcotcLinear);
  return fs;
}

std::vector<Formula> snb_formulas(Scheme s) {
  std::vector<Formula> fs{Formula::SnbGeneral, Formula::SnbBuckExact, Formula::SnbBuckQuadratic};
  if (s == Scheme::VCotc) fs.push_back(Formula::SnbVcotcQuadratic);
  if (s == Scheme::CCotc) fs.push_back(Formula::SnbCcotcQuadratic);
  return fs;
}

using BoundaryFn = BoundaryResult (*)(const BuckParams&, Scheme, double, double, Formula);

ResultTable boundary_table(const ConverterConfig& cfg, const CommandOptions& opt,
                           const std::vector<Formula>& fs, BoundaryFn fn, bool with_hb) {
  std::string key;
  const auto xs = single_or_sweep(opt, cfg, key);
  std::vector<Column> cols;
  cols.push_back(key.empty() ? Column{"D", "dimensionless"} : axis_column(key));
  for (Formula f : fs) cols.push_back({column_name(f), "volts_per_second"});
  if (with_hb) cols.push_back({"hb_snb", "volts_per_second"});
  ResultTable t(std::move(cols));
  for (double x : xs) {
    const Point pt = key.empty() ? base_point(cfg) : point_at(cfg, key, x);
    std::vector<double> row{key.empty() ? pt.D : x};
    for (Formula f : fs)
      row.push_back(guarded([&] { return fn(pt.params, cfg.scheme, pt.d, pt.T, f).critical_value; },
                            "boundary"));
    if (with_hb)
      row.push_back(guarded(
          [&] {
            return hb_snb_condition(pt.params, cfg.scheme, pt.d, pt.T, cfg.Nh).value * pt.params.vs;
          },
          "hb snb"));
    t.add_row(std::move(row));
  }
  std::string ids = join_ids(fs);
  if (with_hb) ids += ",hb-snb";
  t.set_meta("formula_id", ids);
  if (with_hb) {
    t.set_meta("Nh", std::to_string(cfg.Nh));
    t.set_meta("summation", "cesaro");
  }
  return t;
}

ResultTable cmd_pdb_boundary(const ConverterConfig& cfg, const CommandOptions& opt) {
  auto t = boundary_table(cfg, opt, select(pdb_formulas(cfg.scheme), opt), pdb_boundary, false);
  t.set_meta("boundary", "PDB");
  return t;
}

ResultTable cmd_snb_boundary(const ConverterConfig& cfg, const CommandOptions& opt) {
  const auto fs = select(snb_formulas(cfg.scheme), opt);
  auto t = boundary_table(cfg, opt, fs, snb_boundary, !opt.formula);
  t.set_meta("boundary", "SNB");
  return t;
}

// -- design formulas ---------------------------------------------------------

std::vector<Formula> on_time_formulas(Scheme s) {
  std::vector<Formula> fs{Formula::EigenSearch, Formula::OnTimeLinear};
  if (s == Scheme::VCotc) {
    for (Formula f : {Formula::OnTimeVcotc, Formula::OnTimeVcotcSmallEsr, Formula::OnTimeVcotcNoRamp,
                      Formula::OnTimeEsrRule, Formula::OnTimeVcotcPole})
      fs.push_back(f);
  }
  if (s == Scheme::VCotcCurrentRamp) {
    fs.push_back(Formula::OnTimeCurrentRamp);
    fs.push_back(Formula::OnTimeCurrentRampSmallEsr);
  }
  return fs;
}

ResultTable cmd_max_on_time(const ConverterConfig& cfg, const CommandOptions& opt) {
  const auto fs = select(on_time_formulas(cfg.scheme), opt);
  const Point pt = base_point(cfg);
  std::vector<Column> cols;
  for (Formula f : fs) cols.push_back({column_name(f), "seconds"});
  ResultTable t(std::move(cols));
  std::vector<double> row;
  for (Formula f : fs)
    row.push_back(
        guarded([&] { return max_on_time(pt.params, cfg.scheme, cfg.ma, pt.D, pt.T, f); }, "on-time"));
  t.add_row(std::move(row));
  t.set_meta("formula_id", join_ids(fs));
  t.set_meta("D", format_number(pt.D));
  t.set_meta("ma", format_number(cfg.ma));
  return t;
}

ResultTable cmd_min_ri(const ConverterConfig& cfg, const CommandOptions& opt) {
  if (cfg.scheme != Scheme::VCotcCurrentRamp)
    throw ConfigError("min-ri needs scheme = V_COTC_CURRENT_RAMP");
  const auto fs = select({Formula::EigenSearch, Formula::RiCurrentRampPole, Formula::OnTimeCurrentRamp,
                          Formula::OnTimeCurrentRampSmallEsr},
                         opt);
  const Point pt = base_point(cfg);
  std::vector<Column> cols;
  for (Formula f : fs) cols.push_back({column_name(f), "ohms"});
  ResultTable t(std::move(cols));
  std::vector<double> row;
  for (Formula f : fs)
    row.push_back(guarded([&] { return min_sense_resistance(pt.params, pt.d, pt.T, f); }, "min-ri"));
  t.add_row(std::move(row));
  t.set_meta("formula_id", join_ids(fs));
  return t;
}

// -- harmonic balance --------------------------------------------------------

ResultTable cmd_hb_splot(const ConverterConfig& cfg, const CommandOptions& opt) {
  const Sweep ax = axis(opt, {"D", cfg.D_range}, {"D", "T", "d"});
  ResultTable t({axis_column(ax.key),
                 {"S_hb", "volts_per_second"},
                 {"S_hb_half", "volts_per_second"},
                 {"S_hb_quarter", "volts_per_second"},
                 {"S_exact", "volts_per_second"}});
  for (double x : ax.range.samples()) {
    const Point pt = point_at(cfg, ax.key, x);
    ConvergenceReport hb{kNaN, kNaN, kNaN, cfg.Nh, Summation::Cesaro};
    try {
      hb = hb_pdb_splot(pt.params, cfg.scheme, pt.d, pt.T, cfg.Nh);
    } catch (const Error& e) {
      spdlog::debug("hb-splot: {}", e.what());
    }
    const double exact = guarded(
        [&] {
          return pdb_boundary(pt.params, cfg.scheme, pt.d, pt.T, Formula::PdbBuckExact).critical_value;
        },
        "hb-splot exact");
    t.add_row({x, hb.value, hb.at_half, hb.at_quarter, exact});
  }
  t.set_meta("formula_id", "hb-pdb-splot," + std::string(formula_id(Formula::PdbBuckExact)));
  t.set_meta("Nh", std::to_string(cfg.Nh));
  t.set_meta("summation", "cesaro");
  return t;
}

enum class HbPlot { L1, L2, H };

ResultTable hb_plot(const ConverterConfig& cfg, const CommandOptions& opt, HbPlot which) {
  const Sweep ax = axis(opt, {"D", cfg.D_range}, {"D", "T", "d"});
  std::vector<Column> cols{axis_column(ax.key), {"ws", "radians_per_second"}};
  switch (which) {
    case HbPlot::L1:
      cols.push_back({"L1", "dimensionless"});
      cols.push_back({"L1_boundary", "dimensionless"});
      break;
    case HbPlot::L2:
      cols.push_back({"L2", "dimensionless"});
      cols.push_back({"L2_boundary", "dimensionless"});
      break;
    case HbPlot::H:
      cols.push_back({"H_re", "dimensionless"});
      cols.push_back({"H_im", "dimensionless"});
      cols.push_back({"H_boundary", "dimensionless"});
      break;
  }
  ResultTable t(std::move(cols));
  for (double x : ax.range.samples()) {
    const Point pt = point_at(cfg, ax.key, x);
    const double ws = 2.0 * std::numbers::pi / pt.T;
    const double vs = pt.params.vs;
    switch (which) {
      case HbPlot::L1:
        t.add_row({x, ws,
                   guarded([&] { return l1_plot(ws, pt.params, cfg.scheme, cfg.ma, pt.d, cfg.Nh); }, "l1"),
                   2.0});
        break;
      case HbPlot::L2:
        t.add_row({x, ws, guarded([&] { return l2_plot(ws, pt.params, cfg.scheme, pt.d, cfg.Nh); }, "l2"),
                   2.0 * pt.T * cfg.ma / vs});
        break;
      case HbPlot::H: {
        Complex h{kNaN, kNaN};
        try {
          h = h_plot(ws, pt.params, cfg.scheme, pt.d, cfg.Nh);
        } catch (const Error& e) {
          spdlog::debug("hplot: {}", e.what());
        }
        t.add_row({x, ws, h.real(), h.imag(), pt.T * cfg.ma / vs});
        break;
      }
    }
  }
  const char* ids[] = {"hb-l1", "hb-l2", "hb-h"};
  t.set_meta("formula_id", ids[static_cast<int>(which)]);
  t.set_meta("boundary", "PDB");
  t.set_meta("Nh", std::to_string(cfg.Nh));
  t.set_meta("summation", "cesaro");
  t.set_meta("ma", format_number(cfg.ma));
  return t;
}

ResultTable cmd_l1(const ConverterConfig& cfg, const CommandOptions& opt) { return hb_plot(cfg, opt, HbPlot::L1); }
ResultTable cmd_l2(const ConverterConfig& cfg, const CommandOptions& opt) { return hb_plot(cfg, opt, HbPlot::L2); }
ResultTable cmd_hplot(const ConverterConfig& cfg, const CommandOptions& opt) { return hb_plot(cfg, opt, HbPlot::H); }

// -- simulation --------------------------------------------------------------

ResultTable cmd_simulate(const ConverterConfig& cfg, const CommandOptions&) {
  const Point pt = base_point(cfg);
  const auto m = build_model(pt.params, cfg.scheme);
  const Inputs u{pt.params.vs, vc_for(cfg, m, pt)};
  const auto ss = steady_state_at(m, pt.d, pt.T, u);
  Vector x0 = ss.x0_0;
  for (double& v : x0) v *= 1.0 + cfg.kick;
  const RampSpec ramp{cfg.ma, pt.d};
  spdlog::info("simulate: {} cycles from the steady state kicked by {}", cfg.ncycles, cfg.kick);
  const auto trace = simulate(m, ramp, x0, u, cfg.ncycles, pt.T);

  ResultTable t({{"cycle", ""}, {"Tn", "seconds"}, {"iL", "amps"}, {"vC", "volts"},
                 {"y_at_switch", "volts"}});
  for (const auto& r : trace.records)
    t.add_row({static_cast<double>(r.cycle), r.Tn, r.x[0], r.x[1], r.y_at_switch});
  t.set_meta("formula_id", "simulation");
  t.set_meta("T_steady", format_number(pt.T));
  t.set_meta("vc", format_number(u.vc));
  t.set_meta("kick", format_number(cfg.kick));
  if (trace.records.size() > cfg.settle + 32) {
    const auto oc = classify_orbit(trace, {cfg.settle, 1e-6, 1e-5});
    t.set_meta("orbit", std::string(to_string(oc.kind)));
    t.set_meta("delta", format_number(oc.delta));
  } else {
    t.set_meta("orbit", "unclassified");
  }
  return t;
}

ResultTable cmd_onset(const ConverterConfig& cfg, const CommandOptions& opt) {
  const Sweep ax = axis(opt, {"ma", cfg.ma_range}, {"ma", "D"});
  const int iterations = ax.range.n > 0 ? static_cast<int>(ax.range.n) : 20;
  ProbeOptions probe;
  probe.cycles = std::max<std::size_t>(cfg.ncycles, probe.classify.settle + 100);

  auto stable_at = [&](double D, double ma) {
    const BuckParams p = cfg.params_at(D);
    const double T = cfg.d / D;
    const auto m = build_model(p, cfg.scheme);
    const double vc = control_voltage_for_period(m, {ma, cfg.d}, T, p.vs);
    const Inputs u{p.vs, vc};
    const auto ss = steady_state_at(m, cfg.d, T, u);
    const bool ok = settles_to_period1(m, {ma, cfg.d}, ss.x0_0, u, T, probe);
    spdlog::debug("onset probe D={} ma={} -> {}", D, ma, ok ? "period 1" : "unstable");
    return ok;
  };

  double simulated = 0.0;
  double analytic = 0.0;
  ResultTable t;
  if (ax.key == "ma") {
    const double D = cfg.duty();
    simulated = onset_search([&](double ma) { return stable_at(D, ma); }, ax.range.lo, ax.range.hi,
                             iterations);
    const BuckParams p = cfg.params_at(D);
    analytic = pdb_boundary(p, cfg.scheme, cfg.d, cfg.d / D, Formula::PdbBuckExact).critical_value;
    t = ResultTable({{"ma_simulated", "volts_per_second"}, {"ma_exact", "volts_per_second"}});
  } else {
    simulated = onset_search([&](double D) { return stable_at(D, cfg.ma); }, ax.range.lo, ax.range.hi,
                             iterations);
    DutyFamily fam{build_model(cfg.params, cfg.scheme), cfg.d, cfg.vo.value_or(cfg.params.vs * cfg.duty())};
    const auto on = pdb_onset_duty(fam, cfg.ma, ax.range.lo, ax.range.hi);
    analytic = on ? on->D : kNaN;
    t = ResultTable({{"D_simulated", "dimensionless"}, {"D_exact", "dimensionless"}});
  }
  t.add_row({simulated, analytic});
  t.set_meta("formula_id", "simulation," + std::string(formula_id(Formula::PdbBuckExact)));
  t.set_meta("axis", ax.key);
  t.set_meta("iterations", std::to_string(iterations));
  t.set_meta("probe_cycles", std::to_string(probe.cycles));
  t.set_meta("probe_settle", std::to_string(probe.classify.settle));
  return t;
}

const std::map<std::string, Handler>& handlers() {
  static const std::map<std::string, Handler> table{
      {"steady-state", cmd_steady_state}, {"poles", cmd_poles},
      {"splot", cmd_splot},               {"pole-locus", cmd_pole_locus},
      {"pdb-boundary", cmd_pdb_boundary}, {"snb-boundary", cmd_snb_boundary},
      {"max-on-time", cmd_max_on_time},   {"min-ri", cmd_min_ri},
      {"hb-splot", cmd_hb_splot},         {"l1", cmd_l1},
      {"l2", cmd_l2},                     {"hplot", cmd_hplot},
      {"simulate", cmd_simulate},         {"onset", cmd_onset},
  };
  return table;
}

}  // namespace

Sweep parse_sweep(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0)
    throw ConfigError("--sweep expects KEY=lo:hi:n, got '" + text + "'");
  const std::string key = text.substr(0, eq);
  return {key, parse_range(key, text.substr(eq + 1))};
}

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{
      "steady-state", "poles", "splot", "pole-locus", "pdb-boundary", "snb-boundary", "max-on-time",
      "min-ri",       "hb-splot", "l1", "l2",         "hplot",        "simulate",     "onset",
      "examples"};
  return names;
}

ResultTable run_command(const std::string& command, const ConverterConfig& cfg, const CommandOptions& opt) {
  const auto it = handlers().find(command);
  if (it == handlers().end()) throw ConfigError("unknown command '" + command + "'");
  spdlog::info("running {}", command);
  auto table = it->second(cfg, opt);
  table.set_meta("command", command);
  return table;
}

}  // namespace cotc::cli
