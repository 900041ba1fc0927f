#pragma once

// Cycle-by-cycle iteration of the exact switched map, used as an
// independent oracle for fixed points, stability and bifurcation onsets.

#include <functional>
#include <iosfwd>
#include <vector>

#include "cotc/model.hpp"

namespace cotc {

struct StepResult {
  Vector x_next;
  double Tn = 0.0;
  double y_at_switch = 0.0;  // C x(Tn) + D u, equals ma Tn at the switch
};

/// One switching cycle from state x at the start of the on-time. Tn is the
/// first time after d at which the feedback reaches the ramp, found by a scan
/// with step T_guess / 1000 and refined to 1e-12 T_guess. When the feedback is
/// already below the ramp at d the switch fires at once and Tn = d.
/// Throws MissedSwitchingError (cycle 0) past horizon_factor * T_guess.
StepResult step_cycle(const ConverterModel& m, const RampSpec& ramp, std::span<const double> x,
                      const Inputs& u, double T_guess, double horizon_factor = 10.0);

struct CycleRecord {
  std::size_t cycle = 0;
  Vector x;  // state at the start of the cycle
  double Tn = 0.0;
  double y_at_switch = 0.0;
  Inputs u;
};

struct CycleTrace {
  std::vector<CycleRecord> records;
  double d = 0.0;

  std::vector<double> periods() const;
};

/// ncycles consecutive steps; each cycle's T_guess is the previous Tn (the
/// first uses T_guess, and guesses never drop below 1.5 d). A missed switch is
/// rethrown with its cycle index.
CycleTrace simulate(const ConverterModel& m, const RampSpec& ramp, std::span<const double> x0,
                    const Inputs& u, std::size_t ncycles, double T_guess);

/// Columns: cycle, Tn_seconds, iL_amps, vC_volts, y_at_switch_volts.
void write_trace_csv(std::ostream& out, const CycleTrace& trace);

enum class OrbitKind { Period1, Period2, Other };
std::string_view to_string(OrbitKind k);

struct OrbitClass {
  OrbitKind kind = OrbitKind::Other;
  std::vector<double> periods;  // one value (period 1), two values (period 2), else empty
  double delta = 0.0;           // half the difference of the two periods
};

struct ClassifyOptions {
  std::size_t settle = 500;
  double period_tol = 1e-6;   // relative spread for "constant"
  double min_delta = 1e-5;    // relative to the mean period
};

/// Needs more than settle + 32 records (DomainError otherwise).
OrbitClass classify_orbit(const CycleTrace& trace, const ClassifyOptions& opt = {});

/// Bisection (iterations halvings) for the parameter where stable(p) flips.
/// Throws BracketError when both ends agree.
double onset_search(const std::function<bool(double)>& stable, double lo, double hi,
                    int iterations = 20);

struct ProbeOptions {
  double kick = 0.0;           // relative perturbation; <= 0 sizes it from the classifier tolerance
  std::size_t cycles = 2000;   // simulated cycles, classification window included
  ClassifyOptions classify{1900, 1e-6, 1e-5};
};

/// Simulates from x_star kicked along every state axis and reports whether
/// the trace settles to period 1. The automatic kick makes the first period
/// deviations about half the classifier tolerance, so the verdict tracks
/// growth versus decay of the perturbation.
bool settles_to_period1(const ConverterModel& m, const RampSpec& ramp, std::span<const double> x_star,
                        const Inputs& u, double T, const ProbeOptions& opt = {});

/// Dominant cycle multiplier from the log-deviation slope over `cycles`
/// cycles, perturbing each state axis separately. Negative when the deviation
/// alternates in sign.
double estimate_multiplier(const ConverterModel& m, const RampSpec& ramp, std::span<const double> x_star,
                           const Inputs& u, double T, std::size_t cycles = 8, double eps = 1e-7);

}  // namespace cotc
