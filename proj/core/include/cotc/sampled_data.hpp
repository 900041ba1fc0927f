#pragma once

// Periodic steady state, the linearised cycle-to-cycle map and its
// z-domain transfer functions.

#include <vector>

#include "cotc/model.hpp"

namespace cotc {

struct SteadyState {
  Vector x0_0;         // state at the start of the on-stage
  Vector x0_d;         // state at the end of the on-stage
  Vector xdot0_minus;  // A2 x0_0 + B2 u, slope just before the cycle ends
  double T = 0.0;
  double d = 0.0;
  Inputs u;

  double D() const { return d / T; }
};

/// Unique T-periodic fixed point for on-time d. Throws SingularityError when
/// I - e^{A2(T-d)} e^{A1 d} is singular (see regularize_integrators).
SteadyState steady_state_at(const ConverterModel& m, double d, double T, const Inputs& u);

/// e^{A2(T-d)} e^{A1 d}, the unforced one-cycle propagator.
Matrix cycle_propagator(const ConverterModel& m, double d, double T);

/// Feedback value y0 = C x0(T) + D u at the end of the cycle.
double feedback_at(const ConverterModel& m, const SteadyState& ss);

/// vc that makes T a steady-state period: C x0(T) + D u = ma T.
double control_voltage_for_period(const ConverterModel& m, const RampSpec& ramp, double T,
                                  double vs);

struct PeriodRoot {
  double T = 0.0;
  SteadyState ss;
  int multiplicity = 1;  // 2 for a tangency (saddle-node) root
};

/// All roots of C x0(T) + D u - ma T on [T_lo, T_hi], from a uniform grid
/// scan refined by find_root. Tangential touches and merged sign-change
/// pairs are reported once with multiplicity 2.
std::vector<PeriodRoot> solve_period(const ConverterModel& m, const RampSpec& ramp,
                                     const Inputs& u, double T_lo, double T_hi,
                                     std::size_t grid = 2000);

struct LinearizedMap {
  Matrix Phi;
  Vector Gamma1;
  Vector Gamma2;
  Vector E;
  Matrix open_loop;  // e^{A2(T-d)} e^{A1 d}
  double T = 0.0;
};

/// Throws DegenerateSwitchingError when C xdot0(0-) equals ma.
LinearizedMap linearize(const ConverterModel& m, const SteadyState& ss, double ma);

std::vector<Complex> poles(const LinearizedMap& lin);
double spectral_radius(const LinearizedMap& lin);

/// E (zI - Phi)^{-1} Gamma2. Throws PoleEvaluationError within 1e-12 of a pole.
Complex control_to_output(const LinearizedMap& lin, Complex z);
/// E (zI - Phi)^{-1} Gamma1.
Complex audio_susceptibility(const LinearizedMap& lin, Complex z);

enum class TransferKind { ControlToOutput, AudioSusceptibility };

struct FrequencyPoint {
  double omega = 0.0;  // rad/s
  Complex value;
};

/// Logarithmic grid from omega_lo up to half the switching frequency.
std::vector<FrequencyPoint> frequency_response(const LinearizedMap& lin, TransferKind kind,
                                               double omega_lo, int points_per_decade = 200);

}  // namespace cotc
