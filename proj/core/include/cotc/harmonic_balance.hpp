#pragma once

// Fourier-series description of the switching waveform and the harmonic
// balance forms of the PDB and SNB conditions.

#include <utility>

#include "cotc/model.hpp"

namespace cotc {

enum class Summation {
  Plain,   // last partial sum
  Cesaro,  // mean of the final 10% of partial sums
};

/// Coefficient of the T-periodic on/off drive: (vs / j2n pi)(1 - e^{-j n ws d}).
/// n = 0 gives the mean vs d / T.
Complex square_wave_coeff(int n, double vs, double d, double T);

/// Coefficient over the base period 2T when consecutive periods are T - delta
/// and T + delta. n = 0 gives the mean vs d / T.
Complex period2_coeff(int n, double vs, double d, double T, double delta);

/// vd-to-vo transfer function of the buck power stage, normalised by vs.
Complex gv(Complex s, const BuckParams& p);
/// vd-to-iL transfer function (same denominator as gv).
Complex gi(Complex s, const BuckParams& p);
Complex gv_derivative(Complex s, const BuckParams& p);
Complex gi_derivative(Complex s, const BuckParams& p);

/// vd-to-(-y) gain with unity compensator: -Gv, -Ri Gi, or -(Gv + Ri Gi).
Complex feedback_gain(Complex s, const BuckParams& p, Scheme scheme);
Complex feedback_gain_derivative(Complex s, const BuckParams& p, Scheme scheme);

/// G(s) vs / (ma T). Throws DomainError at ma = 0 (the loop gain is infinite;
/// use the L2 form instead).
Complex loop_gain(Complex s, const BuckParams& p, Scheme scheme, double ma, double T);

/// Truncated Fourier series of the steady-state feedback signal at time t
/// (measured from the start of the on-time), without the vc offset.
double y0_series(double t, const BuckParams& p, Scheme scheme, double vc, double d, double T, int Nh);

struct ConvergenceReport {
  double value = 0.0;       // at Nh
  double at_half = 0.0;     // at Nh / 2
  double at_quarter = 0.0;  // at Nh / 4
  int Nh = 0;
  Summation summation = Summation::Cesaro;
};

/// Harmonic form of the PDB ramp requirement S(-1, D).
ConvergenceReport hb_pdb_splot(const BuckParams& p, Scheme scheme, double d, double T, int Nh,
                               Summation summation = Summation::Cesaro);

enum class LoopGainForm { Exact, FirstHarmonic };

struct LoopGainPdb {
  double value = 0.0;
  double boundary = 0.0;  // PDB where value equals this
};

/// Exact: the two-sided loop-gain sum, PDB at 2. FirstHarmonic: the real
/// part of the n = 1 term, PDB at 1.
LoopGainPdb loop_gain_pdb(const BuckParams& p, Scheme scheme, double ma, double d, double T, int Nh,
                          LoopGainForm form, Summation summation = Summation::Cesaro);

/// Two-sided gain sum over n in [-Nh, Nh] at switching frequency ws (T = 2 pi / ws).
/// The imaginary part is the conjugate-pairing residue.
Complex l2_sum(double ws, const BuckParams& p, Scheme scheme, double d, int Nh,
               Summation summation = Summation::Cesaro);
/// Real L2 value; PDB where it equals 2 T ma / vs.
double l2_plot(double ws, const BuckParams& p, Scheme scheme, double d, int Nh,
               Summation summation = Summation::Cesaro);
/// L2 scaled by vs / (ma T); PDB where it equals 2. Throws DomainError at ma = 0.
double l1_plot(double ws, const BuckParams& p, Scheme scheme, double ma, double d, int Nh,
               Summation summation = Summation::Cesaro);
/// One-sided sum over n >= 1; PDB where its real part equals T ma / vs.
Complex h_plot(double ws, const BuckParams& p, Scheme scheme, double d, int Nh,
               Summation summation = Summation::Cesaro);

/// Left side of the harmonic SNB condition; SNB where it equals ma / vs.
ConvergenceReport hb_snb_condition(const BuckParams& p, Scheme scheme, double d, double T, int Nh,
                                   Summation summation = Summation::Cesaro);

/// Residuals of the two trigonometric series used to reduce the V_COTC
/// harmonic PDB condition to closed form, Cesaro-summed over Nterms terms.
std::pair<double, double> series_identities_check(double D, int Nterms);

}  // namespace cotc
