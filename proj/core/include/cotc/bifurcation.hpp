#pragma once

// S plots, pole locus, period-doubling (PDB) and saddle-node (SNB)
// boundaries, and the closed-form design formulas for the buck converter.

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cotc/sampled_data.hpp"

namespace cotc {

/// Every boundary, pole and design formula carries one of these ids.
enum class Formula {
  SPlotExact,
  PdbGeneral,
  SnbGeneral,
  SPlotFirstOrder,
  PoleFirstOrder,
  PoleFirstOrderBuck,
  PdbBuckExact,
  PdbBuckQuadratic,
  PdbBuckLinear,
  OnTimeLinear,
  PdbVcotcLinear,
  OnTimeVcotc,
  PdbVcotcSmallEsr,
  OnTimeVcotcSmallEsr,
  OnTimeVcotcNoRamp,
  OnTimeEsrRule,
  PoleVcotc,
  OnTimeVcotcPole,
  PoleVcotcSmallRipple,
  CtPoleVcotc,
  OnTimeCurrentRamp,
  OnTimeCurrentRampSmallEsr,
  PoleCurrentRamp,
  RiCurrentRampPole,
  PdbCcotcLinear,
  PoleCcotc,
  CtPoleCcotc,
  SnbBuckExact,
  SnbBuckQuadratic,
  SnbVcotcQuadratic,
  SnbCcotcQuadratic,
  EigenSearch,
};

std::string_view formula_id(Formula f);
Formula parse_formula(std::string_view id);
const std::vector<Formula>& all_formulas();

enum class BifurcationKind { PDB, SNB };
std::string_view to_string(BifurcationKind k);

struct BoundaryResult {
  BifurcationKind kind = BifurcationKind::PDB;
  double critical_value = 0.0;
  std::string unit = "V/s";
  Formula formula = Formula::PdbBuckExact;
};

// -- S plot ------------------------------------------------------------------

/// C (I - e^{A1 d} e^{A2(T-d)} / lambda)^{-1} xdot0(0-); 0 at lambda = 0.
/// Throws PoleEvaluationError when lambda is an open-loop eigenvalue.
double s_exact(const ConverterModel& m, const SteadyState& ss, double lambda);

/// First-order matrix approximation of s_exact. Throws PoleEvaluationError at lambda = 1.
double s_approx(const ConverterModel& m, const SteadyState& ss, double lambda);

/// Real lambda in [lo, hi] where s_exact(lambda) = ma (the pole-locus intersections).
std::vector<double> locus_poles(const ConverterModel& m, const SteadyState& ss, double ma,
                                double lo, double hi, std::size_t grid = 2000);

// -- PDB ---------------------------------------------------------------------

/// Buck closed form of S(-1, D). Needs A1 == A2 and B21 == 0 (UsageError otherwise).
double pdb_boundary_exact(const ConverterModel& m, double vs, double d, double T);

enum class ApproxOrder { Full, Linear };
/// Quadratic-in-T (Full) or linear (Linear) expansion of the PDB boundary.
double pdb_boundary_approx(const ConverterModel& m, double vs, double d, double T, ApproxOrder order);

/// Any PDB formula: PdbGeneral, PdbBuckExact, PdbBuckQuadratic, PdbBuckLinear,
/// PdbVcotcLinear, PdbVcotcSmallEsr, PdbCcotcLinear.
BoundaryResult pdb_boundary(const BuckParams& p, Scheme s, double d, double T, Formula f);

/// Operating points sharing the on-time d and output voltage vo, indexed by
/// duty D: T = d / D and vs = vo / D.
struct DutyFamily {
  ConverterModel model;
  double d = 0.0;
  double vo = 0.0;

  double T(double D) const { return std::max(d / D, d); }
  double vs(double D) const { return vo / D; }
  double pdb_exact(double D) const;
};

struct DutyExtremum {
  double D = 0.0;
  double value = 0.0;
};

/// Largest exact PDB ramp requirement over [D_lo, D_hi]: best of a uniform
/// grid, then golden-section refinement to rel_tol.
DutyExtremum max_pdb_over_duty(const DutyFamily& fam, double D_lo, double D_hi,
                               std::size_t grid = 400, double rel_tol = 1e-6);

struct OnsetPoint {
  double D = 0.0;
  double T = 0.0;
  double vs = 0.0;
};

/// First duty in (D_lo, D_hi) where the exact PDB requirement reaches ma.
std::optional<OnsetPoint> pdb_onset_duty(const DutyFamily& fam, double ma, double D_lo, double D_hi,
                                         std::size_t grid = 400);

// -- Design formulas ---------------------------------------------------------

/// Critical on-time. The exact EigenSearch keeps D fixed (T = d / D) and
/// locates the spectral-radius crossing of 1; the closed forms use T only
/// where the formula itself depends on it (OnTimeVcotcPole).
double max_on_time(const BuckParams& p, Scheme s, double ma, double D, double T, Formula f);

/// Minimum Ri for the current-ramp scheme (ma = 0). Formulas:
/// RiCurrentRampPole, OnTimeCurrentRamp, OnTimeCurrentRampSmallEsr, EigenSearch.
/// Closed forms may return Ri <= 0 (no sense resistance needed); the
/// eigenvalue search returns 0 in that case.
double min_sense_resistance(const BuckParams& p, double d, double T, Formula f);

/// Non-zero pole estimate at ma = 0. Formulas: PoleFirstOrder, PoleFirstOrderBuck,
/// PoleVcotc, PoleVcotcSmallRipple, PoleCurrentRamp, PoleCcotc.
double closed_form_pole(const BuckParams& p, Scheme s, double d, double T, Formula f);

enum class CtPoleMap { FirstOrder, Log };
/// (1 - lambda) / T, or -ln(lambda) / T for the Log map (lambda > 0).
double equivalent_ct_pole(double lambda, double T, CtPoleMap map = CtPoleMap::FirstOrder);

/// Closed-form continuous-time pole in 1/s: CtPoleVcotc or CtPoleCcotc.
double closed_form_ct_pole(const BuckParams& p, Scheme s, double d, double T, Formula f);

// -- SNB ---------------------------------------------------------------------

/// Buck closed form of S(1, D).
double snb_boundary_exact(const ConverterModel& m, double vs, double d, double T);
/// Expansion of S(1, D); needs A1 invertible.
double snb_boundary_approx(const ConverterModel& m, double vs, double d, double T);

/// Any SNB formula: SnbGeneral, SnbBuckExact, SnbBuckQuadratic,
/// SnbVcotcQuadratic, SnbCcotcQuadratic.
BoundaryResult snb_boundary(const BuckParams& p, Scheme s, double d, double T, Formula f);

// -- Sweeps ------------------------------------------------------------------

struct SweepPoint {
  double x = 0.0;
  double y = 0.0;  // NaN when the wrapped evaluation failed
  std::string error;
};

/// n uniformly spaced samples of f on [lo, hi]; library errors become NaN
/// entries carrying the message. n == 0 gives an empty table.
std::vector<SweepPoint> sweep(const std::function<double(double)>& f, double lo, double hi,
                              std::size_t n);

}  // namespace cotc
