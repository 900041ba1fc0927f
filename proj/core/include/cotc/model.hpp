#pragma once

// Block-diagram converter models and the buck-converter builders.

#include <array>
#include <string>
#include <string_view>

#include "cotc/numeric.hpp"

namespace cotc {

enum class Scheme {
  VCotc,             // output voltage feedback
  CCotc,             // sensed inductor current feedback
  VCotcCurrentRamp,  // output voltage plus Ri * iL
};

std::string_view to_string(Scheme s);
/// Accepts "V_COTC", "C_COTC", "V_COTC_CURRENT_RAMP" (case-insensitive).
Scheme parse_scheme(std::string_view text);
bool uses_sense_resistor(Scheme s);

/// Physical buck parameters in SI units.
struct BuckParams {
  double R = 0.0;
  double L = 0.0;
  double C = 0.0;
  double Rc = 0.0;
  double Ri = 0.0;
  double vs = 0.0;
  double vc = 0.0;

  double rho() const { return R / (R + Rc); }
  /// Throws DomainError naming the offending field.
  void validate() const;
};

/// u = (vs, vc).
struct Inputs {
  double vs = 0.0;
  double vc = 0.0;

  std::array<double, 2> as_array() const { return {vs, vc}; }
};

struct RampSpec {
  double ma = 0.0;  // V/s, any sign
  double d = 0.0;   // on-time, s

  double amplitude(double T) const { return ma * T; }
  void validate() const;
};

struct OperatingPoint {
  double T = 0.0;
  double d = 0.0;

  static OperatingPoint from_duty(double d, double D) { return {d / D, d}; }
  double D() const { return d / T; }
  double fs() const { return 1.0 / T; }
  double ws() const;
  void validate() const;
};

/// Matrices of the switched linear model
///   on-stage  : xdot = A1 x + B1 u
///   off-stage : xdot = A2 x + B2 u
///   feedback  : y = C x + D u, compared against the ramp h(t) = ma t.
struct ConverterModel {
  Matrix A1;
  Matrix A2;
  Matrix B1;  // N x 2
  Matrix B2;  // N x 2
  Vector C;   // 1 x N
  std::array<double, 2> D{0.0, -1.0};
  Vector E1;
  Vector E2;

  std::size_t order() const { return A1.rows(); }
  /// (E1 + E2) / 2, the averaged output row.
  Vector E() const;
  /// First column of B1.
  Vector b11() const;
  double feedthrough(const Inputs& u) const { return D[0] * u.vs + D[1] * u.vc; }
  /// Throws DimensionError on inconsistent shapes, DomainError on non-finite entries.
  void validate() const;
  /// A1 == A2 and B21 == 0 (bitwise).
  bool has_buck_structure() const;
};

/// State ordering is (iL, vC).
ConverterModel build_model(const BuckParams& p, Scheme s);

/// Replaces every exactly-singular A1/A2 by A - delta I so that integrator
/// poles sit at -delta instead of 0. Never applied implicitly.
ConverterModel regularize_integrators(const ConverterModel& m, double delta = 1e-9);

/// Rc vs D / L for the voltage schemes, Ri vs D / L for C_COTC.
double slope_normalizer(const BuckParams& p, double D, Scheme s);

}  // namespace cotc
