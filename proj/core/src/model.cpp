#include "cotc/model.hpp"

#include <cctype>
#include <numbers>

namespace cotc {

std::string_view to_string(Scheme s) {
  switch (s) {
    case Scheme::VCotc:
      return "V_COTC";
    case Scheme::CCotc:
      return "C_COTC";
    case Scheme::VCotcCurrentRamp:
      return "V_COTC_CURRENT_RAMP";
  }
  return "?";
}

Scheme parse_scheme(std::string_view text) {
  std::string up(text);
  for (auto& ch : up) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  for (char& ch : up)
    if (ch == '-') ch = '_';
  if (up == "V_COTC") return Scheme::VCotc;
  if (up == "C_COTC") return Scheme::CCotc;
  if (up == "V_COTC_CURRENT_RAMP") return Scheme::VCotcCurrentRamp;
  throw DomainError("unknown scheme '" + std::string(text) +
                    "' (expected V_COTC, C_COTC or V_COTC_CURRENT_RAMP)");
}

bool uses_sense_resistor(Scheme s) { return s != Scheme::VCotc; }

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw DomainError(msg);
}

}  // namespace

void BuckParams::validate() const {
  require(std::isfinite(R) && R > 0.0, "R must be a positive resistance in ohm");
  require(std::isfinite(L) && L > 0.0, "L must be a positive inductance in H");
  require(std::isfinite(C) && C > 0.0, "C must be a positive capacitance in F");
  require(std::isfinite(Rc) && Rc >= 0.0, "Rc must be a non-negative resistance in ohm");
  require(std::isfinite(Ri) && Ri >= 0.0, "Ri must be a non-negative resistance in ohm");
  require(std::isfinite(vs) && vs > 0.0, "vs must be a positive voltage in V");
  require(std::isfinite(vc), "vc must be a finite voltage in V");
}

void RampSpec::validate() const {
  require(std::isfinite(ma), "ma must be a finite slope in V/s");
  require(std::isfinite(d) && d > 0.0, "d must be a positive on-time in s");
}

double OperatingPoint::ws() const { return 2.0 * std::numbers::pi / T; }

void OperatingPoint::validate() const {
  require(std::isfinite(d) && d > 0.0, "d must be a positive on-time in s");
  require(std::isfinite(T) && T > d, "T must exceed the on-time d (0 < D < 1)");
}

Vector ConverterModel::E() const {
  Vector e(E1.size());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = 0.5 * (E1[i] + E2[i]);
  return e;
}

Vector ConverterModel::b11() const { return B1.column(0); }

void ConverterModel::validate() const {
  const std::size_t n = A1.rows();
  if (n == 0 || !A1.is_square()) throw DimensionError("model: A1 must be square and non-empty");
  if (A2.rows() != n || A2.cols() != n) throw DimensionError("model: A2 must match A1");
  if (B1.rows() != n || B1.cols() != 2) throw DimensionError("model: B1 must be N x 2");
  if (B2.rows() != n || B2.cols() != 2) throw DimensionError("model: B2 must be N x 2");
  if (C.size() != n || E1.size() != n || E2.size() != n)
    throw DimensionError("model: C, E1, E2 must be 1 x N");
  const bool finite = all_finite(A1) && all_finite(A2) && all_finite(B1) && all_finite(B2) &&
                      std::all_of(C.begin(), C.end(), [](double v) { return std::isfinite(v); }) &&
                      std::isfinite(D[0]) && std::isfinite(D[1]);
  if (!finite) throw DomainError("model: non-finite entries");
}

bool ConverterModel::has_buck_structure() const {
  if (!(A1 == A2)) return false;
  for (std::size_t i = 0; i < B2.rows(); ++i)
    if (B2(i, 0) != 0.0) return false;
  return true;
}

ConverterModel build_model(const BuckParams& p, Scheme s) {
  p.validate();
  const double rho = p.rho();
  ConverterModel m;
  m.A1 = Matrix{{-rho * p.Rc / p.L, -rho / p.L}, {rho / p.C, -rho / (p.R * p.C)}};
  m.A2 = m.A1;
  m.B1 = Matrix{{1.0 / p.L, 0.0}, {0.0, 0.0}};
  m.B2 = Matrix(2, 2);
  const Vector vout{rho * p.Rc, rho};
  switch (s) {
    case Scheme::VCotc:
      m.C = vout;
      break;
    case Scheme::CCotc:
      m.C = {p.Ri, 0.0};
      break;
    case Scheme::VCotcCurrentRamp:
      m.C = {vout[0] + p.Ri, vout[1]};
      break;
  }
  m.D = {0.0, -1.0};
  m.E1 = vout;
  m.E2 = vout;
  return m;
}

ConverterModel regularize_integrators(const ConverterModel& m, double delta) {
  if (!(delta > 0.0)) throw DomainError("regularize_integrators: delta must be positive");
  ConverterModel out = m;
  const auto shift = [delta](Matrix& a) {
    if (condition_number(a) > 1e14) a -= delta * Matrix::identity(a.rows());
  };
  const bool shared = m.A1 == m.A2;
  shift(out.A1);
  if (shared)
    out.A2 = out.A1;
  else
    shift(out.A2);
  return out;
}

double slope_normalizer(const BuckParams& p, double D, Scheme s) {
  if (!(D > 0.0 && D < 1.0)) throw DomainError("slope_normalizer: duty must lie in (0, 1)");
  const double r = s == Scheme::CCotc ? p.Ri : p.Rc;
  return r * p.vs * D / p.L;
}

}  // namespace cotc
