#include <doctest.h>

#include <algorithm>
#include <cmath>

#include <cotc/bifurcation.hpp>
#include <cotc/sampled_data.hpp>
#include <cotc/simulator.hpp>

#include "oracles.hpp"

using namespace cotc;

namespace {

const BuckParams kEx1{0.5, 2e-6, 20e-6, 0.02, 0.0, 5.0, 0.0};
const BuckParams kEx8{10.0, 3.1e-6, 300e-6, 4.5e-3, 0.15, 13.2, 0.0};

std::vector<double> real_parts(const LinearizedMap& lin) {
  std::vector<double> out;
  for (Complex z : poles(lin)) out.push_back(z.real());
  std::sort(out.begin(), out.end());
  return out;
}

LinearizedMap ex_lin(const BuckParams& p, Scheme s, double d, double T, double ma) {
  const auto m = build_model(p, s);
  return linearize(m, steady_state_at(m, d, T, {p.vs, 0.0}), ma);
}

}  // namespace

TEST_SUITE("steady state") {
  TEST_CASE("Example 1 fixed point satisfies the cycle map") {
    const auto m = build_model(kEx1, Scheme::VCotc);
    const auto ss = steady_state_at(m, 1.2e-6, 3e-6, {5.0, 0.0});
    const Matrix e1 = expm(m.A1, 1.2e-6);
    const Matrix e2 = expm(m.A2, 1.8e-6);
    const Vector u{5.0, 0.0};
    const Vector xd = add(e1 * ss.x0_0, expm_integral(m.A1, m.B1, 1.2e-6) * u);
    const Vector xT = add(e2 * xd, expm_integral(m.A2, m.B2, 1.8e-6) * u);
    CHECK(norm2(subtract(xT, ss.x0_0)) <= 1e-9 * norm2(ss.x0_0));
    CHECK(norm2(subtract(xd, ss.x0_d)) <= 1e-9 * norm2(ss.x0_d));
  }

  TEST_CASE("Example 1 fixed point is close to the ripple estimate") {
    const auto m = build_model(kEx1, Scheme::VCotc);
    const auto ss = steady_state_at(m, 1.2e-6, 3e-6, {5.0, 0.0});
    const double D = 0.4;
    const double iL = 5.0 * D / 0.5 - 5.0 * D * (1.0 - D) * 3e-6 / (2.0 * 2e-6);
    CHECK(std::abs(ss.x0_0[0] - iL) <= 0.05 * iL);
    CHECK(std::abs(ss.x0_0[1] - 5.0 * D) <= 0.05 * 5.0 * D);
  }

  TEST_CASE("pure integrator stages are singular") {
    ConverterModel m = build_model(kEx1, Scheme::VCotc);
    m.A1 = Matrix::zeros(2, 2);
    m.A2 = Matrix::zeros(2, 2);
    m.B2 = Matrix::zeros(2, 2);
    CHECK_THROWS_AS(steady_state_at(m, 1e-6, 2e-6, {5.0, 0.0}), SingularityError);
    CHECK_NOTHROW(steady_state_at(regularize_integrators(m), 1e-6, 2e-6, {5.0, 0.0}));
  }

  TEST_CASE("bad timing is rejected") {
    const auto m = build_model(kEx1, Scheme::VCotc);
    CHECK_THROWS_AS(steady_state_at(m, 3e-6, 2e-6, {5.0, 0.0}), DomainError);
  }
}

TEST_SUITE("solve_period") {
  TEST_CASE("contains the period that fixed vc") {
    const auto m = build_model(kEx1, Scheme::VCotc);
    const RampSpec ramp{500.0, 1.2e-6};
    const double vc = control_voltage_for_period(m, ramp, 3e-6, 5.0);
    const auto ss = steady_state_at(m, 1.2e-6, 3e-6, {5.0, vc});
    CHECK(feedback_at(m, ss) == doctest::Approx(500.0 * 3e-6).epsilon(1e-9));
    const auto roots = solve_period(m, ramp, {5.0, vc}, 1.3e-6, 10e-6);
    const bool found = std::any_of(roots.begin(), roots.end(),
                                   [](const PeriodRoot& r) { return std::abs(r.T - 3e-6) < 1e-15; });
    CHECK(found);
  }

  TEST_CASE("a dominant ramp leaves exactly one root") {
    const auto m = build_model(kEx1, Scheme::VCotc);
    const RampSpec ramp{1e7, 1.2e-6};
    const double vc = control_voltage_for_period(m, ramp, 3e-6, 5.0);
    const auto roots = solve_period(m, ramp, {5.0, vc}, 1.3e-6, 10e-6);
    REQUIRE(roots.size() == 1);
    CHECK(roots[0].T == doctest::Approx(3e-6).epsilon(1e-10));
    CHECK(roots[0].multiplicity == 1);
  }

  TEST_CASE("at the saddle-node ramp the root is double") {
    const auto m = build_model(kEx8, Scheme::CCotc);
    const double ma = snb_boundary_exact(m, 13.2, 0.26e-6, 1.04e-6);
    const RampSpec ramp{ma, 0.26e-6};
    const double vc = control_voltage_for_period(m, ramp, 1.04e-6, 13.2);
    const auto roots = solve_period(m, ramp, {13.2, vc}, 0.5e-6, 2e-6);
    REQUIRE(roots.size() == 1);
    CHECK(roots[0].multiplicity == 2);
    CHECK(roots[0].T == doctest::Approx(1.04e-6).epsilon(1e-3));
  }
}

TEST_SUITE("linearized map") {
  TEST_CASE("Example 1 poles at ma = 0 are 0 and -1.1") {
    const auto ev = real_parts(ex_lin(kEx1, Scheme::VCotc, 1.2e-6, 3e-6, 0.0));
    CHECK(std::abs(ev[1]) <= 1e-9);
    CHECK(std::abs(ev[0] + 1.1) <= 0.02);
  }

  TEST_CASE("Example 2 poles at ma = 9500 are -0.5 and -0.2") {
    const auto ev = real_parts(ex_lin(kEx1, Scheme::VCotc, 1.2e-6, 3e-6, 9500.0));
    CHECK(std::abs(ev[0] + 0.5) <= 0.02);
    CHECK(std::abs(ev[1] + 0.2) <= 0.02);
  }

  TEST_CASE("Example 8 poles at ma = 0 are 0 and 0.9995") {
    const auto ev = real_parts(ex_lin(kEx8, Scheme::CCotc, 0.26e-6, 1.04e-6, 0.0));
    CHECK(std::abs(ev[0]) <= 1e-9);
    CHECK(std::abs(ev[1] - 0.9995) <= 1e-4);
  }

  TEST_CASE("vs input vector reduces to the on-stage integral when B21 = 0") {
    const auto m = build_model(kEx1, Scheme::VCotc);
    const auto ss = steady_state_at(m, 1.2e-6, 3e-6, {5.0, 0.0});
    const double ma = 3000.0;
    const auto lin = linearize(m, ss, ma);
    const Vector xdot = ss.xdot0_minus;
    const double denom = dot(m.C, xdot) - ma;
    const Matrix salt = Matrix::identity(2) - outer(xdot, m.C) * (1.0 / denom);
    Matrix b11(2, 1);
    b11(0, 0) = m.B1(0, 0);
    b11(1, 0) = m.B1(1, 0);
    const Vector ref = (salt * expm(m.A2, 1.8e-6) * expm_integral(m.A1, b11, 1.2e-6)).column(0);
    for (std::size_t i = 0; i < 2; ++i) CHECK(lin.Gamma1[i] == doctest::Approx(ref[i]).epsilon(1e-12));
  }

  TEST_CASE("equal ramp and feedback slopes are degenerate") {
    const auto m = build_model(kEx1, Scheme::VCotc);
    const auto ss = steady_state_at(m, 1.2e-6, 3e-6, {5.0, 0.0});
    CHECK_THROWS_AS(linearize(m, ss, dot(m.C, ss.xdot0_minus)), DegenerateSwitchingError);
  }
}

TEST_SUITE("transfer functions") {
  TEST_CASE("control-to-output at z = 1 is finite and matches a direct solve") {
    const auto lin = ex_lin(kEx8, Scheme::CCotc, 0.26e-6, 1.04e-6, 0.0);
    const Complex g = control_to_output(lin, 1.0);
    const Vector x = solve_linear(Matrix::identity(2) - lin.Phi, lin.Gamma2);
    CHECK(std::isfinite(g.real()));
    CHECK(g.real() == doctest::Approx(dot(lin.E, x)).epsilon(1e-10));
    CHECK(g.imag() == doctest::Approx(0.0));
  }

  TEST_CASE("strictly proper") {
    const auto lin = ex_lin(kEx1, Scheme::VCotc, 1.2e-6, 3e-6, 9500.0);
    const double lead = dot(lin.E, lin.Gamma2);
    for (double z : {1e3, 1e6, 1e9}) {
      const Complex g = control_to_output(lin, z);
      CHECK(std::abs(g * z - lead) <= 1e-2 * std::abs(lead) * std::max(1.0, 1e3 / z));
    }
  }

  TEST_CASE("evaluating on a pole throws") {
    const auto lin = ex_lin(kEx1, Scheme::VCotc, 1.2e-6, 3e-6, 9500.0);
    const auto ev = poles(lin);
    CHECK_THROWS_AS(control_to_output(lin, ev[0]), PoleEvaluationError);
    CHECK_THROWS_AS(audio_susceptibility(lin, ev[1]), PoleEvaluationError);
  }

  TEST_CASE("frequency response ends at half the switching frequency") {
    const auto lin = ex_lin(kEx1, Scheme::VCotc, 1.2e-6, 3e-6, 9500.0);
    const auto fr = frequency_response(lin, TransferKind::ControlToOutput, 100.0, 50);
    REQUIRE(fr.size() > 10);
    CHECK(fr.back().omega == doctest::Approx(std::numbers::pi / 3e-6).epsilon(1e-12));
    CHECK(std::abs(fr.back().value - control_to_output(lin, -1.0)) <= 1e-9 * std::abs(fr.back().value));
    for (std::size_t i = 1; i < fr.size(); ++i) CHECK(fr[i].omega > fr[i - 1].omega);
  }

  TEST_CASE("DC line rejection matches a simulated vs step within 2%") {
    const double ma = 9500.0;
    const double d = 1.2e-6;
    const double T = 3e-6;
    const auto m = build_model(kEx1, Scheme::VCotc);
    const RampSpec ramp{ma, d};
    const double vc = control_voltage_for_period(m, ramp, T, 5.0);
    const auto ss = steady_state_at(m, d, T, {5.0, vc});
    const auto lin = linearize(m, ss, ma);
    const double step = 5e-3;
    const auto trace = simulate(m, ramp, ss.x0_0, {5.0 + step, vc}, 400, T);
    const Vector dx = subtract(trace.records.back().x, ss.x0_0);
    const double measured = dot(lin.E, dx) / step;
    const double predicted = audio_susceptibility(lin, 1.0).real();
    CHECK(std::abs(measured - predicted) <= 0.02 * std::abs(predicted));
  }
}
