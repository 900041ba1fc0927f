#include <doctest.h>

#include <cmath>
#include <sstream>

#include <cotc/bifurcation.hpp>
#include <cotc/simulator.hpp>

using namespace cotc;

namespace {

const BuckParams kEx1{0.5, 2e-6, 20e-6, 0.02, 0.0, 5.0, 0.0};
const BuckParams kEx8{10.0, 3.1e-6, 300e-6, 4.5e-3, 0.15, 13.2, 0.0};

struct Case {
  ConverterModel m;
  RampSpec ramp;
  Inputs u;
  SteadyState ss;
  double T;
};

Case make_case(const BuckParams& p, Scheme s, double d, double T, double ma) {
  Case c{build_model(p, s), {ma, d}, {p.vs, 0.0}, {}, T};
  c.u.vc = control_voltage_for_period(c.m, c.ramp, T, p.vs);
  c.ss = steady_state_at(c.m, d, T, c.u);
  return c;
}

std::vector<Case> worked_cases() {
  return {make_case(kEx1, Scheme::VCotc, 1.2e-6, 3e-6, 0.0), make_case(kEx1, Scheme::VCotc, 1.2e-6, 3e-6, 9500.0),
          make_case(kEx1, Scheme::VCotc, 1.2e-6, 3e-6, 3000.0),
          make_case(kEx8, Scheme::CCotc, 0.26e-6, 1.04e-6, 0.0),
          make_case(kEx8, Scheme::CCotc, 0.26e-6, 1.04e-6, -1e5)};
}

CycleTrace synthetic(const std::vector<double>& periods) {
  CycleTrace t;
  t.d = 1e-7;
  for (std::size_t i = 0; i < periods.size(); ++i) t.records.push_back({i, {0.0, 0.0}, periods[i], 0.0, {}});
  return t;
}

}  // namespace

TEST_SUITE("step_cycle") {
  TEST_CASE("the sampled-data fixed point maps to itself") {
    for (const auto& c : worked_cases()) {
      const auto r = step_cycle(c.m, c.ramp, c.ss.x0_0, c.u, c.T);
      CHECK(std::abs(r.Tn - c.T) <= 1e-12 * c.T / 3e-6 * 3e-6);
      CHECK(norm2(subtract(r.x_next, c.ss.x0_0)) <= 1e-9 * norm2(c.ss.x0_0));
      CHECK(std::abs(r.y_at_switch - c.ramp.ma * r.Tn) <= 1e-9 * std::max(1.0, std::abs(c.u.vc)));
    }
  }

  TEST_CASE("an enormous ramp switches right after the on-time") {
    auto c = make_case(kEx1, Scheme::VCotc, 1.2e-6, 3e-6, 0.0);
    const RampSpec steep{1e12, 1.2e-6};
    const auto r = step_cycle(c.m, steep, c.ss.x0_0, c.u, 3e-6);
    CHECK(r.Tn >= 1.2e-6);
    CHECK(r.Tn - 1.2e-6 < 1e-3 * 3e-6);
  }

  TEST_CASE("deviation grows by the unstable pole magnitude") {
    auto c = make_case(kEx1, Scheme::VCotc, 1.2e-6, 3e-6, 0.0);
    Vector x = c.ss.x0_0;
    x[0] += 1e-6 * norm2(x);
    const auto r1 = step_cycle(c.m, c.ramp, x, c.u, 3e-6);
    const auto r2 = step_cycle(c.m, c.ramp, r1.x_next, c.u, r1.Tn);
    const auto r3 = step_cycle(c.m, c.ramp, r2.x_next, c.u, r2.Tn);
    const double ratio = norm2(subtract(r3.x_next, c.ss.x0_0)) / norm2(subtract(r2.x_next, c.ss.x0_0));
    CHECK(std::abs(ratio - 1.1) <= 0.05);
  }

  TEST_CASE("a feedback that never meets the ramp is a missed switch") {
    auto c = make_case(kEx1, Scheme::VCotc, 1.2e-6, 3e-6, 0.0);
    const Inputs far{5.0, -100.0};
    CHECK_THROWS_AS(step_cycle(c.m, c.ramp, c.ss.x0_0, far, 3e-6), MissedSwitchingError);
    try {
      simulate(c.m, c.ramp, c.ss.x0_0, far, 10, 3e-6);
    } catch (const MissedSwitchingError& e) {
      CHECK(e.cycle() == 0);
    }
  }
}

TEST_SUITE("linearization consistency") {
  TEST_CASE("one-cycle deviation equals Phi times the perturbation to second order") {
    for (const auto& c : worked_cases()) {
      const auto lin = linearize(c.m, c.ss, c.ramp.ma);
      const double scale = norm2(c.ss.x0_0);
      for (std::size_t axis = 0; axis < 2; ++axis) {
        auto residual = [&](double eps) {
          Vector x = c.ss.x0_0;
          Vector v(2, 0.0);
          v[axis] = eps * scale;
          x = add(x, v);
          const auto r = step_cycle(c.m, c.ramp, x, c.u, c.T);
          return norm2(subtract(subtract(r.x_next, c.ss.x0_0), lin.Phi * v));
        };
        const double r1 = residual(1e-5);
        const double r2 = residual(0.5e-5);
        CHECK(r1 <= 1e-2 * 1e-5 * scale);
        const double order = std::log2(r1 / r2);
        CHECK(order == doctest::Approx(2.0).epsilon(0.15));
      }
    }
  }

  TEST_CASE("estimated multipliers match the dominant pole") {
    auto c2 = make_case(kEx1, Scheme::VCotc, 1.2e-6, 3e-6, 9500.0);
    CHECK(estimate_multiplier(c2.m, c2.ramp, c2.ss.x0_0, c2.u, 3e-6) == doctest::Approx(-0.5).epsilon(0.1));
    auto c1 = make_case(kEx1, Scheme::VCotc, 1.2e-6, 3e-6, 0.0);
    CHECK(estimate_multiplier(c1.m, c1.ramp, c1.ss.x0_0, c1.u, 3e-6) == doctest::Approx(-1.0512).epsilon(0.01));
  }
}

TEST_SUITE("simulate") {
  TEST_CASE("Example 2 settles to period 1 within 100 cycles") {
    auto c = make_case(kEx1, Scheme::VCotc, 1.2e-6, 3e-6, 9500.0);
    Vector x = scale(c.ss.x0_0, 1.0 + 1e-3);
    const auto trace = simulate(c.m, c.ramp, x, c.u, 140, 3e-6);
    const auto oc = classify_orbit(trace, {100, 1e-6, 1e-5});
    CHECK(oc.kind == OrbitKind::Period1);
    REQUIRE(oc.periods.size() == 1);
    CHECK(oc.periods[0] == doctest::Approx(3e-6).epsilon(1e-6));
    for (const auto& r : trace.records) {
      CHECK(r.Tn > c.ramp.d);
      CHECK(std::abs(r.y_at_switch - c.ramp.ma * r.Tn) <= 1e-9 * std::abs(c.u.vc));
    }
  }

  TEST_CASE("Example 1 without a ramp develops alternating periods") {
    auto c = make_case(kEx1, Scheme::VCotc, 1.2e-6, 3e-6, 0.0);
    Vector x = scale(c.ss.x0_0, 1.0 + 1e-6);
    const auto trace = simulate(c.m, c.ramp, x, c.u, 60, 3e-6);
    const auto T = trace.periods();
    for (std::size_t n = 3; n + 1 < 40; ++n) {
      CHECK((T[n] - 3e-6) * (T[n + 1] - 3e-6) < 0.0);
      CHECK(std::abs(T[n + 1] - 3e-6) > std::abs(T[n] - 3e-6));
    }
  }

  TEST_CASE("Example 1 without a ramp settles into a period-2 orbit") {
    auto c = make_case(kEx1, Scheme::VCotc, 1.2e-6, 3e-6, 0.0);
    Vector x = scale(c.ss.x0_0, 1.0 + 1e-4);
    const auto trace = simulate(c.m, c.ramp, x, c.u, 1000, 3e-6);
    const auto oc = classify_orbit(trace);
    CHECK(oc.kind == OrbitKind::Period2);
    CHECK(oc.delta > 0.0);
  }

  TEST_CASE("no perturbation gives a constant trace") {
    auto c = make_case(kEx1, Scheme::VCotc, 1.2e-6, 3e-6, 9500.0);
    const auto trace = simulate(c.m, c.ramp, c.ss.x0_0, c.u, 50, 3e-6);
    for (double Tn : trace.periods()) CHECK(std::abs(Tn - 3e-6) <= 1e-15);
  }

  TEST_CASE("identical inputs give bit-identical traces") {
    auto c = make_case(kEx1, Scheme::VCotc, 1.2e-6, 3e-6, 500.0);
    Vector x = scale(c.ss.x0_0, 1.0 + 1e-3);
    const auto a = simulate(c.m, c.ramp, x, c.u, 300, 3e-6);
    const auto b = simulate(c.m, c.ramp, x, c.u, 300, 3e-6);
    REQUIRE(a.records.size() == b.records.size());
    bool same = true;
    for (std::size_t i = 0; i < a.records.size(); ++i)
      same = same && a.records[i].Tn == b.records[i].Tn && a.records[i].x == b.records[i].x;
    CHECK(same);
  }

  TEST_CASE("trace CSV columns") {
    auto c = make_case(kEx1, Scheme::VCotc, 1.2e-6, 3e-6, 9500.0);
    std::ostringstream out;
    write_trace_csv(out, simulate(c.m, c.ramp, c.ss.x0_0, c.u, 3, 3e-6));
    std::istringstream in(out.str());
    std::string header;
    std::getline(in, header);
    CHECK(header == "cycle,Tn_seconds,iL_amps,vC_volts,y_at_switch_volts");
    int lines = 0;
    for (std::string line; std::getline(in, line);) ++lines;
    CHECK(lines == 3);
  }

  TEST_CASE("ncycles must be positive") {
    auto c = make_case(kEx1, Scheme::VCotc, 1.2e-6, 3e-6, 9500.0);
    CHECK_THROWS_AS(simulate(c.m, c.ramp, c.ss.x0_0, c.u, 0, 3e-6), DomainError);
  }
}

TEST_SUITE("classify_orbit") {
  TEST_CASE("constant trace") {
    const auto oc = classify_orbit(synthetic(std::vector<double>(600, 2e-6)));
    CHECK(oc.kind == OrbitKind::Period1);
    CHECK(oc.delta == 0.0);
  }

  TEST_CASE("alternating trace") {
    std::vector<double> p(600);
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = i % 2 ? 2.1e-6 : 1.9e-6;
    const auto oc = classify_orbit(synthetic(p));
    CHECK(oc.kind == OrbitKind::Period2);
    CHECK(oc.delta == doctest::Approx(0.1e-6));
  }

  TEST_CASE("irregular trace") {
    std::vector<double> p(600);
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = 2e-6 * (1.0 + 0.1 * std::sin(0.7 * i));
    CHECK(classify_orbit(synthetic(p)).kind == OrbitKind::Other);
  }

  TEST_CASE("too short") {
    CHECK_THROWS_AS(classify_orbit(synthetic(std::vector<double>(520, 2e-6))), DomainError);
  }
}

TEST_SUITE("onset_search") {
  TEST_CASE("minimum stabilising ramp for Example 1 matches the exact boundary") {
    auto c = make_case(kEx1, Scheme::VCotc, 1.2e-6, 3e-6, 0.0);
    auto stable = [&](double ma) {
      const RampSpec ramp{ma, 1.2e-6};
      Inputs u{5.0, control_voltage_for_period(c.m, ramp, 3e-6, 5.0)};
      const auto ss = steady_state_at(c.m, 1.2e-6, 3e-6, u);
      return settles_to_period1(c.m, ramp, ss.x0_0, u, 3e-6);
    };
    const double ma = onset_search(stable, 0.0, 2000.0);
    CHECK(ma == doctest::Approx(pdb_boundary_exact(c.m, 5.0, 1.2e-6, 3e-6)).epsilon(0.01));
    CHECK(ma == doctest::Approx(943.4).epsilon(0.01));
  }

  TEST_CASE("duty family without a ramp loses stability at 0.36") {
    const auto m = build_model(kEx1, Scheme::VCotc);
    auto stable = [&](double D) {
      const double T = 1.2e-6 / D;
      const double vs = 2.0 / D;
      const RampSpec ramp{0.0, 1.2e-6};
      Inputs u{vs, control_voltage_for_period(m, ramp, T, vs)};
      const auto ss = steady_state_at(m, 1.2e-6, T, u);
      return settles_to_period1(m, ramp, ss.x0_0, u, T);
    };
    CHECK(std::abs(onset_search(stable, 0.2, 0.6) - 0.36) <= 0.01);
  }

  TEST_CASE("same verdict at both ends is a bracket error") {
    CHECK_THROWS_AS(onset_search([](double) { return true; }, 0.0, 1.0), BracketError);
  }

  TEST_CASE("bisection is deterministic") {
    auto f = [](double x) { return x < 0.3141; };
    CHECK(onset_search(f, 0.0, 1.0) == onset_search(f, 0.0, 1.0));
    CHECK(onset_search(f, 0.0, 1.0) == doctest::Approx(0.3141).epsilon(1e-5));
  }
}
