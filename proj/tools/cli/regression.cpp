#include "regression.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>

#include <cotc/cotc.hpp>

namespace cotc::cli {

namespace {

// Example 1: V_COTC buck, also the base of Examples 2-7 and 10.
const BuckParams kEx1{0.5, 2e-6, 20e-6, 0.02, 0.0, 5.0, 0.0};
constexpr double kEx1d = 1.2e-6;
constexpr double kEx1T = 3e-6;
constexpr double kEx4vo = 2.0;

// Example 8: C_COTC buck, also the base of Example 9.
const BuckParams kEx8{10.0, 3.1e-6, 300e-6, 4.5e-3, 0.15, 13.2, 0.0};
constexpr double kEx8d = 0.26e-6;
constexpr double kEx8T = 1.04e-6;

class Recorder {
 public:
  void check(int example, std::string quantity, double value, double expected, double tol) {
    rows_.push_back({example, std::move(quantity), value, expected, tol,
                     std::isfinite(value) && std::abs(value - expected) <= tol});
  }
  void check_rel(int example, std::string quantity, double value, double expected, double rel) {
    check(example, std::move(quantity), value, expected, std::abs(expected) * rel);
  }
  /// Runs body; a library error becomes a failed row.
  template <typename F>
  void guard(int example, F&& body) {
    try {
      body();
    } catch (const Error& e) {
      rows_.push_back({example, std::string("error: ") + e.what(), NAN, 0.0, 0.0, false});
    }
  }
  std::vector<RegressionRow> take() { return std::move(rows_); }

 private:
  std::vector<RegressionRow> rows_;
};

std::vector<double> sorted_real(const std::vector<Complex>& zs) {
  std::vector<double> out;
  for (Complex z : zs) out.push_back(z.real());
  std::sort(out.begin(), out.end());
  return out;
}

LinearizedMap ex_map(const BuckParams& p, Scheme s, double d, double T, double ma) {
  const auto m = build_model(p, s);
  return linearize(m, steady_state_at(m, d, T, {p.vs, 0.0}), ma);
}

}  // namespace

std::vector<RegressionRow> run_examples() {
  Recorder r;
  const auto m1 = build_model(kEx1, Scheme::VCotc);

  r.guard(1, [&] {
    const auto ev = sorted_real(poles(ex_map(kEx1, Scheme::VCotc, kEx1d, kEx1T, 0.0)));
    r.check(1, "pole 1 (eigen-search)", ev[1], 0.0, 1e-9);
    r.check(1, "pole 2 (eigen-search)", ev[0], -1.1, 0.02);
    r.check(1, "pole 2 (pole-vcotc)",
            closed_form_pole(kEx1, Scheme::VCotc, kEx1d, kEx1T, Formula::PoleVcotc), -1.1, 0.02);
    r.check(1, "pole 2 (pole-vcotc-small-ripple)",
            closed_form_pole(kEx1, Scheme::VCotc, kEx1d, kEx1T, Formula::PoleVcotcSmallRipple), -1.3, 0.02);
  });

  r.guard(2, [&] {
    const auto ev = sorted_real(poles(ex_map(kEx1, Scheme::VCotc, kEx1d, kEx1T, 9500.0)));
    r.check(2, "pole 1 at ma=9500", ev[0], -0.5, 0.02);
    r.check(2, "pole 2 at ma=9500", ev[1], -0.2, 0.02);
  });

  r.guard(3, [&] {
    const double exact = pdb_boundary_exact(m1, kEx1.vs, kEx1d, kEx1T);
    r.check(3, "min ramp (pdb-buck-exact) V/s", exact, 943.4, 0.5);
    const auto ss = steady_state_at(m1, kEx1d, kEx1T, {kEx1.vs, 0.0});
    const double eig = find_root(
        [&](double ma) { return spectral_radius(linearize(m1, ss, ma)) - 1.0; }, 0.0, 2.0 * exact);
    r.check_rel(3, "min ramp (eigen-search) V/s", eig, exact, 1e-3);
  });

  const DutyFamily fam{m1, kEx1d, kEx4vo};
  r.guard(4, [&] {
    r.check_rel(4, "max ramp over D in [0.2,1] V/s", max_pdb_over_duty(fam, 0.2, 1.0).value, 4217.0, 0.01);
    const auto zero = pdb_onset_duty(fam, 0.0, 0.2, 1.0);
    r.check(4, "zero crossing D", zero ? zero->D : NAN, 0.36, 0.005);
  });

  r.guard(5, [&] {
    const auto on = pdb_onset_duty(fam, 0.0, 0.2, 1.0);
    if (!on) throw NumericError("no PDB onset in D range");
    r.check(5, "PDB duty D", on->D, 0.36, 0.005);
    r.check(5, "PDB period T s", on->T, 3.33e-6, 0.01e-6);
    r.check(5, "PDB source vs V", on->vs, 5.56, 0.01);
    BuckParams p = kEx1;
    p.vs = on->vs;
    const auto ev = sorted_real(poles(ex_map(p, Scheme::VCotc, kEx1d, on->T, 0.0)));
    r.check(5, "pole 1 at onset", ev[0], -1.0, 1e-6);
    r.check(5, "pole 2 at onset", ev[1], 0.0, 1e-6);
  });

  r.guard(6, [&] {
    const double D = kEx1d / kEx1T;
    auto on = [&](Formula f) { return max_on_time(kEx1, Scheme::VCotc, 0.0, D, kEx1T, f); };
    const double exact = on(Formula::EigenSearch);
    const double a = on(Formula::OnTimeVcotcNoRamp);
    const double b = on(Formula::OnTimeEsrRule);
    const double c = on(Formula::OnTimeVcotcPole);
    r.check(6, "max on-time (eigen-search) s", exact, 1.06e-6, 0.01e-6);
    r.check(6, "max on-time (on-time-vcotc-no-ramp) s", a, 0.84e-6, 0.005e-6);
    r.check(6, "max on-time (on-time-esr-rule) s", b, 0.80e-6, 0.005e-6);
    r.check(6, "max on-time (on-time-vcotc-pole) s", c, 1.077e-6, 0.005e-6);
    const bool ranked = std::abs(c - exact) < std::min(std::abs(a - exact), std::abs(b - exact));
    r.check(6, "on-time-vcotc-pole closest to exact", ranked ? 1.0 : 0.0, 1.0, 0.0);
  });

  r.guard(7, [&] {
    auto ri = [&](Formula f) { return min_sense_resistance(kEx1, kEx1d, kEx1T, f); };
    const double exact = ri(Formula::EigenSearch);
    const double a = ri(Formula::OnTimeCurrentRamp);
    const double b = ri(Formula::OnTimeCurrentRampSmallEsr);
    const double c = ri(Formula::RiCurrentRampPole);
    r.check(7, "min Ri (eigen-search) ohm", exact, 1.82e-3, 0.02e-3);
    r.check_rel(7, "min Ri (on-time-current-ramp) ohm", a, 8.4e-3, 0.02);
    r.check_rel(7, "min Ri (on-time-current-ramp-small-esr) ohm", b, 10e-3, 0.02);
    r.check_rel(7, "min Ri (ri-current-ramp-pole) ohm", c, 3.4e-3, 0.02);
    const bool ranked = std::abs(c - exact) < std::min(std::abs(a - exact), std::abs(b - exact));
    r.check(7, "ri-current-ramp-pole closest to exact", ranked ? 1.0 : 0.0, 1.0, 0.0);
  });

  r.guard(8, [&] {
    const auto ev = sorted_real(poles(ex_map(kEx8, Scheme::CCotc, kEx8d, kEx8T, 0.0)));
    r.check(8, "pole 2 (eigen-search)", ev[1], 0.9995, 1e-4);
    r.check_rel(8, "ct pole (first-order map) 1/s", equivalent_ct_pole(ev[1], kEx8T), 473.0, 0.02);
    r.check_rel(8, "ct pole (ct-pole-ccotc) 1/s",
                closed_form_ct_pole(kEx8, Scheme::CCotc, kEx8d, kEx8T, Formula::CtPoleCcotc), 419.0, 0.01);
  });

  r.guard(9, [&] {
    r.check_rel(9, "SNB ramp (snb-ccotc-quadratic) V/s",
                snb_boundary(kEx8, Scheme::CCotc, kEx8d, kEx8T, Formula::SnbCcotcQuadratic).critical_value,
                -67445.0, 0.01);
    const auto ev = sorted_real(poles(ex_map(kEx8, Scheme::CCotc, kEx8d, kEx8T, -1e5)));
    r.check(9, "pole 1 at ma=-1e5", ev[0], -1.675, 0.01);
    r.check(9, "pole 2 at ma=-1e5", ev[1], 1.0002, 5e-4);
  });

  r.guard(10, [&] {
    double worst = 0.0;
    double peak = 0.0;
    for (const auto& pt : sweep([](double D) { return D; }, 0.2, 0.95, 200)) {
      const double D = pt.x;
      BuckParams p = kEx1;
      p.vs = fam.vs(D);
      const double exact = fam.pdb_exact(D);
      const double hb = hb_pdb_splot(p, Scheme::VCotc, kEx1d, fam.T(D), 2000).value;
      worst = std::max(worst, std::abs(hb - exact));
      peak = std::max(peak, std::abs(exact));
    }
    r.check(10, "max |hb - exact| / max |S|", worst / peak, 0.0, 0.01);
  });

  return r.take();
}

void print_regression(std::ostream& out, const std::vector<RegressionRow>& rows) {
  out << std::left << std::setw(8) << "example" << std::setw(46) << "quantity" << std::right
      << std::setw(16) << "value" << std::setw(16) << "expected" << std::setw(14) << "tolerance"
      << "  result\n";
  for (const auto& row : rows) {
    out << std::left << std::setw(8) << row.example << std::setw(46) << row.quantity << std::right
        << std::setprecision(8) << std::setw(16) << row.value << std::setw(16) << row.expected
        << std::setw(14) << std::setprecision(3) << row.tolerance << "  " << (row.pass ? "PASS" : "FAIL")
        << '\n';
  }
  const auto failed = std::count_if(rows.begin(), rows.end(), [](const auto& r) { return !r.pass; });
  out << rows.size() - static_cast<std::size_t>(failed) << "/" << rows.size() << " checks passed\n";
}

}  // namespace cotc::cli
