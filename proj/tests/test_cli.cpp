#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "commands.hpp"
#include "config.hpp"
#include "regression.hpp"
#include "table.hpp"

using namespace cotc;
using namespace cotc::cli;

namespace {

std::filesystem::path config_file(int n) {
  return std::filesystem::path(COTC_CONFIG_DIR) / ("example" + std::to_string(n) + ".cfg");
}

ConverterConfig from_text(const std::string& text) {
  std::istringstream in(text);
  return build_config(read_entries(in, "test"));
}

const std::string kBase =
    "scheme = V_COTC\nvs = 5\nR = 0.5\nL = 2e-6\nC = 20e-6\nRc = 0.02\nd = 1.2e-6\nma = 0\n";

std::string error_of(const std::string& text) {
  try {
    from_text(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

std::size_t column_index(const ResultTable& t, const std::string& name) {
  const auto& cols = t.columns();
  for (std::size_t i = 0; i < cols.size(); ++i)
    if (cols[i].name == name) return i;
  FAIL("no column " << name);
  return 0;
}

}  // namespace

TEST_SUITE("config") {
  TEST_CASE("Example 1 config") {
    const auto c = load_config(config_file(1), {});
    CHECK(c.scheme == Scheme::VCotc);
    CHECK(c.params.vs == 5.0);
    CHECK(c.params.R == 0.5);
    CHECK(c.params.L == 2e-6);
    CHECK(c.params.C == 20e-6);
    CHECK(c.params.Rc == 0.02);
    CHECK(c.d == 1.2e-6);
    CHECK(c.period() == 3e-6);
    CHECK(c.duty() == doctest::Approx(0.4));
    CHECK(c.ma == 0.0);
  }

  TEST_CASE("--set overrides file entries") {
    const auto c = load_config(config_file(1), {"ma=9500", "Rc=0.03"});
    CHECK(c.ma == 9500.0);
    CHECK(c.params.Rc == 0.03);
  }

  TEST_CASE("every shipped example config loads") {
    for (int n = 1; n <= 10; ++n) CHECK_NOTHROW(load_config(config_file(n), {}));
  }

  TEST_CASE("period and duty are exclusive") {
    CHECK_THROWS_AS(from_text(kBase + "T = 3e-6\nD = 0.4\n"), ConfigError);
    CHECK_THROWS_AS(from_text(kBase), ConfigError);
  }

  TEST_CASE("C_COTC without Ri names the key") {
    const auto what = error_of("scheme = C_COTC\nvs = 13.2\nR = 10\nL = 3.1e-6\nC = 300e-6\nRc = 4.5e-3\n"
                               "d = 0.26e-6\nT = 1.04e-6\n");
    CHECK(what.find("Ri") != std::string::npos);
  }

  TEST_CASE("unknown key") {
    const auto what = error_of(kBase + "T = 3e-6\nfoo = 1\n");
    CHECK(what.find("foo") != std::string::npos);
  }

  TEST_CASE("unit violations") {
    CHECK_THROWS_AS(from_text(kBase + "T = -3e-6\n"), ConfigError);
    CHECK_THROWS_AS(from_text(kBase + "T = 3e-6\nL = 0\n"), ConfigError);
    CHECK_THROWS_AS(from_text(kBase + "T = 3e-6\nR = abc\n"), ConfigError);
    CHECK_THROWS_AS(from_text(kBase + "T = 3e-6\nscheme = BOOST\n"), ConfigError);
    CHECK_THROWS_AS(from_text(kBase + "T = 3e-6\nD_range = 0.2:1\n"), ConfigError);
  }

  TEST_CASE("ranges") {
    const auto r = parse_range("D_range", "0.2:1:5");
    const auto s = r.samples();
    REQUIRE(s.size() == 5);
    CHECK(s.front() == 0.2);
    CHECK(s.back() == 1.0);
    CHECK(s[2] == doctest::Approx(0.6));
  }
}

TEST_SUITE("result table") {
  ResultTable sample() {
    ResultTable t({{"cycle", ""}, {"Tn", "seconds"}, {"S", "volts_per_second"}});
    t.set_meta("formula_id", "simulation");
    t.add_row({0.0, 3.0000000000000001e-06, 0.1 + 0.2});
    t.add_row({1.0, 2.9963009812608892e-06, -12647.163686969157});
    t.add_row({2.0, 1e-300, 4.9406564584124654e-324});
    return t;
  }

  TEST_CASE("CSV round trip is exact") {
    const auto t = sample();
    std::ostringstream out;
    t.write_csv(out);
    std::istringstream in(out.str());
    CHECK(ResultTable::read_csv(in) == t);
    CHECK(out.str().find('\r') == std::string::npos);
    CHECK(out.str().find("cycle,Tn_seconds,S_volts_per_second\n") != std::string::npos);
  }

  TEST_CASE("JSON output") {
    auto t = sample();
    t.add_row({3.0, std::numeric_limits<double>::quiet_NaN(), 1.0});
    std::ostringstream out;
    t.write_json(out);
    const auto j = nlohmann::json::parse(out.str());
    CHECK(j["metadata"]["formula_id"] == "simulation");
    CHECK(j["rows"].size() == 4);
    CHECK(j["rows"][1]["S_volts_per_second"].get<double>() == -12647.163686969157);
    CHECK(j["rows"][3]["Tn_seconds"].is_null());
  }

  TEST_CASE("row width is checked") {
    auto t = sample();
    CHECK_THROWS_AS(t.add_row({1.0}), std::invalid_argument);
  }

  TEST_CASE("numbers keep 17 significant digits") {
    for (double v : {0.1, 1.0 / 3.0, -12647.163686969157, 6.02214076e23})
      CHECK(std::stod(format_number(v)) == v);
  }
}

TEST_SUITE("commands") {
  TEST_CASE("poles of Example 1") {
    const auto t = run_command("poles", load_config(config_file(1), {}), {});
    REQUIRE(t.rows().size() == 2);
    std::vector<double> re{t.rows()[0][0], t.rows()[1][0]};
    std::sort(re.begin(), re.end());
    CHECK(std::abs(re[1]) <= 1e-9);
    CHECK(re[0] == doctest::Approx(-1.05).epsilon(0.01));
  }

  TEST_CASE("S plot of Example 4") {
    const auto t = run_command("splot", load_config(config_file(4), {}), {});
    const auto iD = column_index(t, "D");
    const auto iS = column_index(t, "S");
    double smax = -1e300;
    double crossing = 0.0;
    for (std::size_t i = 0; i < t.rows().size(); ++i) {
      smax = std::max(smax, t.rows()[i][iS]);
      if (i > 0 && t.rows()[i - 1][iS] < 0.0 && t.rows()[i][iS] >= 0.0) crossing = t.rows()[i][iD];
    }
    CHECK(smax == doctest::Approx(4217.0).epsilon(0.01));
    CHECK(std::abs(crossing - 0.36) <= 0.01);
  }

  TEST_CASE("every command records its formula") {
    const std::map<std::string, int> example{
        {"steady-state", 1}, {"poles", 1},      {"splot", 4},     {"pole-locus", 8}, {"pdb-boundary", 1},
        {"snb-boundary", 8}, {"max-on-time", 1}, {"min-ri", 7},   {"hb-splot", 10},  {"l1", 1},
        {"l2", 1},           {"hplot", 1},       {"simulate", 2}, {"onset", 3}};
    for (const auto& name : command_names()) {
      if (name == "examples") continue;
      CAPTURE(name);
      const auto it = example.find(name);
      REQUIRE(it != example.end());
      auto overrides = std::vector<std::string>{"Nh=200", "ncycles=600"};
      if (name == "onset") overrides.push_back("ma_range=0:2000:4");
      if (name == "hb-splot") overrides.push_back("D_range=0.3:0.5:3");
      const auto t = run_command(name, load_config(config_file(it->second), overrides), {});
      CHECK_FALSE(t.meta("formula_id").empty());
      CHECK(t.meta("command") == name);
      CHECK_FALSE(t.rows().empty());
    }
  }

  TEST_CASE("formula selection") {
    const auto cfg = load_config(config_file(1), {});
    CommandOptions opt;
    opt.formula = "pdb-buck-quadratic";
    const auto t = run_command("pdb-boundary", cfg, opt);
    CHECK(t.meta("formula_id") == "pdb-buck-quadratic");
    REQUIRE(t.columns().size() == 2);
    CHECK(t.columns()[1].name == "pdb_buck_quadratic");
    opt.formula = "snb-ccotc-quadratic";
    CHECK_THROWS_AS(run_command("pdb-boundary", cfg, opt), ConfigError);
  }

  TEST_CASE("sweeps") {
    const auto s = parse_sweep("D=0.3:0.5:3");
    CHECK(s.key == "D");
    CHECK(s.range.n == 3);
    CHECK_THROWS_AS(parse_sweep("D0.3:0.5:3"), ConfigError);
    CommandOptions opt;
    opt.sweep = s;
    const auto t = run_command("pdb-boundary", load_config(config_file(1), {}), opt);
    CHECK(t.rows().size() == 3);
  }

  TEST_CASE("unknown command") {
    CHECK_THROWS_AS(run_command("nonsense", load_config(config_file(1), {}), {}), ConfigError);
  }
}

TEST_SUITE("examples") {
  TEST_CASE("every worked example is reproduced") {
    const auto rows = run_examples();
    for (int n = 1; n <= 10; ++n)
      CHECK(std::any_of(rows.begin(), rows.end(), [n](const RegressionRow& r) { return r.example == n; }));
    for (const auto& r : rows) {
      CAPTURE(r.example);
      CAPTURE(r.quantity);
      CAPTURE(r.value);
      CAPTURE(r.expected);
      CHECK(r.pass);
    }
  }
}
