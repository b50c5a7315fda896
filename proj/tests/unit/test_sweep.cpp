#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include <json.hpp>

#include "ptbilayer/config.hpp"
#include "ptbilayer/errors.hpp"
#include "ptbilayer/report.hpp"
#include "ptbilayer/sweep.hpp"
#include "ptbilayer/table_io.hpp"

using namespace ptbilayer;

namespace {

SweepSpec small_spec(int count = 40) {
  SweepSpec s;
  s.context = preset_context(PresetId::kSet1);
  s.variable = SweepVariable::kAlphaL;
  s.start = 1.0;
  s.stop = 1000.0;
  s.count = count;
  s.spacing = Spacing::kLog;
  s.observables = {Observable::kScattering, Observable::kEigenvalues, Observable::kNoise, Observable::kVariance,
                   Observable::kMandel, Observable::kEta};
  s.reproducible = true;
  return s;
}

std::string csv_of(const ResultTable& t) {
  std::ostringstream os;
  write_csv(t, os);
  return os.str();
}

}  // namespace

TEST_CASE("grid and validation") {
  SweepSpec s = small_spec(5);
  const auto g = s.grid();
  REQUIRE(g.size() == 5);
  CHECK(g.front() == doctest::Approx(1.0));
  CHECK(g[2] == doctest::Approx(std::sqrt(1000.0)));
  CHECK(g.back() == doctest::Approx(1000.0));
  CHECK(default_spacing(1, 1000) == Spacing::kLog);
  CHECK(default_spacing(0.5, 1.5) == Spacing::kLinear);
  CHECK(default_spacing(0.0, 1000) == Spacing::kLinear);

  s.count = 1;
  CHECK_THROWS_AS(s.validate(), ConfigError);
  s = small_spec();
  s.start = 10;
  s.stop = 5;
  CHECK_THROWS_AS(s.validate(), ConfigError);
  s = small_spec();
  s.start = 0.0;
  CHECK_THROWS_AS(s.validate(), ConfigError);
  s = small_spec();
  s.observables.clear();
  CHECK_THROWS_AS(s.validate(), ConfigError);
}

TEST_CASE("enum names round trip") {
  for (auto v : {SweepVariable::kAlphaL, SweepVariable::kOmegaTrad, SweepVariable::kOmegaRatio,
                 SweepVariable::kTemperature}) {
    CHECK(parse_variable(to_string(v)) == v);
  }
  for (auto k : {ThresholdKind::kAtr, ThresholdKind::kAccidentalDegeneracy, ThresholdKind::kExceptionalPoint,
                 ThresholdKind::kEtaUnity, ThresholdKind::kSqueezeCrossing, ThresholdKind::kMandelCrossing}) {
    CHECK(parse_threshold_kind(to_string(k)) == k);
  }
  CHECK(parse_theory("both") == Theory::kBoth);
  CHECK_THROWS_AS(parse_observable("colour"), ConfigError);
  CHECK_THROWS_AS(parse_variable("beta"), ConfigError);
}

TEST_CASE("rows do not depend on the thread count") {
  SweepSpec s = small_spec(37);
  s.theory = Theory::kBoth;
  s.threads = 1;
  const std::string one = csv_of(run_sweep(s));
  s.threads = 4;
  CHECK(csv_of(run_sweep(s)) == one);
  s.threads = 0;
  CHECK(csv_of(run_sweep(s)) == one);
}

TEST_CASE("sweep columns and content") {
  const ResultTable t = run_sweep(small_spec(30));
  CHECK(t.columns.back() == "status");
  CHECK(t.rows.size() == 30);
  const auto alpha = t.numeric_column("alpha_l");
  const auto alpha_g = t.numeric_column("alpha_g");
  const auto T = t.numeric_column("T");
  const auto res = t.numeric_column("conservation_residual");
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    CHECK(alpha_g[i] == doctest::Approx(-alpha[i]));
    if (t.status(i) == "ok") {
      CHECK(T[i] >= 0.0);
      CHECK(res[i] < 1e-8);
    }
  }
  CHECK_THROWS_AS(t.column_index("nope"), InvalidArgument);
  bool has_class = false;
  for (const auto& c : t.columns) has_class |= c == "phase_class";
  CHECK(has_class);
}

TEST_CASE("effective columns and deviations") {
  SweepSpec s = small_spec(12);
  s.stop = 100.0;
  const ResultTable t = compare_theories(s);
  const auto dev = t.numeric_column("dev_t");
  const auto devv = t.numeric_column("dev_variance");
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    REQUIRE(t.status(i) == "ok");
    CHECK(dev[i] < 0.2);
    CHECK(devv[i] < 0.05);
  }
}

TEST_CASE("failed points are recorded, not thrown") {
  SweepSpec s = small_spec(20);
  s.theory = Theory::kEffective;
  s.variable = SweepVariable::kOmegaRatio;
  s.start = 0.5;
  s.stop = 20.0;
  s.spacing = Spacing::kLinear;
  const ResultTable t = run_sweep(s);
  int failed = 0;
  for (std::size_t i = 0; i < t.rows.size(); ++i) failed += t.status(i) != "ok";
  CHECK(failed > 0);
  const auto n = t.numeric_column("n_eff_re");
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    if (t.status(i) == "branch_ambiguity") CHECK(std::isnan(n[i]));
  }
}

TEST_CASE("csv and json formatting") {
  ResultTable t;
  t.columns = {"x", "status"};
  t.rows = {{0.1, std::string("ok")}, {std::numeric_limits<double>::quiet_NaN(), std::string("error")}};
  t.metadata = {{"source", "set1"}};
  CHECK(csv_of(t) == "x,status\n0.10000000000000001,ok\nnan,error\n");
  std::ostringstream os;
  write_json(t, os);
  const auto j = nlohmann::json::parse(os.str());
  CHECK(j["columns"][0] == "x");
  CHECK(j["rows"][1][0].is_null());
  CHECK(j["metadata"]["source"] == "set1");
  CHECK(parse_table_format("json") == TableFormat::kJson);
  CHECK_THROWS(parse_table_format("xml"));
}

TEST_CASE("reproducible metadata carries no timestamp") {
  SweepSpec s = small_spec(3);
  auto has_timestamp = [](const ResultTable& t) {
    for (const auto& [k, v] : t.metadata) {
      if (k == "timestamp") return true;
    }
    return false;
  };
  CHECK_FALSE(has_timestamp(run_sweep(s)));
  s.reproducible = false;
  CHECK(has_timestamp(run_sweep(s)));
}

TEST_CASE("config parsing") {
  const SweepSpec s = parse_config(R"({
    "preset": "set2",
    "sweep": {"variable": "omega_ratio", "start": 0.9, "stop": 1.1, "count": 11},
    "fixed": {"alpha_l": 30, "temperature_k": 300},
    "observables": ["scattering", "variance"],
    "theory": "both",
    "input_state": {"xi": 0.3},
    "threads": 2
  })");
  CHECK(s.context.source == "set2");
  CHECK(s.variable == SweepVariable::kOmegaRatio);
  CHECK(s.count == 11);
  CHECK(s.spacing == Spacing::kLinear);
  CHECK(s.context.fixed.alpha_l == 30.0);
  CHECK(s.context.fixed.temperature_k == 300.0);
  CHECK(s.context.options.input.xi == 0.3);
  CHECK(s.theory == Theory::kBoth);
  CHECK(s.wants(Observable::kVariance));
  CHECK_FALSE(s.wants(Observable::kMandel));

  const SweepSpec custom = parse_config(R"({
    "materials": {"gain": {"eps_b": 2, "alpha": -5, "omega0_trad": 1000, "gamma_trad": 100},
                  "loss": {"eps_b": 2, "alpha": 5, "omega0_trad": 1000, "gamma_trad": 100}},
    "gain_law": "mirror", "thickness_nm": 10,
    "sweep": {"variable": "alpha_l", "start": 1, "stop": 10, "count": 3}
  })");
  CHECK(custom.context.source == "custom");
  CHECK(run_sweep(custom).rows.size() == 3);

  CHECK_THROWS_AS(parse_config("{"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"preset": "set9"})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"preset": "set1", "bogus": 1})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"preset": "set1", "sweep": {"count": "many"}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"preset": "set1", "thickness_nm": -1})"), ConfigError);
  CHECK_THROWS_AS(load_config("/nonexistent/run.json"), ConfigError);
}

TEST_CASE("threshold location") {
  const Context c = preset_context(PresetId::kSet1);
  ThresholdQuery q;
  q.kind = ThresholdKind::kAtr;
  q.lo = 10;
  q.hi = 40;
  const double a = locate_threshold(q, c);
  CHECK(a == doctest::Approx(24.0).epsilon(0.05));
  CHECK(std::abs(threshold_scalar(q, c, a)) < 1e-6);

  const auto all = locate_all(q, c, 300);
  CHECK(all.size() >= 1);

  q.lo = 30;
  q.hi = 40;
  CHECK_THROWS_AS(locate_threshold(q, c), NoSignChange);
  q.lo = 5;
  q.hi = 5;
  CHECK_THROWS_AS(locate_threshold(q, c), InvalidArgument);

  ThresholdQuery m;
  m.kind = ThresholdKind::kMandelCrossing;
  m.lo = 1;
  m.hi = 10;
  CHECK(locate_threshold(m, c) == doctest::Approx(4.8936).epsilon(1e-3));
}

TEST_CASE("reference gaps are finite") {
  const auto gaps = reference_gaps();
  CHECK(gaps.size() >= 5);
  for (const auto& g : gaps) {
    CHECK(std::isfinite(g.computed));
    CHECK(g.relative_gap == doctest::Approx((g.computed - g.quoted) / std::abs(g.quoted)));
  }
  std::ostringstream os;
  write_reference_gaps_json(gaps, os);
  CHECK(nlohmann::json::parse(os.str()).is_array());
}
