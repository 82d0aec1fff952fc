#include "qcorr/sweep.hpp"

#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>

using namespace qcorr;

namespace {
constexpr double kPi = std::numbers::pi;

SweepConfig small_config() {
  SweepConfig config;
  config.family = StateFamily::werner(3, 0.5);
  config.channels = {ChannelKind::PhaseFlip, ChannelKind::AmplitudeDamping};
  config.p_grid = {0.0, 0.5, 1.0};
  config.measures = {Measure::GQD_HS, Measure::GQD_CLOSED};
  return config;
}
}  // namespace

TEST_CASE("linear_grid: endpoints and counts") {
  const std::vector<double> g = linear_grid(0.0, 1.0, 5);
  REQUIRE(g.size() == 5);
  CHECK(g.front() == 0.0);
  CHECK(g.back() == 1.0);
  CHECK(g[2] == doctest::Approx(0.5));
  CHECK(linear_grid(0.3, 0.9, 1) == std::vector<double>{0.3});
  CHECK_THROWS_AS(linear_grid(0.0, 1.0, 0), std::invalid_argument);
}

TEST_CASE("run_sweep: row count and deterministic ordering") {
  const SweepResult result = run_sweep(small_config());
  // 2 channels x 3 grid points x 2 measures
  REQUIRE(result.rows.size() == 12);
  CHECK(result.warnings.empty());

  // ordering: channel, then grid point, then measure
  CHECK(result.rows[0].channel == "phase-flip");
  CHECK(result.rows[0].p == 0.0);
  CHECK(result.rows[0].measure == "GQD_HS");
  CHECK(result.rows[1].measure == "GQD_CLOSED");
  CHECK(result.rows[2].p == 0.5);
  CHECK(result.rows[6].channel == "amplitude-damping");

  // closed form and numerical oracle agree on these rows
  for (std::size_t i = 0; i < result.rows.size(); i += 2) {
    CHECK(result.rows[i].value ==
          doctest::Approx(result.rows[i + 1].value).epsilon(1e-6));
  }
}

TEST_CASE("run_sweep: thread count does not change results") {
  SweepConfig config = small_config();
  config.threads = 1;
  const SweepResult serial = run_sweep(config);
  config.threads = 4;
  const SweepResult parallel = run_sweep(config);
  REQUIRE(serial.rows.size() == parallel.rows.size());
  CHECK(to_csv(serial.rows) == to_csv(parallel.rows));
}

TEST_CASE("run_sweep: validation errors") {
  SweepConfig config = small_config();
  config.p_grid.clear();
  CHECK_THROWS_AS(run_sweep(config), std::invalid_argument);

  config = small_config();
  config.channels.clear();
  CHECK_THROWS_AS(run_sweep(config), std::invalid_argument);

  config = small_config();
  config.measures.clear();
  CHECK_THROWS_AS(run_sweep(config), std::invalid_argument);

  config = small_config();
  config.family = StateFamily::rindler(0.0);
  CHECK_THROWS_AS(run_sweep(config), std::invalid_argument);  // r grid missing
}

TEST_CASE("run_sweep: missing closed-form rows are omitted with a warning") {
  SweepConfig config;
  config.family = StateFamily::rindler(0.0);
  config.channels = {ChannelKind::BitFlip};
  config.p_grid = {0.0, 1.0};
  config.r_grid = {0.0, kPi / 8.0};
  config.measures = {Measure::GQD_CLOSED, Measure::GQD_HS};
  const SweepResult result = run_sweep(config);
  CHECK(result.rows.size() == 4);  // GQD_HS rows only
  CHECK(result.warnings.size() == 4);
  CHECK(result.warnings.front().find("bit-flip") != std::string::npos);
  for (const SweepRow& row : result.rows) {
    CHECK(row.measure == "GQD_HS");
    CHECK(std::isnan(row.mu));
    CHECK(!std::isnan(row.r));
  }
}

TEST_CASE("to_csv: header, field layout and digits") {
  SweepRow row;
  row.family = "werner-ghz";
  row.channel = "phase-flip";
  row.p = 0.5;
  row.mu = 0.5;
  row.r = std::numeric_limits<double>::quiet_NaN();
  row.measure = "GQD_HS";
  row.value = 0.123456789012345;
  row.converged = true;
  row.evaluations = 321;
  const std::string csv = to_csv({row});
  CHECK(csv ==
        "family,channel,p,mu,r,measure,value,converged,evaluations\n"
        "werner-ghz,phase-flip,0.5,0.5,,GQD_HS,0.123456789012,1,321\n");
}

TEST_CASE("emit_csv: deterministic bytes and the p = 0.5 phase-flip zero") {
  SweepConfig config;
  config.family = StateFamily::werner(3, 0.5);
  config.channels = {ChannelKind::PhaseFlip};
  config.p_grid = {0.5};
  config.measures = {Measure::GQD_HS};

  const SweepResult a = run_sweep(config);
  const SweepResult b = run_sweep(config);
  REQUIRE(a.rows.size() == 1);
  CHECK(a.rows[0].value == 0.0);
  CHECK(to_csv(a.rows) == to_csv(b.rows));

  const std::string path = "emit_csv_test.csv";
  emit_csv(a.rows, path);
  std::ifstream file(path, std::ios::binary);
  std::string contents((std::istreambuf_iterator<char>(file)),
                       std::istreambuf_iterator<char>());
  CHECK(contents == to_csv(a.rows));
  std::remove(path.c_str());

  CHECK_THROWS_AS(emit_csv(a.rows, "no/such/dir/file.csv"), std::runtime_error);
}

TEST_CASE("validate_tables: statuses on a reduced grid") {
  // Full-resolution validation lives in the acceptance suite; three p points
  // keep this test quick while covering every row kind.
  OptimizerConfig opt;
  const ValidationReport report = validate_tables(opt, 0, 3);

  // 2 werner families x 6 channels x 3 mu x 3 p  +  rindler x 5 channels x 5 r x 3 p
  REQUIRE(report.checks.size() == 2 * 6 * 3 * 3 + 5 * 5 * 3);
  CHECK(report.n_pass + report.n_fail + report.n_discrepant ==
        static_cast<int>(report.checks.size()));
  CHECK(report.n_discrepant == 3 * 3 + 5 * 3);  // all depolarizing rows of n=3 and rindler

  for (const ClosedFormCheck& check : report.checks) {
    if (check.channel == "depolarizing" &&
        (check.family == "rindler" || check.n_qubits == 3)) {
      CHECK(check.status == "DISCREPANT-BY-DESIGN");
    } else if ((check.channel == "bit-flip" || check.channel == "bit-phase-flip") &&
               check.n_qubits == 6 && check.p == 0.5) {
      // The printed six-qubit flip expressions track the sigma_z pinch only.
      // At p = 0.5 the evolved state is diagonal in the sigma_x (sigma_y)
      // product basis, so the true minimum is 0 while the expression gives
      // mu^2/64; the report shows this honestly as FAIL.
      CHECK(check.status == "FAIL");
      CHECK(check.numerical == doctest::Approx(0.0).epsilon(1e-9));
      CHECK(check.closed_form == doctest::Approx(check.mu * check.mu / 64.0));
    } else {
      CHECK(check.status == "PASS");
    }
  }

  const std::string text = report.text();
  CHECK(text.find("DISCREPANT-BY-DESIGN") != std::string::npos);
  CHECK(text.find("summary:") != std::string::npos);
  const std::string csv = report.csv();
  CHECK(csv.find("family,n,channel,p,mu,r,closed_form,numerical,abs_diff,status") == 0);
}

TEST_CASE("figure_preset: known names and shapes") {
  for (const std::string& name : figure_preset_names()) {
    const SweepConfig config = figure_preset(name);
    CHECK(!config.p_grid.empty());
    CHECK(!config.channels.empty());
    CHECK(!config.measures.empty());
  }
  CHECK(figure_preset("fig1a").family.n_qubits == 3);
  CHECK(figure_preset("fig1b").family.n_qubits == 6);
  CHECK(figure_preset("fig2a").measures == std::vector<Measure>{Measure::GQD_HS});
  CHECK(figure_preset("fig4").r_grid.size() == 33);
  CHECK(figure_preset("fig4").p_grid == std::vector<double>{0.5});
  CHECK_THROWS_AS(figure_preset("fig9"), std::invalid_argument);
}
