#pragma once

#include "qcorr/channels.hpp"
#include "qcorr/discord.hpp"
#include "qcorr/optimize.hpp"
#include "qcorr/states.hpp"

#include <string>
#include <vector>

namespace qcorr {

enum class Measure { QD, GQD_HS, GQD_ENTROPIC, GQD_CLOSED };

std::string to_string(Measure measure);
Measure measure_from_string(const std::string& name);

/// Inclusive linear grid; count = 1 yields {start}.
std::vector<double> linear_grid(double start, double stop, int count);

/// One full sweep: a state family evolved through each channel on a
/// parameter grid, with the selected correlation measures evaluated at
/// every point.
struct SweepConfig {
  StateFamily family;
  std::vector<ChannelKind> channels;
  std::vector<double> p_grid;
  std::vector<double> r_grid;  // Rindler family only; cross product with p_grid
  std::vector<Measure> measures;
  OptimizerConfig optimizer;
  int threads = 0;  // 0 = hardware concurrency

  void validate() const;
};

struct SweepRow {
  std::string family;
  std::string channel;
  double p = 0.0;
  double mu = 0.0;  // NaN when not applicable
  double r = 0.0;   // NaN when not applicable
  std::string measure;
  double value = 0.0;
  bool converged = true;
  long evaluations = 0;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  std::vector<std::string> warnings;  // e.g. omitted closed-form rows
};

/// Runs the sweep. Rows are ordered by (channel, grid point, measure) and the
/// output is deterministic regardless of thread count.
SweepResult run_sweep(const SweepConfig& config);

/// CSV serialization: header line plus one line per row, numbers with
/// 12 significant digits, empty fields for inapplicable parameters.
std::string to_csv(const std::vector<SweepRow>& rows);
void emit_csv(const std::vector<SweepRow>& rows, const std::string& path);

/// One comparison of a closed-form geometric-discord expression against the
/// numerical minimization.
struct ClosedFormCheck {
  std::string family;
  int n_qubits = 0;
  std::string channel;
  double p = 0.0;
  double mu = 0.0;  // NaN for the Rindler family
  double r = 0.0;   // NaN for the Werner families
  double closed_form = 0.0;
  double numerical = 0.0;
  double abs_diff = 0.0;
  std::string status;  // PASS | FAIL | DISCREPANT-BY-DESIGN
};

struct ValidationReport {
  std::vector<ClosedFormCheck> checks;
  int n_pass = 0;
  int n_fail = 0;
  int n_discrepant = 0;

  std::string text() const;
  std::string csv() const;
};

inline constexpr double kClosedFormTol = 1e-6;

/// Checks every closed-form row (3- and 6-qubit Werner-GHZ at
/// mu in {0.25, 0.5, 1}; Rindler at r in {0, pi/16, pi/8, 3pi/16, pi/4})
/// on a p grid with `p_points` points. Rows whose printed expressions are
/// known not to match the numerical oracle are reported as
/// DISCREPANT-BY-DESIGN with both values, and never counted as failures.
ValidationReport validate_tables(const OptimizerConfig& optimizer = {},
                                 int threads = 0, int p_points = 11);

/// Named sweep presets reproducing the reference figures at desk scale.
const std::vector<std::string>& figure_preset_names();
SweepConfig figure_preset(const std::string& name);

}  // namespace qcorr
