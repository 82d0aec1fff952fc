#include "qcorr/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <mutex>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace qcorr {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string format_field(double v) {
  return std::isnan(v) ? std::string{} : format_number(v);
}

// Index-ordered parallel map; results land by task index, so output is
// identical for any thread count.
void parallel_for(std::size_t count, int threads,
                  const std::function<void(std::size_t)>& body) {
  if (count == 0) return;
  unsigned n_threads = threads > 0 ? static_cast<unsigned>(threads)
                                   : std::thread::hardware_concurrency();
  if (n_threads < 1) n_threads = 1;
  n_threads = std::min<unsigned>(n_threads, count);
  if (n_threads == 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr error;
  std::mutex error_mutex;
  for (unsigned t = 0; t < n_threads; ++t) {
    pool.emplace_back([&] {
      while (true) {
        const std::size_t i = next.fetch_add(1);
        if (i >= count) break;
        try {
          body(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (std::thread& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace

std::string to_string(Measure measure) {
  switch (measure) {
    case Measure::QD: return "QD";
    case Measure::GQD_HS: return "GQD_HS";
    case Measure::GQD_ENTROPIC: return "GQD_ENTROPIC";
    case Measure::GQD_CLOSED: return "GQD_CLOSED";
  }
  throw std::logic_error("to_string: unknown measure");
}

Measure measure_from_string(const std::string& name) {
  if (name == "QD") return Measure::QD;
  if (name == "GQD_HS") return Measure::GQD_HS;
  if (name == "GQD_ENTROPIC") return Measure::GQD_ENTROPIC;
  if (name == "GQD_CLOSED") return Measure::GQD_CLOSED;
  throw std::invalid_argument("unknown measure '" + name +
                              "' (expected QD, GQD_HS, GQD_ENTROPIC or GQD_CLOSED)");
}

std::vector<double> linear_grid(double start, double stop, int count) {
  if (count < 1) {
    throw std::invalid_argument("linear_grid: count must be positive");
  }
  std::vector<double> g(count);
  if (count == 1) {
    g[0] = start;
    return g;
  }
  for (int i = 0; i < count; ++i) {
    g[i] = start + (stop - start) * i / (count - 1);
  }
  g.back() = stop;
  return g;
}

void SweepConfig::validate() const {
  if (channels.empty()) throw std::invalid_argument("sweep: no channels selected");
  if (p_grid.empty()) throw std::invalid_argument("sweep: empty p grid");
  if (measures.empty()) throw std::invalid_argument("sweep: no measures selected");
  for (double p : p_grid) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw std::invalid_argument("sweep: p = " + std::to_string(p) + " outside [0, 1]");
    }
  }
  if (family.kind == StateKind::RindlerGHZ) {
    if (r_grid.empty()) throw std::invalid_argument("sweep: empty r grid for rindler family");
    for (double r : r_grid) {
      if (!(r >= 0.0 && r <= kPi / 4.0 + 1e-15)) {
        throw std::invalid_argument("sweep: r = " + std::to_string(r) +
                                    " outside [0, pi/4]");
      }
    }
  } else {
    if (!(family.mu >= 0.0 && family.mu <= 1.0)) {
      throw std::invalid_argument("sweep: mu outside [0, 1]");
    }
  }
  optimizer.validate();
}

SweepResult run_sweep(const SweepConfig& config) {
  config.validate();
  const bool rindler = config.family.kind == StateKind::RindlerGHZ;
  const std::vector<double> r_values = rindler ? config.r_grid : std::vector<double>{kNaN};

  struct Task {
    ChannelKind kind;
    double p;
    double r;
  };
  std::vector<Task> tasks;
  for (ChannelKind kind : config.channels) {
    for (double p : config.p_grid) {
      for (double r : r_values) {
        tasks.push_back({kind, p, r});
      }
    }
  }

  std::vector<std::vector<SweepRow>> row_chunks(tasks.size());
  std::vector<std::vector<std::string>> warning_chunks(tasks.size());

  parallel_for(tasks.size(), config.threads, [&](std::size_t i) {
    const Task& task = tasks[i];
    const StateFamily family =
        rindler ? StateFamily::rindler(task.r)
                : StateFamily::werner(config.family.n_qubits, config.family.mu);
    const KrausChannel channel = kraus_set(task.kind, task.p);
    const DensityMatrix evolved = apply_sequential(channel, family.state());

    for (Measure measure : config.measures) {
      SweepRow row;
      row.family = family.label();
      row.channel = to_string(task.kind);
      row.p = task.p;
      row.mu = rindler ? kNaN : config.family.mu;
      row.r = task.r;
      row.measure = to_string(measure);
      switch (measure) {
        case Measure::QD: {
          const DiscordResult d = global_qd(evolved, config.optimizer);
          row.value = d.value;
          row.converged = d.converged;
          row.evaluations = d.evaluations;
          break;
        }
        case Measure::GQD_HS: {
          const DiscordResult d = gqd_hs(evolved, config.optimizer);
          row.value = d.value;
          row.converged = d.converged;
          row.evaluations = d.evaluations;
          break;
        }
        case Measure::GQD_ENTROPIC: {
          const DiscordResult d = gqd_entropic(evolved, config.optimizer);
          row.value = d.value;
          row.converged = d.converged;
          row.evaluations = d.evaluations;
          break;
        }
        case Measure::GQD_CLOSED: {
          if (!has_closed_form(family, task.kind)) {
            warning_chunks[i].push_back(
                "GQD_CLOSED omitted: no closed-form row for channel " +
                to_string(task.kind) + " on family " + family.label() +
                " (n = " + std::to_string(family.n_qubits) + ")");
            continue;
          }
          row.value = gqd_closed_form(family, task.kind, task.p);
          row.converged = true;
          row.evaluations = 0;
          break;
        }
      }
      row_chunks[i].push_back(std::move(row));
    }
  });

  SweepResult result;
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    result.rows.insert(result.rows.end(), row_chunks[i].begin(), row_chunks[i].end());
    result.warnings.insert(result.warnings.end(), warning_chunks[i].begin(),
                           warning_chunks[i].end());
  }
  return result;
}

std::string to_csv(const std::vector<SweepRow>& rows) {
  std::string out = "family,channel,p,mu,r,measure,value,converged,evaluations\n";
  for (const SweepRow& row : rows) {
    out += row.family;
    out += ',';
    out += row.channel;
    out += ',';
    out += format_field(row.p);
    out += ',';
    out += format_field(row.mu);
    out += ',';
    out += format_field(row.r);
    out += ',';
    out += row.measure;
    out += ',';
    out += format_number(row.value);
    out += ',';
    out += row.converged ? '1' : '0';
    out += ',';
    out += std::to_string(row.evaluations);
    out += '\n';
  }
  return out;
}

void emit_csv(const std::vector<SweepRow>& rows, const std::string& path) {
  std::ofstream file(path, std::ios::binary);
  if (!file) {
    throw std::runtime_error("emit_csv: cannot open '" + path + "' for writing");
  }
  file << to_csv(rows);
  if (!file.good()) {
    throw std::runtime_error("emit_csv: write to '" + path + "' failed");
  }
}

ValidationReport validate_tables(const OptimizerConfig& optimizer, int threads,
                                 int p_points) {
  struct Case {
    StateFamily family;
    ChannelKind kind;
    double p;
  };
  std::vector<Case> cases;

  const std::vector<double> p_grid = linear_grid(0.0, 1.0, p_points);
  const std::vector<double> mu_values = {0.25, 0.5, 1.0};
  const std::vector<double> r_values = {0.0, kPi / 16.0, kPi / 8.0, 3.0 * kPi / 16.0,
                                        kPi / 4.0};

  for (int n : {3, 6}) {
    for (ChannelKind kind : all_channel_kinds()) {
      for (double mu : mu_values) {
        for (double p : p_grid) {
          cases.push_back({StateFamily::werner(n, mu), kind, p});
        }
      }
    }
  }
  for (ChannelKind kind : all_channel_kinds()) {
    if (kind == ChannelKind::BitFlip) continue;  // no closed-form row
    for (double r : r_values) {
      for (double p : p_grid) {
        cases.push_back({StateFamily::rindler(r), kind, p});
      }
    }
  }

  ValidationReport report;
  report.checks.resize(cases.size());
  parallel_for(cases.size(), threads, [&](std::size_t i) {
    const Case& c = cases[i];
    const DensityMatrix evolved =
        apply_sequential(kraus_set(c.kind, c.p), c.family.state());
    const double numerical = gqd_hs(evolved, optimizer).value;
    const double closed = gqd_closed_form(c.family, c.kind, c.p);

    ClosedFormCheck& check = report.checks[i];
    check.family = c.family.label();
    check.n_qubits = c.family.n_qubits;
    check.channel = to_string(c.kind);
    check.p = c.p;
    check.mu = c.family.kind == StateKind::WernerGHZ ? c.family.mu : kNaN;
    check.r = c.family.kind == StateKind::RindlerGHZ ? c.family.r : kNaN;
    check.closed_form = closed;
    check.numerical = numerical;
    check.abs_diff = std::abs(closed - numerical);
    if (closed_form_is_discrepant(c.family, c.kind)) {
      check.status = "DISCREPANT-BY-DESIGN";
    } else {
      check.status = check.abs_diff <= kClosedFormTol ? "PASS" : "FAIL";
    }
  });

  for (const ClosedFormCheck& check : report.checks) {
    if (check.status == "PASS") ++report.n_pass;
    else if (check.status == "FAIL") ++report.n_fail;
    else ++report.n_discrepant;
  }
  return report;
}

std::string ValidationReport::text() const {
  std::ostringstream out;
  out << "Closed-form geometric discord validation\n";
  out << "----------------------------------------\n";
  char line[256];
  std::snprintf(line, sizeof line, "%-12s %-2s %-18s %-6s %-6s %-8s %-16s %-16s %-12s %s\n",
                "family", "n", "channel", "p", "mu", "r", "closed-form", "numerical",
                "|diff|", "status");
  out << line;
  for (const ClosedFormCheck& c : checks) {
    std::snprintf(line, sizeof line,
                  "%-12s %-2d %-18s %-6.3g %-6s %-8s %-16.10g %-16.10g %-12.3g %s\n",
                  c.family.c_str(), c.n_qubits, c.channel.c_str(), c.p,
                  std::isnan(c.mu) ? "-" : format_number(c.mu).c_str(),
                  std::isnan(c.r) ? "-" : format_number(c.r).c_str(),
                  c.closed_form, c.numerical, c.abs_diff, c.status.c_str());
    out << line;
  }
  out << "\nsummary: " << n_pass << " pass, " << n_fail << " fail, "
      << n_discrepant << " discrepant-by-design\n";
  return out.str();
}

std::string ValidationReport::csv() const {
  std::string out = "family,n,channel,p,mu,r,closed_form,numerical,abs_diff,status\n";
  for (const ClosedFormCheck& c : checks) {
    out += c.family + ',' + std::to_string(c.n_qubits) + ',' + c.channel + ',';
    out += format_number(c.p) + ',' + format_field(c.mu) + ',' + format_field(c.r) + ',';
    out += format_number(c.closed_form) + ',' + format_number(c.numerical) + ',';
    out += format_number(c.abs_diff) + ',' + c.status + '\n';
  }
  return out;
}

const std::vector<std::string>& figure_preset_names() {
  static const std::vector<std::string> names = {"fig1a", "fig1b", "fig2a", "fig2b",
                                                 "fig3a", "fig3b", "fig4"};
  return names;
}

SweepConfig figure_preset(const std::string& name) {
  SweepConfig config;
  config.channels = all_channel_kinds();

  if (name == "fig1a" || name == "fig1b" || name == "fig2a" || name == "fig2b") {
    const bool six = name == "fig1b" || name == "fig2b";
    config.family = StateFamily::werner(six ? 6 : 3, 0.5);
    // 6-qubit presets run a coarser grid to stay desk-scale.
    config.p_grid = linear_grid(0.0, 1.0, six ? 21 : 101);
    config.measures = {name[3] == '1' ? Measure::QD : Measure::GQD_HS};
    return config;
  }
  if (name == "fig3a" || name == "fig3b") {
    // Geometric discord against p for several accelerations, one channel
    // per panel (amplitude damping / bit-phase flip).
    config.family = StateFamily::rindler(0.0);
    config.channels = {name == "fig3a" ? ChannelKind::AmplitudeDamping
                                       : ChannelKind::BitPhaseFlip};
    config.p_grid = linear_grid(0.0, 1.0, 51);
    config.r_grid = {0.0, kPi / 12.0, kPi / 6.0, kPi / 4.0};
    config.measures = {Measure::GQD_HS};
    return config;
  }
  if (name == "fig4") {
    // Discords against acceleration at fixed p = 0.5 for the channels with
    // Rindler closed forms.
    config.family = StateFamily::rindler(0.0);
    config.channels = {ChannelKind::AmplitudeDamping, ChannelKind::PhaseDamping,
                       ChannelKind::Depolarizing, ChannelKind::PhaseFlip,
                       ChannelKind::BitPhaseFlip};
    config.p_grid = {0.5};
    config.r_grid = linear_grid(0.0, kPi / 4.0, 33);
    config.measures = {Measure::QD, Measure::GQD_HS};
    return config;
  }
  throw std::invalid_argument("unknown figure preset '" + name +
                              "' (expected fig1a, fig1b, fig2a, fig2b, fig3a, fig3b, fig4)");
}

}  // namespace qcorr
