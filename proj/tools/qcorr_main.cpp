#include "qcorr/sweep.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

namespace {

using nlohmann::json;

std::vector<double> parse_grid(const std::string& text) {
  // start:stop:count
  std::istringstream in(text);
  std::string a, b, c;
  if (!std::getline(in, a, ':') || !std::getline(in, b, ':') || !std::getline(in, c)) {
    throw std::invalid_argument("grid '" + text + "' is not start:stop:count");
  }
  const double start = std::stod(a);
  const double stop = std::stod(b);
  const int count = std::stoi(c);
  return qcorr::linear_grid(start, stop, count);
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> items;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

std::vector<qcorr::ChannelKind> parse_channels(const std::string& text) {
  if (text == "all") return qcorr::all_channel_kinds();
  std::vector<qcorr::ChannelKind> kinds;
  for (const std::string& name : split_list(text)) {
    kinds.push_back(qcorr::channel_kind_from_string(name));
  }
  return kinds;
}

std::vector<qcorr::Measure> parse_measures(const std::string& text) {
  std::vector<qcorr::Measure> measures;
  for (const std::string& name : split_list(text)) {
    measures.push_back(qcorr::measure_from_string(name));
  }
  return measures;
}

std::vector<double> grid_from_json(const json& node) {
  if (node.is_string()) return parse_grid(node.get<std::string>());
  if (node.is_array()) return node.get<std::vector<double>>();
  throw std::invalid_argument("config: grid must be \"start:stop:count\" or an array");
}

void apply_config_file(const std::string& path, qcorr::SweepConfig& config,
                       std::string& out_path) {
  std::ifstream file(path);
  if (!file) {
    throw std::runtime_error("cannot open config file '" + path + "'");
  }
  json doc = json::parse(file);

  int n = config.family.n_qubits;
  double mu = config.family.mu;
  if (doc.contains("n")) n = doc["n"].get<int>();
  if (doc.contains("mu")) mu = doc["mu"].get<double>();
  if (doc.contains("family")) {
    const std::string family = doc["family"].get<std::string>();
    if (family == "werner-ghz") {
      config.family = qcorr::StateFamily::werner(n, mu);
    } else if (family == "rindler") {
      config.family = qcorr::StateFamily::rindler(0.0);
    } else {
      throw std::invalid_argument("config: unknown family '" + family + "'");
    }
  } else {
    config.family = qcorr::StateFamily::werner(n, mu);
  }
  if (doc.contains("channels")) {
    config.channels.clear();
    for (const auto& name : doc["channels"]) {
      config.channels.push_back(qcorr::channel_kind_from_string(name.get<std::string>()));
    }
  }
  if (doc.contains("p_grid")) config.p_grid = grid_from_json(doc["p_grid"]);
  if (doc.contains("r_grid")) config.r_grid = grid_from_json(doc["r_grid"]);
  if (doc.contains("measures")) {
    config.measures.clear();
    for (const auto& name : doc["measures"]) {
      config.measures.push_back(qcorr::measure_from_string(name.get<std::string>()));
    }
  }
  if (doc.contains("threads")) config.threads = doc["threads"].get<int>();
  if (doc.contains("out")) out_path = doc["out"].get<std::string>();
  if (doc.contains("optimizer")) {
    const json& opt = doc["optimizer"];
    if (opt.contains("theta_points")) config.optimizer.theta_grid_points = opt["theta_points"].get<int>();
    if (opt.contains("phi_points")) config.optimizer.phi_grid_points = opt["phi_points"].get<int>();
    if (opt.contains("top_seeds")) config.optimizer.top_seeds = opt["top_seeds"].get<int>();
    if (opt.contains("simplex_tolerance")) config.optimizer.simplex_tolerance = opt["simplex_tolerance"].get<double>();
    if (opt.contains("max_evaluations")) config.optimizer.max_evaluations = opt["max_evaluations"].get<long>();
  }
}

int run_sweep_command(const qcorr::SweepConfig& config, const std::string& out_path) {
  const qcorr::SweepResult result = qcorr::run_sweep(config);
  for (const std::string& warning : result.warnings) {
    std::cerr << "warning: " << warning << "\n";
  }
  qcorr::emit_csv(result.rows, out_path);
  std::cout << "wrote " << result.rows.size() << " rows to " << out_path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multipartite quantum correlations under decoherence: parameter sweeps,\n"
               "closed-form validation and figure-ready CSV output."};
  app.require_subcommand(1);

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "Run a parameter sweep and emit CSV");
  std::string family = "werner-ghz";
  int n_qubits = 3;
  double mu = 0.5;
  std::string channels_text = "all";
  std::string p_grid_text = "0:1:11";
  std::string r_grid_text;
  std::string measures_text = "QD,GQD_HS";
  std::string out_path = "sweep.csv";
  std::string config_path;
  int threads = 0;
  auto* family_opt = sweep_cmd->add_option("--family", family, "State family: werner-ghz or rindler")
      ->check(CLI::IsMember({"werner-ghz", "rindler"}));
  auto* n_opt = sweep_cmd->add_option("--n", n_qubits, "Qubit count for werner-ghz (3 or 6 for the reference figures)")
      ->check(CLI::Range(2, 8));
  auto* mu_opt = sweep_cmd->add_option("--mu", mu, "Werner-GHZ mixing weight in [0, 1]");
  auto* channels_opt = sweep_cmd->add_option("--channels", channels_text,
      "Comma list of channels, or 'all'");
  auto* p_opt = sweep_cmd->add_option("--p-grid", p_grid_text, "Decoherence grid start:stop:count");
  auto* r_opt = sweep_cmd->add_option("--r-grid", r_grid_text, "Acceleration grid start:stop:count (rindler)");
  auto* measures_opt = sweep_cmd->add_option("--measures", measures_text,
      "Comma list of QD, GQD_HS, GQD_ENTROPIC, GQD_CLOSED");
  auto* out_opt = sweep_cmd->add_option("--out", out_path, "Output CSV path");
  sweep_cmd->add_option("--config", config_path, "JSON config file; explicit flags override it");
  auto* threads_opt = sweep_cmd->add_option("--threads", threads, "Worker threads (0 = all cores)");

  // validate-tables
  auto* validate_cmd = app.add_subcommand(
      "validate-tables", "Compare closed-form geometric discord against the numerical oracle");
  std::string report_path = "validation_report.txt";
  std::string report_csv_path = "validation_report.csv";
  int p_points = 11;
  int validate_threads = 0;
  bool strict = false;
  validate_cmd->add_option("--out", report_path, "Text report path");
  validate_cmd->add_option("--csv", report_csv_path, "CSV twin path");
  validate_cmd->add_option("--p-points", p_points, "Points on the p grid")->check(CLI::Range(2, 101));
  validate_cmd->add_option("--threads", validate_threads, "Worker threads (0 = all cores)");
  validate_cmd->add_flag("--strict", strict, "Exit 1 if any non-discrepant row fails");

  // figure
  auto* figure_cmd = app.add_subcommand("figure", "Emit CSV for a named figure preset");
  std::string preset_name;
  std::string figure_out;
  std::string figure_p_grid, figure_r_grid;
  int figure_threads = 0;
  figure_cmd->add_option("preset", preset_name, "fig1a, fig1b, fig2a, fig2b, fig3a, fig3b or fig4")
      ->required();
  figure_cmd->add_option("--out", figure_out, "Output CSV path (default <preset>.csv)");
  auto* fig_p_opt = figure_cmd->add_option("--p-grid", figure_p_grid, "Override p grid start:stop:count");
  auto* fig_r_opt = figure_cmd->add_option("--r-grid", figure_r_grid, "Override r grid start:stop:count");
  figure_cmd->add_option("--threads", figure_threads, "Worker threads (0 = all cores)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (sweep_cmd->parsed()) {
      qcorr::SweepConfig config;
      config.family = qcorr::StateFamily::werner(n_qubits, mu);
      config.channels = qcorr::all_channel_kinds();
      config.p_grid = qcorr::linear_grid(0.0, 1.0, 11);
      config.measures = {qcorr::Measure::QD, qcorr::Measure::GQD_HS};

      if (!config_path.empty()) apply_config_file(config_path, config, out_path);

      if (family_opt->count() || n_opt->count() || mu_opt->count()) {
        const std::string family_name = family_opt->count() ? family : config.family.label();
        if (family_name == "rindler") {
          config.family = qcorr::StateFamily::rindler(0.0);
        } else {
          const int n = n_opt->count() ? n_qubits : config.family.n_qubits;
          const double m = mu_opt->count() ? mu : config.family.mu;
          config.family = qcorr::StateFamily::werner(n, m);
        }
      }
      if (channels_opt->count()) config.channels = parse_channels(channels_text);
      if (p_opt->count()) config.p_grid = parse_grid(p_grid_text);
      if (r_opt->count()) config.r_grid = parse_grid(r_grid_text);
      if (measures_opt->count()) config.measures = parse_measures(measures_text);
      if (threads_opt->count()) config.threads = threads;
      if (out_opt->count()) { /* out_path already holds the flag value */ }

      if (config.family.kind == qcorr::StateKind::RindlerGHZ && config.r_grid.empty()) {
        config.r_grid = qcorr::linear_grid(0.0, std::numbers::pi / 4.0, 33);
      }
      return run_sweep_command(config, out_path);
    }

    if (validate_cmd->parsed()) {
      const qcorr::ValidationReport report =
          qcorr::validate_tables({}, validate_threads, p_points);
      {
        std::ofstream file(report_path, std::ios::binary);
        if (!file) throw std::runtime_error("cannot open '" + report_path + "'");
        file << report.text();
      }
      {
        std::ofstream file(report_csv_path, std::ios::binary);
        if (!file) throw std::runtime_error("cannot open '" + report_csv_path + "'");
        file << report.csv();
      }
      std::cout << report.n_pass << " pass, " << report.n_fail << " fail, "
                << report.n_discrepant << " discrepant-by-design; report in "
                << report_path << "\n";
      if (strict && report.n_fail > 0) return 1;
      return 0;
    }

    if (figure_cmd->parsed()) {
      qcorr::SweepConfig config = qcorr::figure_preset(preset_name);
      if (fig_p_opt->count()) config.p_grid = parse_grid(figure_p_grid);
      if (fig_r_opt->count()) config.r_grid = parse_grid(figure_r_grid);
      config.threads = figure_threads;
      const std::string path = figure_out.empty() ? preset_name + ".csv" : figure_out;
      return run_sweep_command(config, path);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
