// Command line front end: single runs, the full experiment matrix, and plotting.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "survsim/config.hpp"
#include "survsim/error.hpp"
#include "survsim/harness.hpp"
#include "survsim/mobility.hpp"
#include "survsim/plot.hpp"

namespace fs = std::filesystem;
using namespace survsim;

namespace {

ExperimentConfig resolve_config(const std::string& flag) {
  if (!flag.empty()) return load_config(flag);
  if (const char* env = std::getenv(kConfigEnvVar); env && *env) return load_config(env);
  return ExperimentConfig{};
}

std::ofstream open_out(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Data survivability simulator for heterogeneous robot networks"};
  app.require_subcommand(1);

  std::string config_path;

  auto* simulate = app.add_subcommand("simulate", "Run a single mission and print its runs.csv row");
  std::string technique = "adlh", model = "robot", area = "large";
  double rate = 0.0;
  std::uint64_t seed = 1;
  std::string trace, placement, mobility_trace, schedule_out, schedule_in;
  simulate->add_option("--config", config_path, "Configuration file (JSON); defaults to $SURVSIM_CONFIG");
  simulate->add_option("--technique", technique, "br, fl, brcbr, brclfl, adlh or adfh")->capture_default_str();
  simulate->add_option("--model", model, "robot, area or clustered")->capture_default_str();
  simulate->add_option("--rate", rate, "Failure rate in [0, 1]")->capture_default_str();
  simulate->add_option("--seed", seed, "Scenario seed")->capture_default_str();
  simulate->add_option("--area", area, "Area preset name")->capture_default_str();
  simulate->add_option("--trace", trace, "Write the transmission log to this file");
  simulate->add_option("--placement", placement, "Write the robot placement listing to this file");
  simulate->add_option("--mobility-trace", mobility_trace, "Write the movement trace to this file");
  simulate->add_option("--schedule-out", schedule_out, "Write the failure schedule to this file");
  simulate->add_option("--schedule-in", schedule_in, "Replay a failure schedule instead of generating one");

  auto* matrix = app.add_subcommand("matrix", "Run the full experiment matrix");
  unsigned workers = 0;
  std::string out_dir;
  matrix->add_option("--config", config_path, "Configuration file (JSON); defaults to $SURVSIM_CONFIG");
  matrix->add_option("--workers", workers, "Parallel runs (0: hardware threads)");
  matrix->add_option("--out", out_dir, "Output directory");

  auto* plot = app.add_subcommand("plot", "Render SVG charts from aggregates.csv");
  std::string plot_in, plot_out = "plots";
  plot->add_option("--in", plot_in, "aggregates.csv")->required();
  plot->add_option("--out", plot_out, "Output directory")->capture_default_str();

  auto* defaults = app.add_subcommand("defaults", "Print the default configuration");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*defaults) {
      std::cout << dump_config(ExperimentConfig{}) << '\n';
      return 0;
    }

    if (*simulate) {
      const ExperimentConfig config = resolve_config(config_path);
      const CellKey key{parse_technique(technique), parse_failure_model(model), rate, seed, area};
      SimulationRun run = make_run(config, key);
      if (!schedule_in.empty()) {
        std::ifstream in(schedule_in);
        if (!in) throw IoError("cannot read " + schedule_in);
        run.schedule = read_schedule(in);
      }
      if (!schedule_out.empty()) {
        auto out = open_out(schedule_out);
        write_schedule(out, run.schedule);
      }
      if (!placement.empty()) {
        auto out = open_out(placement);
        write_placement(out, run.scenario, positions_at(run.scenario, 0.0, seed, config.tick));
      }
      if (!mobility_trace.empty()) {
        auto out = open_out(mobility_trace);
        write_trace(out, run.scenario, config.timing.duration, seed, config.tick);
      }
      std::optional<std::ofstream> trace_out;
      std::optional<TransmissionLog> log;
      if (!trace.empty()) {
        trace_out.emplace(open_out(trace));
        log.emplace(*trace_out);
      }
      const RunHistory history = survsim::run(run, log ? &*log : nullptr);
      const RunRow row{key, compute_report(history, config.data.survivability)};
      std::cout << runs_csv_header() << '\n' << format_run_row(row) << '\n';
      const auto& c = history.counters;
      std::cerr << "data transmissions " << c.data_transmissions << ", hello transmissions " << c.hello_transmissions
                << ", receptions " << c.receptions << ", shadowing losses " << c.shadowing_losses
                << ", congestion drops " << c.congestion_drops << '\n';
      return 0;
    }

    if (*matrix) {
      ExperimentConfig config = resolve_config(config_path);
      if (!out_dir.empty()) config.output_dir = out_dir;
      if (workers == 0) workers = config.workers;
      const fs::path dir = config.output_dir;
      const auto rows = run_matrix(config, workers, [](std::size_t done, std::size_t total) {
        std::cerr << "\r" << done << '/' << total << std::flush;
      });
      std::cerr << '\n';
      const auto aggregates = aggregate(rows);
      {
        auto out = open_out(dir / "runs.csv");
        write_runs_csv(out, rows);
      }
      {
        auto out = open_out(dir / "aggregates.csv");
        write_aggregates_csv(out, aggregates);
      }
      const auto plots = emit_plots(aggregates, dir / "plots");
      std::cerr << rows.size() << " runs, " << aggregates.size() << " aggregates, " << plots.size() << " charts in "
                << dir << '\n';
      return 0;
    }

    if (*plot) {
      std::ifstream in(plot_in);
      if (!in) throw IoError("cannot read " + plot_in);
      const auto aggregates = read_aggregates_csv(in);
      for (const auto& p : emit_plots(aggregates, plot_out)) std::cout << p.string() << '\n';
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
