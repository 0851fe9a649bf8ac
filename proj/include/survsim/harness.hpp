#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "survsim/config.hpp"
#include "survsim/metrics.hpp"

namespace survsim {

struct RunRow {
  CellKey key;
  MetricsReport report;

  friend bool operator==(const RunRow&, const RunRow&) = default;
};

/// Seed statistics of one (technique, model, rate, area) cell.
struct AggregateRow {
  Technique technique = Technique::Br;
  FailureModel model = FailureModel::IndependentRobot;
  double rate = 0.0;
  std::string area;
  std::size_t runs = 0;
  double cd_mean = 0.0;
  double cd_sd = 0.0;  // sample standard deviation; 0 for a single run
  double crf_mean = 0.0;
  double crf_sd = 0.0;

  friend bool operator==(const AggregateRow&, const AggregateRow&) = default;
};

/// Canonical order: area, model, technique, rate, seed (each by config order).
std::vector<CellKey> enumerate_cells(const ExperimentConfig& config);

RunRow run_cell(const ExperimentConfig& config, const CellKey& key, RunObserver* observer = nullptr);

using ProgressFn = std::function<void(std::size_t done, std::size_t total)>;

/// Runs every cell on up to `workers` threads. Rows come back in canonical
/// order whatever the scheduling; the first run error is rethrown.
std::vector<RunRow> run_matrix(const ExperimentConfig& config, unsigned workers, const ProgressFn& progress = {});

/// Groups rows by (technique, model, rate, area), first-appearance order.
std::vector<AggregateRow> aggregate(std::span<const RunRow> rows);

// runs.csv:
//   technique,model,rate,seed,area,sa1,sa2,sa3,rf1,rf2,rf3,cd,crf,produced1,produced2,produced3
// aggregates.csv:
//   technique,model,rate,area,runs,cd_mean,cd_sd,crf_mean,crf_sd
// Reals use the shortest representation that parses back to the same double.
std::string runs_csv_header();
std::string format_run_row(const RunRow& row);
RunRow parse_run_row(std::string_view line);
void write_runs_csv(std::ostream& out, std::span<const RunRow> rows);
std::vector<RunRow> read_runs_csv(std::istream& in);

std::string aggregates_csv_header();
std::string format_aggregate_row(const AggregateRow& row);
AggregateRow parse_aggregate_row(std::string_view line);
void write_aggregates_csv(std::ostream& out, std::span<const AggregateRow> rows);
std::vector<AggregateRow> read_aggregates_csv(std::istream& in);

std::string format_real(double v);

}  // namespace survsim
