#include "survsim/harness.hpp"

#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <istream>
#include <map>
#include <mutex>
#include <ostream>
#include <thread>
#include <tuple>

#include "survsim/error.hpp"

namespace survsim {

std::vector<CellKey> enumerate_cells(const ExperimentConfig& c) {
  std::vector<CellKey> cells;
  cells.reserve(c.areas.size() * c.models.size() * c.techniques.size() * c.rates.size() * c.seeds.size());
  for (const auto& area : c.areas)
    for (auto model : c.models)
      for (auto technique : c.techniques)
        for (double rate : c.rates)
          for (auto seed : c.seeds) cells.push_back({technique, model, rate, seed, area});
  return cells;
}

RunRow run_cell(const ExperimentConfig& config, const CellKey& key, RunObserver* observer) {
  const RunHistory history = run(make_run(config, key), observer);
  return {key, compute_report(history, config.data.survivability)};
}

std::vector<RunRow> run_matrix(const ExperimentConfig& config, unsigned workers, const ProgressFn& progress) {
  validate(config);
  const std::vector<CellKey> cells = enumerate_cells(config);
  std::vector<RunRow> rows(cells.size());
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(1, cells.size())));

  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> done{0};
  std::atomic<bool> failed{false};
  std::exception_ptr first_error;
  std::mutex mutex;

  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= cells.size() || failed.load()) return;
      try {
        rows[i] = run_cell(config, cells[i]);
      } catch (...) {
        std::lock_guard lock(mutex);
        if (!first_error) first_error = std::current_exception();
        failed = true;
        return;
      }
      const std::size_t d = done.fetch_add(1) + 1;
      if (progress) {
        std::lock_guard lock(mutex);
        progress(d, cells.size());
      }
    }
  };

  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  if (first_error) std::rethrow_exception(first_error);
  return rows;
}

std::vector<AggregateRow> aggregate(std::span<const RunRow> rows) {
  using Key = std::tuple<std::string, int, int, double>;
  std::map<Key, std::size_t> index;
  std::vector<AggregateRow> out;
  std::vector<std::vector<const RunRow*>> members;
  for (const auto& r : rows) {
    const Key k{r.key.area, static_cast<int>(r.key.model), static_cast<int>(r.key.technique), r.key.rate};
    auto [it, inserted] = index.emplace(k, out.size());
    if (inserted) {
      out.push_back({r.key.technique, r.key.model, r.key.rate, r.key.area});
      members.emplace_back();
    }
    members[it->second].push_back(&r);
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    const auto& m = members[i];
    const auto n = static_cast<double>(m.size());
    double cd = 0.0, crf = 0.0;
    for (const RunRow* r : m) {
      cd += r->report.cd;
      crf += r->report.crf;
    }
    out[i].runs = m.size();
    out[i].cd_mean = cd / n;
    out[i].crf_mean = crf / n;
    if (m.size() > 1) {
      double vcd = 0.0, vcrf = 0.0;
      for (const RunRow* r : m) {
        vcd += (r->report.cd - out[i].cd_mean) * (r->report.cd - out[i].cd_mean);
        vcrf += (r->report.crf - out[i].crf_mean) * (r->report.crf - out[i].crf_mean);
      }
      out[i].cd_sd = std::sqrt(vcd / (n - 1.0));
      out[i].crf_sd = std::sqrt(vcrf / (n - 1.0));
    }
  }
  return out;
}

// ---- CSV ------------------------------------------------------------------

std::string format_real(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

namespace {

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    out.push_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

double parse_real(std::string_view s) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
    throw ConfigError("malformed number '" + std::string(s) + "'");
  return v;
}

std::uint64_t parse_uint(std::string_view s) {
  std::uint64_t v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
    throw ConfigError("malformed integer '" + std::string(s) + "'");
  return v;
}

std::string_view trim_cr(std::string_view s) {
  if (!s.empty() && s.back() == '\r') s.remove_suffix(1);
  return s;
}

}  // namespace

std::string runs_csv_header() {
  return "technique,model,rate,seed,area,sa1,sa2,sa3,rf1,rf2,rf3,cd,crf,produced1,produced2,produced3";
}

std::string format_run_row(const RunRow& row) {
  const auto& m = row.report;
  std::string s;
  s += to_string(row.key.technique);
  s += ',';
  s += to_string(row.key.model);
  s += ',' + format_real(row.key.rate) + ',' + std::to_string(row.key.seed) + ',' + row.key.area;
  for (double v : m.sa) s += ',' + format_real(v);
  for (double v : m.rf) s += ',' + format_real(v);
  s += ',' + format_real(m.cd) + ',' + format_real(m.crf);
  for (auto v : m.produced) s += ',' + std::to_string(v);
  return s;
}

RunRow parse_run_row(std::string_view line) {
  const auto f = split(trim_cr(line));
  if (f.size() != 16) throw ConfigError("runs.csv row needs 16 fields: " + std::string(line));
  RunRow row;
  row.key.technique = parse_technique(f[0]);
  row.key.model = parse_failure_model(f[1]);
  row.key.rate = parse_real(f[2]);
  row.key.seed = parse_uint(f[3]);
  row.key.area = std::string(f[4]);
  auto& m = row.report;
  for (std::size_t s = 0; s < kDataTypes; ++s) {
    m.sa[s] = parse_real(f[5 + s]);
    m.rf[s] = parse_real(f[8 + s]);
    m.produced[s] = parse_uint(f[13 + s]);
  }
  m.cd = parse_real(f[11]);
  m.crf = parse_real(f[12]);
  // Counts are recoverable from the ratios.
  for (std::size_t s = 0; s < kDataTypes; ++s) {
    m.empty_production[s] = m.produced[s] == 0;
    if (!m.empty_production[s]) {
      const auto p = static_cast<double>(m.produced[s]);
      m.surviving_distinct[s] = static_cast<std::uint64_t>(std::llround(m.sa[s] * p));
      m.surviving_copies[s] = static_cast<std::uint64_t>(std::llround(m.rf[s] * p));
    }
  }
  return row;
}

void write_runs_csv(std::ostream& out, std::span<const RunRow> rows) {
  out << runs_csv_header() << '\n';
  for (const auto& r : rows) out << format_run_row(r) << '\n';
}

std::vector<RunRow> read_runs_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || trim_cr(line) != runs_csv_header()) throw ConfigError("not a runs.csv file");
  std::vector<RunRow> rows;
  while (std::getline(in, line))
    if (!trim_cr(line).empty()) rows.push_back(parse_run_row(line));
  return rows;
}

std::string aggregates_csv_header() { return "technique,model,rate,area,runs,cd_mean,cd_sd,crf_mean,crf_sd"; }

std::string format_aggregate_row(const AggregateRow& a) {
  std::string s;
  s += to_string(a.technique);
  s += ',';
  s += to_string(a.model);
  s += ',' + format_real(a.rate) + ',' + a.area + ',' + std::to_string(a.runs) + ',' + format_real(a.cd_mean) + ',' +
       format_real(a.cd_sd) + ',' + format_real(a.crf_mean) + ',' + format_real(a.crf_sd);
  return s;
}

AggregateRow parse_aggregate_row(std::string_view line) {
  const auto f = split(trim_cr(line));
  if (f.size() != 9) throw ConfigError("aggregates.csv row needs 9 fields: " + std::string(line));
  AggregateRow a;
  a.technique = parse_technique(f[0]);
  a.model = parse_failure_model(f[1]);
  a.rate = parse_real(f[2]);
  a.area = std::string(f[3]);
  a.runs = parse_uint(f[4]);
  a.cd_mean = parse_real(f[5]);
  a.cd_sd = parse_real(f[6]);
  a.crf_mean = parse_real(f[7]);
  a.crf_sd = parse_real(f[8]);
  return a;
}

void write_aggregates_csv(std::ostream& out, std::span<const AggregateRow> rows) {
  out << aggregates_csv_header() << '\n';
  for (const auto& r : rows) out << format_aggregate_row(r) << '\n';
}

std::vector<AggregateRow> read_aggregates_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || trim_cr(line) != aggregates_csv_header())
    throw ConfigError("not an aggregates.csv file");
  std::vector<AggregateRow> rows;
  while (std::getline(in, line))
    if (!trim_cr(line).empty()) rows.push_back(parse_aggregate_row(line));
  return rows;
}

}  // namespace survsim
