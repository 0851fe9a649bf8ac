#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "doctest.h"
#include "survsim/config.hpp"
#include "survsim/error.hpp"
#include "survsim/harness.hpp"
#include "survsim/plot.hpp"
#include "test_support.hpp"

using namespace survsim;
namespace fs = std::filesystem;

namespace {

ExperimentConfig tiny_config() {
  ExperimentConfig c;
  c.timing.duration = 150.0;
  c.techniques = {Technique::Br, Technique::AdLH};
  c.models = {FailureModel::IndependentRobot};
  c.rates = {0.0, 0.3};
  c.seeds = {1, 2};
  c.areas = {"small"};
  return c;
}

fs::path fresh_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("survsim_test_" + name);
  fs::remove_all(p);
  return p;
}

MetricsReport random_report(Rng& rng) {
  MetricsReport m;
  const PerType sr{1.0, 0.75, 0.5};
  for (std::size_t s = 0; s < 3; ++s) {
    m.produced[s] = rng.bernoulli(0.1) ? 0 : rng.below(30000);
    if (m.produced[s] == 0) {
      m.empty_production[s] = true;
      m.sa[s] = m.rf[s] = 1.0;
    } else {
      m.surviving_distinct[s] = rng.below(m.produced[s] + 1);
      m.surviving_copies[s] = m.surviving_distinct[s] * (1 + rng.below(200));
      m.sa[s] = static_cast<double>(m.surviving_distinct[s]) / static_cast<double>(m.produced[s]);
      m.rf[s] = static_cast<double>(m.surviving_copies[s]) / static_cast<double>(m.produced[s]);
    }
    m.cd += std::abs(m.sa[s] - sr[s]);
    m.crf += m.rf[s];
  }
  m.cd *= 100.0;
  return m;
}

}  // namespace

TEST_CASE("default matrix has 1500 cells in canonical order") {
  const ExperimentConfig c;
  const auto cells = enumerate_cells(c);
  CHECK(cells.size() == 1500);
  CHECK(cells.front() == CellKey{Technique::Br, FailureModel::IndependentRobot, 0.0, 1, "large"});
  CHECK(cells[1] == CellKey{Technique::Br, FailureModel::IndependentRobot, 0.0, 2, "large"});
  CHECK(cells[5].rate == 0.1);
  CHECK(cells[50].technique == Technique::BrCBr);
  CHECK(cells[250].model == FailureModel::IndependentArea);
  CHECK(cells[750].area == "small");
  CHECK(cells.back() == CellKey{Technique::AdFH, FailureModel::ClusteredArea, 0.9, 5, "small"});
}

TEST_CASE("one-cell configuration yields one row") {
  ExperimentConfig c = tiny_config();
  c.techniques = {Technique::Br};
  c.rates = {0.0};
  c.seeds = {1};
  const auto rows = run_matrix(c, 1);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].key == CellKey{Technique::Br, FailureModel::IndependentRobot, 0.0, 1, "small"});
  CHECK(rows[0].report.cd == doctest::Approx(75.0));
}

TEST_CASE("matrix rows do not depend on the worker count") {
  const auto c = tiny_config();
  std::size_t calls = 0;
  const auto one = run_matrix(c, 1, [&](std::size_t, std::size_t total) {
    ++calls;
    CHECK(total == 8);
  });
  CHECK(calls == 8);
  const auto three = run_matrix(c, 3);
  CHECK(one == three);
  std::ostringstream a, b;
  write_runs_csv(a, one);
  write_runs_csv(b, run_matrix(c, 2));
  CHECK(a.str() == b.str());
}

TEST_CASE("run errors surface from the pool") {
  auto c = tiny_config();
  c.areas = {"nowhere"};
  CHECK_THROWS_AS(run_matrix(c, 2), ConfigError);
}

TEST_CASE("property: runs.csv rows round trip") {
  Rng rng(3);
  std::vector<RunRow> rows;
  const char* areas[] = {"large", "small"};
  for (int i = 0; i < 300; ++i) {
    RunRow r;
    r.key = {static_cast<Technique>(rng.below(6)), static_cast<FailureModel>(1 + rng.below(3)),
             static_cast<double>(rng.below(10)) / 10.0, 1 + rng.below(1000), areas[rng.below(2)]};
    r.report = random_report(rng);
    CHECK(parse_run_row(format_run_row(r)) == r);
    rows.push_back(r);
  }
  std::stringstream text;
  write_runs_csv(text, rows);
  CHECK(read_runs_csv(text) == rows);
}

TEST_CASE("real rows round trip") {
  auto c = tiny_config();
  c.seeds = {3};
  for (const auto& row : run_matrix(c, 1)) CHECK(parse_run_row(format_run_row(row)) == row);
}

TEST_CASE("shortest round-trip reals") {
  CHECK(format_real(0.1) == "0.1");
  CHECK(format_real(75.0) == "75");
  CHECK(format_real(1.0 / 3.0) == "0.3333333333333333");
}

TEST_CASE("malformed csv is rejected") {
  CHECK_THROWS_AS(parse_run_row("br,robot,0,1,large"), ConfigError);
  CHECK_THROWS_AS(parse_run_row("br,robot,zero,1,large,1,1,1,1,1,1,0,3,1,1,1"), ConfigError);
  std::istringstream wrong("technique,model\n");
  CHECK_THROWS_AS(read_runs_csv(wrong), ConfigError);
}

TEST_CASE("aggregates are seed means and sample deviations") {
  Rng rng(8);
  std::vector<RunRow> rows;
  for (std::uint64_t seed = 1; seed <= 4; ++seed)
    for (auto t : {Technique::Br, Technique::AdFH}) {
      RunRow r;
      r.key = {t, FailureModel::ClusteredArea, 0.2, seed, "large"};
      r.report = random_report(rng);
      rows.push_back(r);
    }
  const auto agg = aggregate(rows);
  REQUIRE(agg.size() == 2);
  for (const auto& a : agg) {
    std::vector<double> cd, crf;
    for (const auto& r : rows)
      if (r.key.technique == a.technique) {
        cd.push_back(r.report.cd);
        crf.push_back(r.report.crf);
      }
    auto mean = [](const std::vector<double>& v) {
      double s = 0;
      for (double x : v) s += x;
      return s / static_cast<double>(v.size());
    };
    auto sd = [&](const std::vector<double>& v) {
      const double m = mean(v);
      double s = 0;
      for (double x : v) s += (x - m) * (x - m);
      return std::sqrt(s / static_cast<double>(v.size() - 1));
    };
    CHECK(a.runs == 4);
    CHECK(a.cd_mean == doctest::Approx(mean(cd)));
    CHECK(a.crf_mean == doctest::Approx(mean(crf)));
    CHECK(a.cd_sd == doctest::Approx(sd(cd)));
    CHECK(a.crf_sd == doctest::Approx(sd(crf)));
  }
  CHECK(agg[0].technique == Technique::Br);

  const std::vector<RunRow> single(rows.begin(), rows.begin() + 1);
  CHECK(aggregate(single)[0].cd_sd == 0.0);

  std::stringstream text;
  write_aggregates_csv(text, agg);
  CHECK(read_aggregates_csv(text) == agg);
}

TEST_CASE("plots: one chart per metric, model and area") {
  const ExperimentConfig c;
  std::vector<AggregateRow> agg;
  for (const auto& area : c.areas)
    for (auto m : c.models)
      for (auto t : c.techniques)
        for (double r : c.rates) agg.push_back({t, m, r, area, 5, 75.0 - 10 * r, 1.0, 10.0 + r, 0.5});
  const auto dir = fresh_dir("plots");
  const auto files = emit_plots(agg, dir);
  CHECK(files.size() == 12);
  std::size_t on_disk = 0;
  for (const auto& e : fs::directory_iterator(dir)) {
    CHECK(e.path().extension() == ".svg");
    std::ifstream in(e.path());
    std::string text((std::istreambuf_iterator<char>(in)), {});
    CHECK(text.find("<svg") != std::string::npos);
    CHECK(text.find("</svg>") != std::string::npos);
    ++on_disk;
  }
  CHECK(on_disk == 12);
  CHECK(fs::exists(dir / "crf_clustered_small.svg"));
  fs::remove_all(dir);
}

TEST_CASE("plots: a single cell still charts every technique point") {
  const std::vector<AggregateRow> agg{{Technique::Br, FailureModel::IndependentRobot, 0.3, "large", 1, 70, 0, 9, 0}};
  const auto dir = fresh_dir("single");
  const auto files = emit_plots(agg, dir);
  CHECK(files.size() == 2);  // CD and CRF
  fs::remove_all(dir);
}

TEST_CASE("plots: bad input") {
  const auto dir = fresh_dir("empty");
  CHECK_THROWS_AS(emit_plots({}, dir), Error);
  CHECK_FALSE(fs::exists(dir));

  const auto blocker = fresh_dir("blocker");
  std::ofstream(blocker) << "not a directory";
  const std::vector<AggregateRow> agg{{Technique::Br, FailureModel::IndependentRobot, 0.3, "large", 1, 70, 0, 9, 0}};
  CHECK_THROWS_AS(emit_plots(agg, blocker / "plots"), IoError);
  fs::remove(blocker);
}

TEST_CASE("configuration defaults and JSON") {
  const ExperimentConfig d;
  CHECK(d.radio.tx_range == 250.0);
  CHECK(d.hello.period_min == 8.0);
  CHECK(d.data.item_size == 500);
  CHECK(d.timing.duration == 1000.0);
  CHECK(d.protocol.ttl_full == 10);
  CHECK(d.protocol.ttl_limited == 3);

  const ExperimentConfig back = parse_config(dump_config(d));
  CHECK(dump_config(back) == dump_config(d));
  CHECK(enumerate_cells(back) == enumerate_cells(d));

  const auto c = parse_config(R"({"experiment": {"techniques": ["fl", "AdLH"], "rates": [0.5], "seeds": [9]},
                                   "radio": {"tx_range": 100}})");
  CHECK(c.techniques == std::vector<Technique>{Technique::Fl, Technique::AdLH});
  CHECK(c.rates == std::vector<double>{0.5});
  CHECK(c.radio.tx_range == 100.0);
  CHECK(c.radio.shadowing_sigma_db == 6.0);

  CHECK_THROWS_AS(parse_config("{not json"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"experiment": {"rates": [1.5]}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"experiment": {"techniques": ["smoke signals"]}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"mission": {"duration": 50}})"), ConfigError);
  CHECK_THROWS_AS(load_config("/nonexistent/survsim.json"), Error);
}

TEST_CASE("cell runs apply the cell's failure rate to scouts and working areas") {
  const ExperimentConfig c;
  const auto r = make_run(c, {Technique::AdFH, FailureModel::IndependentArea, 0.4, 2, "small"});
  CHECK(r.scenario.operation_bounds.width() == 2000.0);
  CHECK(r.protocol.technique == Technique::AdFH);
  CHECK(r.protocol.model == FailureModel::IndependentArea);
  CHECK(r.schedule.victim_count() == 39);  // round(0.4 * 33) = 13 areas
  for (const auto& robot : r.scenario.robots)
    CHECK(robot.failure_rate == (robot.role == RobotRole::Scout ? 0.4 : 0.0));
  for (const auto& a : r.scenario.areas) CHECK(a.failure_rate == (a.kind == AreaKind::Working ? 0.4 : 0.0));
}
