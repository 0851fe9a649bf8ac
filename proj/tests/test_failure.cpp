#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "doctest.h"
#include "survsim/error.hpp"
#include "survsim/failure.hpp"
#include "test_support.hpp"

using namespace survsim;

namespace {

NeighborRecord rec(RobotId id, RobotRole role, AreaId area, AreaKind kind, double rho, double lambda) {
  return {id, role, area, kind, rho, lambda, nullptr, 0.0};
}
NeighborRecord scout(RobotId id, AreaId area, double r) {
  return rec(id, RobotRole::Scout, area, AreaKind::Working, r, r);
}
NeighborRecord archivist(RobotId id, AreaId area, double r) {
  return rec(id, RobotRole::Archivist, area, AreaKind::Connecting, r, r);
}

NeighborhoodView view_of(std::vector<NeighborRecord> records, ViewOwner owner = {999, RobotRole::Scout, 99,
                                                                                  AreaKind::Working, 0.3, 0.3}) {
  NeighborhoodView v(owner);
  for (auto& r : records) v.update(r);
  return v;
}

}  // namespace

TEST_CASE("failure count rounds halves up") {
  CHECK(failure_count(0.0, 99) == 0);
  CHECK(failure_count(0.3, 33) == 10);
  CHECK(failure_count(0.2, 33) == 7);
  CHECK(failure_count(0.5, 33) == 17);
  CHECK(failure_count(0.1, 5) == 1);
  CHECK(failure_count(0.1, 33) == 3);
  CHECK(failure_count(1.0, 99) == 99);
}

TEST_CASE("zero rate schedules nothing") {
  const Scenario s = generate_scenario(ScenarioConfig{}, 1);
  for (auto m : {FailureModel::IndependentRobot, FailureModel::IndependentArea, FailureModel::ClusteredArea}) {
    const auto sch = build_failure_schedule(s, m, 0.0, 1);
    CHECK(sch.events.empty());
    CHECK(sch.victim_count() == 0);
  }
}

TEST_CASE("independent robot failures") {
  const Scenario s = generate_scenario(ScenarioConfig{}, 4);
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto sch = build_failure_schedule(s, FailureModel::IndependentRobot, 0.3, seed);
    CHECK(sch.victim_count() == 30);
    std::set<RobotId> victims;
    double prev = 0.0;
    for (const auto& e : sch.events) {
      CHECK(e.time >= 100.0);
      CHECK(e.time <= 1000.0);
      CHECK(e.time >= prev);
      prev = e.time;
      for (RobotId v : e.victims) {
        CHECK(s.robots[static_cast<std::size_t>(v)].role == RobotRole::Scout);
        CHECK(victims.insert(v).second);
      }
    }
  }
}

TEST_CASE("independent area failures take whole working areas") {
  const Scenario s = generate_scenario(ScenarioConfig{}, 4);
  const auto sch = build_failure_schedule(s, FailureModel::IndependentArea, 0.3, 2);
  CHECK(sch.victim_count() == 30);
  std::set<AreaId> areas;
  for (const auto& e : sch.events) {
    CHECK(e.time >= 100.0);
    CHECK(e.time <= 1000.0);
    std::set<AreaId> hit;
    for (RobotId v : e.victims) hit.insert(s.robots[static_cast<std::size_t>(v)].home_area);
    for (AreaId a : hit) {
      CHECK(areas.insert(a).second);
      CHECK(s.robots_in_area(a).size() == 3);
    }
  }
  CHECK(areas.size() == 10);
}

TEST_CASE("clustered failures hit a seed area and its nearest neighbors at once") {
  const Scenario s = generate_scenario(ScenarioConfig{}, 4);
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto sch = build_failure_schedule(s, FailureModel::ClusteredArea, 0.2, seed);
    REQUIRE(sch.events.size() == 1);
    const auto& e = sch.events[0];
    CHECK(e.time >= 700.0);
    CHECK(e.time <= 1000.0);
    CHECK(e.victims.size() == 21);
    std::set<AreaId> hit;
    for (RobotId v : e.victims) hit.insert(s.robots[static_cast<std::size_t>(v)].home_area);
    REQUIRE(hit.size() == 7);
    const bool some_origin_explains_it = std::any_of(hit.begin(), hit.end(), [&](AreaId origin) {
      auto expect = area_neighbors(s, origin, 6);
      expect.push_back(origin);
      return std::set<AreaId>(expect.begin(), expect.end()) == hit;
    });
    CHECK(some_origin_explains_it);
  }
}

TEST_CASE("schedules are deterministic per seed") {
  const Scenario s = generate_scenario(ScenarioConfig{}, 4);
  CHECK(build_failure_schedule(s, FailureModel::IndependentRobot, 0.4, 3) ==
        build_failure_schedule(s, FailureModel::IndependentRobot, 0.4, 3));
  CHECK_FALSE(build_failure_schedule(s, FailureModel::IndependentRobot, 0.4, 3) ==
              build_failure_schedule(s, FailureModel::IndependentRobot, 0.4, 4));
}

TEST_CASE("rates outside the unit interval are rejected") {
  const Scenario s = generate_scenario(ScenarioConfig{}, 4);
  CHECK_THROWS_AS(build_failure_schedule(s, FailureModel::IndependentRobot, 1.5, 1), ConfigError);
  CHECK_THROWS_AS(build_failure_schedule(s, FailureModel::IndependentArea, -0.1, 1), ConfigError);
}

TEST_CASE("property: schedule text round trip") {
  const Scenario s = generate_scenario(ScenarioConfig{}, 4);
  for (auto m : {FailureModel::IndependentRobot, FailureModel::IndependentArea, FailureModel::ClusteredArea})
    for (double p : {0.0, 0.1, 0.5, 0.9})
      for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        const auto sch = build_failure_schedule(s, m, p, seed);
        std::stringstream text;
        write_schedule(text, sch);
        CHECK(read_schedule(text) == sch);
      }
}

TEST_CASE("malformed schedules are rejected") {
  std::istringstream dup("robot 0.1\n100 3 4\n200 4\n");
  CHECK_THROWS_AS(read_schedule(dup), ConfigError);
  std::istringstream junk("robot 0.1\n100 x\n");
  CHECK_THROWS_AS(read_schedule(junk), ConfigError);
  std::istringstream model("meteor 0.1\n");
  CHECK_THROWS_AS(read_schedule(model), ConfigError);
}

TEST_CASE("failure probability examples") {
  const auto two_scouts = view_of({scout(1, 0, 0.1), scout(2, 0, 0.1)});
  CHECK(failure_probability(FailureModel::IndependentRobot, two_scouts) == doctest::Approx(0.01));

  const auto with_archivist = view_of({scout(1, 0, 0.1), scout(2, 0, 0.1), archivist(3, 5, 0.0)});
  CHECK(failure_probability(FailureModel::IndependentRobot, with_archivist) == 0.0);
  CHECK(failure_probability(FailureModel::IndependentArea, with_archivist) == 0.0);
  CHECK(failure_probability(FailureModel::ClusteredArea, with_archivist) == 0.0);

  const auto two_areas = view_of({scout(1, 0, 0.1), scout(2, 1, 0.1)});
  CHECK(failure_probability(FailureModel::IndependentArea, two_areas) == doctest::Approx(0.01));
  CHECK(failure_probability(FailureModel::ClusteredArea, two_areas) == doctest::Approx(0.1));
}

TEST_CASE("empty view falls back to the owner's own rate") {
  const ViewOwner owner{0, RobotRole::Scout, 0, AreaKind::Working, 0.4, 0.25};
  const NeighborhoodView v(owner);
  CHECK(failure_probability(FailureModel::IndependentRobot, v) == 0.4);
  CHECK(failure_probability(FailureModel::IndependentArea, v) == 0.25);
  CHECK(failure_probability(FailureModel::ClusteredArea, v) == 0.25);
}

TEST_CASE("view ignores the owner and expires stale records") {
  const ViewOwner owner{5, RobotRole::Scout, 0, AreaKind::Working, 0.1, 0.1};
  NeighborhoodView v(owner);
  v.update({5, RobotRole::Scout, 0, AreaKind::Working, 0.1, 0.1, nullptr, 0.0});
  CHECK(v.empty());
  v.update({7, RobotRole::Scout, 0, AreaKind::Working, 0.1, 0.1, nullptr, 0.0});
  v.update({3, RobotRole::Scout, 0, AreaKind::Working, 0.1, 0.1, nullptr, 10.0});
  v.update({7, RobotRole::Scout, 0, AreaKind::Working, 0.2, 0.2, nullptr, 1.0});
  REQUIRE(v.size() == 2);
  CHECK(v.neighbors()[0].id == 3);
  CHECK(v.neighbors()[1].failure_rate == 0.2);
  v.expire(16.0, 15.0);
  CHECK(v.size() == 2);
  v.expire(16.5, 15.0);
  REQUIRE(v.size() == 1);
  CHECK(v.neighbors()[0].id == 3);
}

TEST_CASE("property: failure probability bounds and monotonicity") {
  Rng rng(21);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<NeighborRecord> recs;
    const double r = rng.uniform(0.0, 1.0);
    const int n = 1 + static_cast<int>(rng.below(6));
    for (int i = 0; i < n; ++i) recs.push_back(scout(i, static_cast<AreaId>(rng.below(3)), r));
    for (auto m : {FailureModel::IndependentRobot, FailureModel::IndependentArea, FailureModel::ClusteredArea}) {
      std::vector<NeighborRecord> partial;
      double prev = 1.0;
      for (const auto& x : recs) {
        partial.push_back(x);
        const double fp = failure_probability(m, view_of(partial));
        CHECK(fp >= 0.0);
        CHECK(fp <= prev + 1e-15);
        prev = fp;
      }
    }
    // Scouts sharing one rate: robot failures are the least pessimistic.
    const auto v = view_of(recs);
    CHECK(failure_probability(FailureModel::IndependentRobot, v) <=
          failure_probability(FailureModel::IndependentArea, v) + 1e-15);
    CHECK(failure_probability(FailureModel::IndependentArea, v) <=
          failure_probability(FailureModel::ClusteredArea, v) + 1e-15);
  }
}

TEST_CASE("failure probability agrees with drawing the failures") {
  Rng views(77);
  Rng draws(78);
  for (auto m : {FailureModel::IndependentRobot, FailureModel::IndependentArea, FailureModel::ClusteredArea})
    for (int i = 0; i < 20; ++i) {
      const auto v = survsim::testing::random_view(views);
      const double mc = survsim::testing::monte_carlo_fp(m, v, 20000, draws);
      CHECK(std::abs(failure_probability(m, v) - mc) <= 0.02);
    }
}
