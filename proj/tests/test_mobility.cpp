#include <algorithm>
#include <sstream>

#include "doctest.h"
#include "survsim/mobility.hpp"
#include "test_support.hpp"

using namespace survsim;
using survsim::testing::ScenarioBuilder;

TEST_CASE("scout at its waypoint picks a fresh one and a speed in range") {
  const AreaSpec area{0, AreaKind::Working, {0, 0, 100, 100}, {1.0, 5.0}, 0.0};
  const RobotSpec scout{0, RobotRole::Scout, 0, 0.0};
  Rng rng(11);
  RobotKinematics k{{50, 50}, {50, 50}, 3.0, 1};
  for (int i = 0; i < 200; ++i) {
    k.waypoint = k.position;
    const RobotKinematics n = step(scout, area, k, 1.0, rng);
    CHECK(area.bounds.contains(n.position));
    CHECK(area.bounds.contains(n.waypoint));
    CHECK(n.speed >= 1.0);
    CHECK(n.speed <= 5.0);
    k = n;
  }
}

TEST_CASE("archivist reverses at the end of its stripe") {
  const AreaSpec stripe{0, AreaKind::Connecting, {100, 0, 150, 1000}, {5.0, 10.0}, 0.0};
  const RobotSpec arch{0, RobotRole::Archivist, 0, 0.0};
  Rng rng(3);
  const RobotKinematics at_end{{120, 1000}, {120, 1000}, 7.0, +1};
  const RobotKinematics n = step(arch, stripe, at_end, 1.0, rng);
  CHECK(n.sweep_direction == -1);
  CHECK(n.waypoint.y == doctest::Approx(0.0));
  CHECK(n.position.y < 1000.0);
}

TEST_CASE("tiny steps move at most speed times dt") {
  const AreaSpec area{0, AreaKind::Working, {0, 0, 100, 100}, {1.0, 5.0}, 0.0};
  const RobotSpec scout{0, RobotRole::Scout, 0, 0.0};
  Rng rng(5);
  const RobotKinematics k{{10, 10}, {90, 90}, 5.0, 1};
  const RobotKinematics n = step(scout, area, k, 1e-9, rng);
  CHECK(distance(k.position, n.position) <= 5.0 * 1e-9 + 1e-12);
}

TEST_CASE("zero speed range keeps robots still") {
  ScenarioBuilder b;
  b.pinned(RobotRole::Archivist, {10, 10});
  b.robot(RobotRole::Scout, b.area(AreaKind::Working, {0, 0, 50, 50}, {0, 0}));
  const Scenario s = b.build();
  const auto p0 = positions_at(s, 0.0, 4);
  const auto p1 = positions_at(s, 100.0, 4);
  CHECK(p0[0] == p1[0]);
  CHECK(p0[1] == p1[1]);
  CHECK(p0[0] == Point{10, 10});
}

TEST_CASE("positions_at is deterministic and matches stepping a fleet") {
  const Scenario s = generate_scenario(ScenarioConfig{}, 8);
  CHECK(positions_at(s, 37.0, 2) == positions_at(s, 37.0, 2));
  FleetMobility fleet(s, 2);
  CHECK(positions_at(s, 0.0, 2) == fleet.positions());
  for (int i = 0; i < 37; ++i) fleet.advance(1.0, {});
  CHECK(positions_at(s, 37.0, 2) == fleet.positions());
}

TEST_CASE("frozen robots do not move and consume no draws") {
  const Scenario s = generate_scenario(ScenarioConfig{}, 8);
  std::vector<bool> frozen(s.robots.size(), false);
  frozen[0] = true;
  FleetMobility a(s, 6);
  FleetMobility b(s, 6);
  const Point start = a.positions()[0];
  for (int i = 0; i < 50; ++i) a.advance(1.0, frozen);
  CHECK(a.positions()[0] == start);
  // Robot 0 frozen from the start: the others follow their own draw sequence,
  // which differs from an unfrozen fleet only through robot 0's draws.
  for (int i = 0; i < 50; ++i) b.advance(1.0, {});
  CHECK_FALSE(a.positions() == b.positions());
}

TEST_CASE("property: containment and speed bound over a full mission") {
  for (std::uint64_t seed : {1u, 2u}) {
    const Scenario s = generate_scenario(ScenarioConfig{}, seed);
    FleetMobility fleet(s, seed);
    auto prev = fleet.positions();
    for (int t = 1; t <= 1000; ++t) {
      fleet.advance(1.0, {});
      const auto pos = fleet.positions();
      for (const auto& r : s.robots) {
        const auto i = static_cast<std::size_t>(r.id);
        const AreaSpec& a = s.home_of(r);
        REQUIRE(a.bounds.contains(pos[i], 1e-9));
        REQUIRE(distance(prev[i], pos[i]) <= a.speed.max * 1.0 + 1e-9);
      }
      prev = pos;
    }
  }
}

TEST_CASE("archivists cover their whole stripe within a mission") {
  for (std::uint64_t seed : {12u, 13u, 14u}) {
    ScenarioConfig cfg;
    if (seed == 13) cfg.width = cfg.height = 2000.0;
    const Scenario s = generate_scenario(cfg, seed);
    FleetMobility fleet(s, seed);
    std::vector<double> lo(s.robots.size(), INFINITY), hi(s.robots.size(), -INFINITY);
    for (int t = 0; t <= 1000; ++t) {
      if (t) fleet.advance(1.0, {});
      for (const auto& r : s.robots) {
        if (r.role != RobotRole::Archivist) continue;
        const auto i = static_cast<std::size_t>(r.id);
        const Rect& b = s.home_of(r).bounds;
        const double along = b.height() >= b.width() ? fleet.positions()[i].y : fleet.positions()[i].x;
        lo[i] = std::min(lo[i], along);
        hi[i] = std::max(hi[i], along);
      }
    }
    for (const auto& r : s.robots) {
      if (r.role != RobotRole::Archivist) continue;
      const auto i = static_cast<std::size_t>(r.id);
      const Rect& b = s.home_of(r).bounds;
      CHECK((hi[i] - lo[i]) / std::max(b.width(), b.height()) >= 0.9);
    }
  }
}

TEST_CASE("trace has one line per robot and tick") {
  ScenarioBuilder b;
  b.pinned(RobotRole::Scout, {1, 1});
  b.pinned(RobotRole::Archivist, {2, 2});
  std::ostringstream out;
  write_trace(out, b.build(), 10.0, 1);
  const std::string text = out.str();
  CHECK(std::count(text.begin(), text.end(), '\n') == 22);
  CHECK(text.rfind("10 1 2 2\n") != std::string::npos);
}
