#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "survsim/geometry.hpp"
#include "survsim/random.hpp"
#include "survsim/scenario.hpp"

namespace survsim {

/// Modified random waypoint state. Scouts and supervisors wander between
/// uniform waypoints in their area; archivists sweep end to end along their
/// stripe from a random end, picking a fresh lateral offset and speed on every
/// pass.
struct RobotKinematics {
  Point position;
  Point waypoint;
  double speed = 0.0;
  int sweep_direction = 1;  // archivists only: +1 towards the far end of the long axis

  friend bool operator==(const RobotKinematics&, const RobotKinematics&) = default;
};

RobotKinematics initial_kinematics(const RobotSpec& robot, const AreaSpec& area, Rng& rng);

/// Advances one robot by dt seconds. The result stays inside the area bounds.
RobotKinematics step(const RobotSpec& robot, const AreaSpec& area, const RobotKinematics& kin, double dt, Rng& rng);

/// Mobility of a whole fleet driven by a single named stream. Robots are
/// advanced in id order; frozen robots (failed ones) consume no draws.
class FleetMobility {
 public:
  FleetMobility(const Scenario& scenario, std::uint64_t seed);

  void advance(double dt, const std::vector<bool>& frozen);
  const std::vector<RobotKinematics>& kinematics() const { return kin_; }
  std::vector<Point> positions() const;

 private:
  const Scenario* scenario_;
  Rng rng_;
  std::vector<RobotKinematics> kin_;
};

/// Positions at time t obtained by stepping from t = 0 at the given tick.
std::vector<Point> positions_at(const Scenario& scenario, double t, std::uint64_t seed, double tick = 1.0);

/// One line per (t, robot_id, x, y) for every tick in [0, duration].
void write_trace(std::ostream& out, const Scenario& scenario, double duration, std::uint64_t seed, double tick = 1.0);

}  // namespace survsim
