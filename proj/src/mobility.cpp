#include "survsim/mobility.hpp"

#include <cmath>
#include <ostream>

namespace survsim {

namespace {

bool vertical_stripe(const Rect& r) { return r.height() >= r.width(); }

Point uniform_point(const Rect& r, Rng& rng) { return {rng.uniform(r.x0, r.x1), rng.uniform(r.y0, r.y1)}; }

double draw_speed(SpeedRange s, Rng& rng) { return s.min < s.max ? rng.uniform(s.min, s.max) : s.min; }

// Target at the end of the stripe the archivist is heading to, with a fresh
// lateral offset inside the stripe width.
Point sweep_target(const Rect& r, int direction, Rng& rng) {
  if (vertical_stripe(r)) return {rng.uniform(r.x0, r.x1), direction > 0 ? r.y1 : r.y0};
  return {direction > 0 ? r.x1 : r.x0, rng.uniform(r.y0, r.y1)};
}

void next_leg(const RobotSpec& robot, const AreaSpec& area, RobotKinematics& k, Rng& rng) {
  if (robot.role == RobotRole::Archivist) {
    k.sweep_direction = -k.sweep_direction;
    k.waypoint = sweep_target(area.bounds, k.sweep_direction, rng);
  } else {
    k.waypoint = uniform_point(area.bounds, rng);
  }
  k.speed = draw_speed(area.speed, rng);
}

}  // namespace

RobotKinematics initial_kinematics(const RobotSpec& robot, const AreaSpec& area, Rng& rng) {
  RobotKinematics k;
  if (robot.role == RobotRole::Archivist) {
    // Start at a random end so a full pass fits in a mission at minimum speed.
    k.sweep_direction = rng.bernoulli(0.5) ? 1 : -1;
    k.position = sweep_target(area.bounds, -k.sweep_direction, rng);
    k.waypoint = sweep_target(area.bounds, k.sweep_direction, rng);
  } else {
    k.position = uniform_point(area.bounds, rng);
    k.waypoint = uniform_point(area.bounds, rng);
  }
  k.speed = draw_speed(area.speed, rng);
  return k;
}

RobotKinematics step(const RobotSpec& robot, const AreaSpec& area, const RobotKinematics& kin, double dt, Rng& rng) {
  RobotKinematics k = kin;
  double time_left = dt;
  // Zero-length legs are possible (waypoint drawn on the current position);
  // the cap keeps a degenerate area from spinning forever.
  for (int legs = 0; time_left > 0.0 && legs < 64; ++legs) {
    if (k.speed <= 0.0) break;
    const double d = distance(k.position, k.waypoint);
    const double needed = d / k.speed;
    if (needed <= time_left) {
      k.position = k.waypoint;
      time_left -= needed;
      next_leg(robot, area, k, rng);
    } else {
      const double f = k.speed * time_left / d;
      k.position.x += (k.waypoint.x - k.position.x) * f;
      k.position.y += (k.waypoint.y - k.position.y) * f;
      time_left = 0.0;
    }
  }
  k.position = area.bounds.clamp(k.position);
  return k;
}

FleetMobility::FleetMobility(const Scenario& scenario, std::uint64_t seed)
    : scenario_(&scenario), rng_(seed, "mobility") {
  kin_.reserve(scenario.robots.size());
  for (const auto& r : scenario.robots) kin_.push_back(initial_kinematics(r, scenario.home_of(r), rng_));
}

void FleetMobility::advance(double dt, const std::vector<bool>& frozen) {
  for (const auto& r : scenario_->robots) {
    const auto i = static_cast<std::size_t>(r.id);
    if (!frozen.empty() && frozen[i]) continue;
    kin_[i] = step(r, scenario_->home_of(r), kin_[i], dt, rng_);
  }
}

std::vector<Point> FleetMobility::positions() const {
  std::vector<Point> out;
  out.reserve(kin_.size());
  for (const auto& k : kin_) out.push_back(k.position);
  return out;
}

std::vector<Point> positions_at(const Scenario& scenario, double t, std::uint64_t seed, double tick) {
  FleetMobility fleet(scenario, seed);
  const std::vector<bool> none;
  const auto ticks = static_cast<long>(std::floor(t / tick + 1e-9));
  for (long i = 0; i < ticks; ++i) fleet.advance(tick, none);
  return fleet.positions();
}

void write_trace(std::ostream& out, const Scenario& scenario, double duration, std::uint64_t seed, double tick) {
  FleetMobility fleet(scenario, seed);
  const std::vector<bool> none;
  const auto ticks = static_cast<long>(std::floor(duration / tick + 1e-9));
  for (long i = 0; i <= ticks; ++i) {
    if (i > 0) fleet.advance(tick, none);
    const double t = static_cast<double>(i) * tick;
    for (const auto& r : scenario.robots) {
      const Point p = fleet.kinematics()[static_cast<std::size_t>(r.id)].position;
      out << t << ' ' << r.id << ' ' << p.x << ' ' << p.y << '\n';
    }
  }
}

}  // namespace survsim
