#include "survsim/scenario.hpp"

#include <algorithm>
#include <ostream>
#include <string>

#include "survsim/error.hpp"
#include "survsim/random.hpp"

namespace survsim {

std::string_view to_string(AreaKind kind) {
  switch (kind) {
    case AreaKind::Working: return "working";
    case AreaKind::Connecting: return "connecting";
    case AreaKind::Monitoring: return "monitoring";
  }
  return "?";
}

std::string_view to_string(RobotRole role) {
  switch (role) {
    case RobotRole::Scout: return "scout";
    case RobotRole::Archivist: return "archivist";
    case RobotRole::Supervisor: return "supervisor";
  }
  return "?";
}

const AreaSpec& Scenario::area(AreaId id) const {
  if (id < 0 || static_cast<std::size_t>(id) >= areas.size())
    throw UnknownArea("unknown area id " + std::to_string(id));
  return areas[static_cast<std::size_t>(id)];
}

std::vector<AreaId> Scenario::areas_of_kind(AreaKind kind) const {
  std::vector<AreaId> out;
  for (const auto& a : areas)
    if (a.kind == kind) out.push_back(a.id);
  return out;
}

std::vector<RobotId> Scenario::robots_in_area(AreaId id) const {
  std::vector<RobotId> out;
  for (const auto& r : robots)
    if (r.home_area == id) out.push_back(r.id);
  return out;
}

std::size_t Scenario::count_role(RobotRole role) const {
  return static_cast<std::size_t>(
      std::count_if(robots.begin(), robots.end(), [role](const RobotSpec& r) { return r.role == role; }));
}

namespace {

void validate(const ScenarioConfig& c) {
  auto positive = [](double v, const char* what) {
    if (!(v > 0.0)) throw ConfigError(std::string(what) + " must be positive");
  };
  auto non_negative = [](int v, const char* what) {
    if (v < 0) throw ConfigError(std::string(what) + " must not be negative");
  };
  auto rate = [](double v, const char* what) {
    if (!(v >= 0.0 && v <= 1.0)) throw ConfigError(std::string(what) + " must lie in [0, 1]");
  };
  auto speed = [](SpeedRange s, const char* what) {
    if (!(s.min >= 0.0 && s.min <= s.max)) throw ConfigError(std::string(what) + " speed range is invalid");
  };
  positive(c.width, "operation width");
  positive(c.height, "operation height");
  non_negative(c.working_areas, "working area count");
  non_negative(c.scouts_per_working_area, "scouts per working area");
  non_negative(c.vertical_stripes, "vertical stripe count");
  non_negative(c.horizontal_stripes, "horizontal stripe count");
  non_negative(c.archivists_per_stripe, "archivists per stripe");
  non_negative(c.supervisors_per_monitoring_area, "supervisors per monitoring area");
  if (c.working_areas > 0) {
    positive(c.working_width, "working area width");
    positive(c.working_height, "working area height");
    if (c.working_width > c.width || c.working_height > c.height)
      throw ConfigError("working area larger than the operation area");
  }
  if (c.vertical_stripes + c.horizontal_stripes > 0) {
    positive(c.stripe_width, "stripe width");
  }
  if (c.monitoring_columns < 1 || c.monitoring_rows < 1) throw ConfigError("monitoring grid must be at least 1x1");
  if (c.placement_attempts < 1) throw ConfigError("placement attempts must be positive");
  speed(c.scout_speed, "scout");
  speed(c.archivist_speed, "archivist");
  speed(c.supervisor_speed, "supervisor");
  rate(c.scout_failure_rate, "scout failure rate");
  rate(c.archivist_failure_rate, "archivist failure rate");
  rate(c.supervisor_failure_rate, "supervisor failure rate");
  rate(c.working_area_failure_rate, "working area failure rate");
  rate(c.connecting_area_failure_rate, "connecting area failure rate");
  rate(c.monitoring_area_failure_rate, "monitoring area failure rate");
}

}  // namespace

Scenario generate_scenario(const ScenarioConfig& c, std::uint64_t seed) {
  validate(c);
  Scenario s;
  s.seed = seed;
  s.operation_bounds = Rect{0.0, 0.0, c.width, c.height};
  Rng rng(seed, "scenario");

  // Working areas: rejection sampling against already placed ones.
  for (int i = 0; i < c.working_areas; ++i) {
    bool placed = false;
    for (int attempt = 0; attempt < c.placement_attempts && !placed; ++attempt) {
      const double x0 = rng.uniform(0.0, c.width - c.working_width);
      const double y0 = rng.uniform(0.0, c.height - c.working_height);
      const Rect candidate{x0, y0, x0 + c.working_width, y0 + c.working_height};
      const bool clash = std::any_of(s.areas.begin(), s.areas.end(),
                                     [&](const AreaSpec& a) { return a.bounds.overlaps(candidate); });
      if (!clash) {
        s.areas.push_back({static_cast<AreaId>(s.areas.size()), AreaKind::Working, candidate, c.scout_speed,
                           c.working_area_failure_rate});
        placed = true;
      }
    }
    if (!placed)
      throw PlacementFailure("could not place working area " + std::to_string(i) + " without overlap after " +
                             std::to_string(c.placement_attempts) + " attempts");
  }

  // Connecting stripes, evenly spaced over the full length/width.
  const double half = c.stripe_width / 2.0;
  for (int i = 0; i < c.vertical_stripes; ++i) {
    const double cx = c.width * (i + 1) / (c.vertical_stripes + 1);
    s.areas.push_back({static_cast<AreaId>(s.areas.size()), AreaKind::Connecting,
                       Rect{std::max(0.0, cx - half), 0.0, std::min(c.width, cx + half), c.height},
                       c.archivist_speed, c.connecting_area_failure_rate});
  }
  for (int i = 0; i < c.horizontal_stripes; ++i) {
    const double cy = c.height * (i + 1) / (c.horizontal_stripes + 1);
    s.areas.push_back({static_cast<AreaId>(s.areas.size()), AreaKind::Connecting,
                       Rect{0.0, std::max(0.0, cy - half), c.width, std::min(c.height, cy + half)},
                       c.archivist_speed, c.connecting_area_failure_rate});
  }

  // Monitoring areas partition the operation area into an equal grid.
  const double mw = c.width / c.monitoring_columns;
  const double mh = c.height / c.monitoring_rows;
  for (int row = 0; row < c.monitoring_rows; ++row) {
    for (int col = 0; col < c.monitoring_columns; ++col) {
      s.areas.push_back({static_cast<AreaId>(s.areas.size()), AreaKind::Monitoring,
                         Rect{col * mw, row * mh, (col + 1) * mw, (row + 1) * mh}, c.supervisor_speed,
                         c.monitoring_area_failure_rate});
    }
  }

  // Robots: scouts by area index, then archivists, then supervisors.
  auto add_robots = [&](AreaKind kind, RobotRole role, int per_area, double rate) {
    for (const auto& a : s.areas) {
      if (a.kind != kind) continue;
      for (int k = 0; k < per_area; ++k) s.robots.push_back({static_cast<RobotId>(s.robots.size()), role, a.id, rate});
    }
  };
  add_robots(AreaKind::Working, RobotRole::Scout, c.scouts_per_working_area, c.scout_failure_rate);
  add_robots(AreaKind::Connecting, RobotRole::Archivist, c.archivists_per_stripe, c.archivist_failure_rate);
  add_robots(AreaKind::Monitoring, RobotRole::Supervisor, c.supervisors_per_monitoring_area,
             c.supervisor_failure_rate);
  return s;
}

std::vector<AreaId> area_neighbors(const Scenario& scenario, AreaId area, std::size_t k) {
  const AreaSpec& origin = scenario.area(area);
  if (origin.kind != AreaKind::Working)
    throw UnknownArea("area " + std::to_string(area) + " is not a working area");

  struct Candidate {
    double dist;
    AreaId id;
  };
  std::vector<Candidate> candidates;
  const Point c = origin.bounds.center();
  for (const auto& a : scenario.areas) {
    if (a.kind != AreaKind::Working || a.id == area) continue;
    candidates.push_back({distance(c, a.bounds.center()), a.id});
  }
  std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
    return a.dist != b.dist ? a.dist < b.dist : a.id < b.id;
  });
  if (k > candidates.size()) k = candidates.size();
  std::vector<AreaId> out;
  out.reserve(k);
  for (std::size_t i = 0; i < k; ++i) out.push_back(candidates[i].id);
  return out;
}

void write_placement(std::ostream& out, const Scenario& scenario, const std::vector<Point>& initial) {
  out << "# id role area x y\n";
  for (const auto& r : scenario.robots) {
    const Point p = initial.at(static_cast<std::size_t>(r.id));
    out << r.id << ' ' << to_string(r.role) << ' ' << r.home_area << ' ' << p.x << ' ' << p.y << '\n';
  }
}

}  // namespace survsim
