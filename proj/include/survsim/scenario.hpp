#pragma once

#include <cstdint>
#include <iosfwd>
#include <string_view>
#include <vector>

#include "survsim/geometry.hpp"

namespace survsim {

using AreaId = std::int32_t;
using RobotId = std::int32_t;

enum class AreaKind { Working, Connecting, Monitoring };
enum class RobotRole { Scout, Archivist, Supervisor };

std::string_view to_string(AreaKind kind);
std::string_view to_string(RobotRole role);

/// Archivists and supervisors both log data on resilient storage.
inline bool is_collector(RobotRole role) { return role != RobotRole::Scout; }

struct SpeedRange {
  double min = 0.0;
  double max = 0.0;

  friend bool operator==(const SpeedRange&, const SpeedRange&) = default;
};

struct AreaSpec {
  AreaId id = 0;
  AreaKind kind = AreaKind::Working;
  Rect bounds;
  SpeedRange speed;
  double failure_rate = 0.0;

  friend bool operator==(const AreaSpec&, const AreaSpec&) = default;
};

struct RobotSpec {
  RobotId id = 0;
  RobotRole role = RobotRole::Scout;
  AreaId home_area = 0;
  double failure_rate = 0.0;

  friend bool operator==(const RobotSpec&, const RobotSpec&) = default;
};

/// Geometry and fleet of one mission. Area ids and robot ids equal their
/// index in the respective vector.
struct Scenario {
  Rect operation_bounds;
  std::vector<AreaSpec> areas;
  std::vector<RobotSpec> robots;
  std::uint64_t seed = 0;

  const AreaSpec& area(AreaId id) const;
  const AreaSpec& home_of(const RobotSpec& r) const { return area(r.home_area); }
  std::vector<AreaId> areas_of_kind(AreaKind kind) const;
  std::vector<RobotId> robots_in_area(AreaId id) const;
  std::size_t count_role(RobotRole role) const;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Parameters for one kind of sub-area.
struct ScenarioConfig {
  double width = 5000.0;
  double height = 5000.0;

  int working_areas = 33;
  double working_width = 100.0;
  double working_height = 100.0;
  int scouts_per_working_area = 3;
  SpeedRange scout_speed{1.0, 5.0};

  int vertical_stripes = 3;
  int horizontal_stripes = 3;
  double stripe_width = 50.0;
  int archivists_per_stripe = 2;
  SpeedRange archivist_speed{5.0, 10.0};

  int monitoring_columns = 2;
  int monitoring_rows = 2;
  int supervisors_per_monitoring_area = 1;
  SpeedRange supervisor_speed{10.0, 15.0};

  // rho_i per role and lambda_j per area kind
  double scout_failure_rate = 0.0;
  double archivist_failure_rate = 0.0;
  double supervisor_failure_rate = 0.0;
  double working_area_failure_rate = 0.0;
  double connecting_area_failure_rate = 0.0;
  double monitoring_area_failure_rate = 0.0;

  int placement_attempts = 10000;
};

/// Builds a scenario; a pure function of (config, seed).
Scenario generate_scenario(const ScenarioConfig& config, std::uint64_t seed);

/// The k working areas nearest to `area` by centroid distance, ties broken by
/// lower id. Throws UnknownArea for ids that are not working areas.
std::vector<AreaId> area_neighbors(const Scenario& scenario, AreaId area, std::size_t k);

/// Plain-text listing, one robot per line: id role area x y.
void write_placement(std::ostream& out, const Scenario& scenario, const std::vector<Point>& initial);

}  // namespace survsim
