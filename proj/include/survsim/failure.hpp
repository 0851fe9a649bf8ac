#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string_view>
#include <vector>

#include "survsim/item_set.hpp"
#include "survsim/scenario.hpp"

namespace survsim {

enum class FailureModel { IndependentRobot = 1, IndependentArea = 2, ClusteredArea = 3 };

std::string_view to_string(FailureModel model);
FailureModel parse_failure_model(std::string_view text);

struct FailureEvent {
  double time = 0.0;
  std::vector<RobotId> victims;  // ascending

  friend bool operator==(const FailureEvent&, const FailureEvent&) = default;
};

struct FailureSchedule {
  FailureModel model = FailureModel::IndependentRobot;
  double rate = 0.0;
  std::vector<FailureEvent> events;  // ascending time

  std::size_t victim_count() const;

  friend bool operator==(const FailureSchedule&, const FailureSchedule&) = default;
};

struct MissionTiming {
  double duration = 1000.0;
  double warmup = 100.0;
  double clustered_window = 0.3;  // clustered failures strike in the last fraction of the run
};

/// round(p * n) with halves rounded up.
std::size_t failure_count(double rate, std::size_t n);

/// Only scouts are ever scheduled. Throws ConfigError for rates outside [0, 1].
FailureSchedule build_failure_schedule(const Scenario& scenario, FailureModel model, double rate, std::uint64_t seed,
                                       const MissionTiming& timing = {});

/// Text form: a header line "model rate", then one event per line "time id id ...".
void write_schedule(std::ostream& out, const FailureSchedule& schedule);
FailureSchedule read_schedule(std::istream& in);

/// What a HELLO tells a robot about one of its neighbors.
struct NeighborRecord {
  RobotId id = 0;
  RobotRole role = RobotRole::Scout;
  AreaId home_area = 0;
  AreaKind area_kind = AreaKind::Working;
  double failure_rate = 0.0;       // rho of the neighbor's role
  double area_failure_rate = 0.0;  // lambda of the neighbor's area kind
  std::shared_ptr<const RepoDigest> digest;
  double last_hello = 0.0;
};

struct ViewOwner {
  RobotId id = 0;
  RobotRole role = RobotRole::Scout;
  AreaId home_area = 0;
  AreaKind area_kind = AreaKind::Working;
  double failure_rate = 0.0;
  double area_failure_rate = 0.0;
};

/// One-hop neighborhood as learnt from HELLO beacons.
class NeighborhoodView {
 public:
  NeighborhoodView() = default;
  explicit NeighborhoodView(ViewOwner owner) : owner_(owner) {}

  /// Inserts or refreshes a record; records about the owner are ignored.
  void update(NeighborRecord record);
  /// Drops records whose last HELLO is older than `window` seconds.
  void expire(double now, double window);

  const ViewOwner& owner() const { return owner_; }
  const std::vector<NeighborRecord>& neighbors() const { return records_; }
  bool empty() const { return records_.empty(); }
  std::size_t size() const { return records_.size(); }

 private:
  ViewOwner owner_;
  std::vector<NeighborRecord> records_;  // ascending id
};

/// Probability that the whole one-hop neighborhood fails under `model`.
/// With no neighbors only the owner's own rate is used.
double failure_probability(FailureModel model, const NeighborhoodView& view);

}  // namespace survsim
