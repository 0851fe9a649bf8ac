#include "survsim/failure.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <iomanip>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <string>

#include "survsim/error.hpp"
#include "survsim/random.hpp"

namespace survsim {

std::string_view to_string(FailureModel model) {
  switch (model) {
    case FailureModel::IndependentRobot: return "robot";
    case FailureModel::IndependentArea: return "area";
    case FailureModel::ClusteredArea: return "clustered";
  }
  return "?";
}

FailureModel parse_failure_model(std::string_view text) {
  if (text == "robot" || text == "1") return FailureModel::IndependentRobot;
  if (text == "area" || text == "2") return FailureModel::IndependentArea;
  if (text == "clustered" || text == "3") return FailureModel::ClusteredArea;
  throw ConfigError("unknown failure model '" + std::string(text) + "'");
}

std::size_t FailureSchedule::victim_count() const {
  std::size_t n = 0;
  for (const auto& e : events) n += e.victims.size();
  return n;
}

std::size_t failure_count(double rate, std::size_t n) {
  // The epsilon absorbs representation error such as 0.1 * 5 = 0.5000000000000001
  // or 0.3 * 33 = 9.899999999999999.
  return static_cast<std::size_t>(std::floor(rate * static_cast<double>(n) + 0.5 + 1e-9));
}

namespace {

// First k elements of a uniform random permutation of `pool`.
template <typename T>
std::vector<T> choose(std::vector<T> pool, std::size_t k, Rng& rng) {
  k = std::min(k, pool.size());
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.below(pool.size() - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(k);
  return pool;
}

std::vector<RobotId> scouts_of(const Scenario& s, AreaId area) {
  std::vector<RobotId> out;
  for (const auto& r : s.robots)
    if (r.home_area == area && r.role == RobotRole::Scout) out.push_back(r.id);
  return out;
}

}  // namespace

FailureSchedule build_failure_schedule(const Scenario& scenario, FailureModel model, double rate, std::uint64_t seed,
                                       const MissionTiming& timing) {
  if (!(rate >= 0.0 && rate <= 1.0)) throw ConfigError("failure rate must lie in [0, 1]");
  if (!(timing.duration >= timing.warmup && timing.warmup >= 0.0)) throw ConfigError("duration must cover warm-up");

  FailureSchedule schedule;
  schedule.model = model;
  schedule.rate = rate;
  Rng rng(seed, "failures");

  std::vector<RobotId> scouts;
  for (const auto& r : scenario.robots)
    if (r.role == RobotRole::Scout) scouts.push_back(r.id);
  const std::vector<AreaId> working = scenario.areas_of_kind(AreaKind::Working);

  switch (model) {
    case FailureModel::IndependentRobot: {
      for (RobotId id : choose(scouts, failure_count(rate, scouts.size()), rng))
        schedule.events.push_back({rng.uniform(timing.warmup, timing.duration), {id}});
      break;
    }
    case FailureModel::IndependentArea: {
      for (AreaId a : choose(working, failure_count(rate, working.size()), rng)) {
        const double t = rng.uniform(timing.warmup, timing.duration);
        auto victims = scouts_of(scenario, a);
        if (!victims.empty()) schedule.events.push_back({t, std::move(victims)});
      }
      break;
    }
    case FailureModel::ClusteredArea: {
      const std::size_t k = failure_count(rate, working.size());
      if (k == 0) break;
      const AreaId origin = working[static_cast<std::size_t>(rng.below(working.size()))];
      std::vector<AreaId> hit = area_neighbors(scenario, origin, k - 1);
      hit.push_back(origin);
      const double start = timing.duration * (1.0 - timing.clustered_window);
      const double t = rng.uniform(std::max(start, timing.warmup), timing.duration);
      FailureEvent event{t, {}};
      for (AreaId a : hit) {
        auto v = scouts_of(scenario, a);
        event.victims.insert(event.victims.end(), v.begin(), v.end());
      }
      std::sort(event.victims.begin(), event.victims.end());
      if (!event.victims.empty()) schedule.events.push_back(std::move(event));
      break;
    }
  }
  std::stable_sort(schedule.events.begin(), schedule.events.end(),
                   [](const FailureEvent& a, const FailureEvent& b) { return a.time < b.time; });
  return schedule;
}

void write_schedule(std::ostream& out, const FailureSchedule& schedule) {
  out << to_string(schedule.model) << ' ' << std::setprecision(17) << schedule.rate << '\n';
  for (const auto& e : schedule.events) {
    out << std::setprecision(17) << e.time;
    for (RobotId v : e.victims) out << ' ' << v;
    out << '\n';
  }
}

FailureSchedule read_schedule(std::istream& in) {
  FailureSchedule schedule;
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("empty failure schedule");
  {
    std::istringstream header(line);
    std::string model;
    if (!(header >> model >> schedule.rate)) throw ConfigError("malformed failure schedule header");
    schedule.model = parse_failure_model(model);
  }
  std::set<RobotId> seen;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream row(line);
    FailureEvent e;
    if (!(row >> e.time)) throw ConfigError("malformed failure event: " + line);
    RobotId id;
    while (row >> id) {
      if (!seen.insert(id).second) throw ConfigError("robot " + std::to_string(id) + " fails twice");
      e.victims.push_back(id);
    }
    if (!row.eof()) throw ConfigError("malformed failure event: " + line);
    schedule.events.push_back(std::move(e));
  }
  return schedule;
}

void NeighborhoodView::update(NeighborRecord record) {
  if (record.id == owner_.id) return;
  auto it = std::lower_bound(records_.begin(), records_.end(), record.id,
                             [](const NeighborRecord& r, RobotId id) { return r.id < id; });
  if (it != records_.end() && it->id == record.id)
    *it = std::move(record);
  else
    records_.insert(it, std::move(record));
}

void NeighborhoodView::expire(double now, double window) {
  std::erase_if(records_, [&](const NeighborRecord& r) { return now - r.last_hello > window; });
}

double failure_probability(FailureModel model, const NeighborhoodView& view) {
  const auto& n = view.neighbors();
  if (n.empty()) {
    return model == FailureModel::IndependentRobot ? view.owner().failure_rate : view.owner().area_failure_rate;
  }
  double fp = 1.0;
  switch (model) {
    case FailureModel::IndependentRobot:
      // prod_i rho_i^{a_i}: one factor per neighboring robot.
      for (const auto& r : n) fp *= r.failure_rate;
      break;
    case FailureModel::IndependentArea: {
      // prod_j lambda_j^{b_j}: one factor per distinct neighboring area.
      std::map<AreaId, double> areas;
      for (const auto& r : n) areas.emplace(r.home_area, r.area_failure_rate);
      for (const auto& [id, lambda] : areas) fp *= lambda;
      break;
    }
    case FailureModel::ClusteredArea: {
      // prod_j lambda_j: one factor per distinct area kind.
      std::map<AreaKind, double> kinds;
      for (const auto& r : n) kinds.emplace(r.area_kind, r.area_failure_rate);
      for (const auto& [kind, lambda] : kinds) fp *= lambda;
      break;
    }
  }
  return fp;
}

}  // namespace survsim
