#include "survsim/engine.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

#include "survsim/error.hpp"

namespace survsim {

void TransmissionLog::on_data_sent(double t, RobotId sender, const DataMessage& msg) {
  out_ << t << ' ' << sender << " data " << msg.item.data_id.producer << ':' << msg.item.data_id.sequence << ' '
       << msg.surv_remaining << ' ' << msg.ttl << '\n';
}

void TransmissionLog::on_hello_sent(double t, const HelloMessage& hello) {
  out_ << t << ' ' << hello.sender << " hello - - -\n";
}

namespace {

void validate(const SimulationRun& r) {
  if (!(r.tick > 0.0)) throw ConfigError("tick must be positive");
  if (!(r.timing.duration >= 0.0)) throw ConfigError("duration must not be negative");
  if (!(r.data.period_min > 0.0 && r.data.period_min <= r.data.period_max))
    throw ConfigError("data creation period range is invalid");
  if (!(r.hello.period_min > 0.0 && r.hello.period_min <= r.hello.period_max))
    throw ConfigError("HELLO period range is invalid");
  if (r.data.item_size == 0 || r.hello.size == 0) throw ConfigError("message sizes must be positive");
  for (double sr : r.data.survivability)
    if (!(sr >= 0.0 && sr <= 1.0)) throw ConfigError("survivability requirements must lie in [0, 1]");
  if (r.protocol.ttl_full < 1 || r.protocol.ttl_limited < 1) throw ConfigError("TTLs must be at least 1");
  validate(r.radio);
}

ViewOwner owner_of(const Scenario& s, const RobotSpec& r) {
  const AreaSpec& a = s.home_of(r);
  return {r.id, r.role, r.home_area, a.kind, r.failure_rate, a.failure_rate};
}

}  // namespace

Engine::Engine(SimulationRun run, RunObserver* observer)
    : run_(std::move(run)),
      observer_(observer),
      fleet_((validate(run_), run_.scenario), run_.seed),
      medium_(run_.radio, run_.tick),
      radio_rng_(run_.seed, "radio"),
      data_rng_(run_.seed, "data"),
      hello_rng_(run_.seed, "hello") {
  const auto n = run_.scenario.robots.size();
  alive_.assign(n, true);
  nodes_.reserve(n);
  for (const auto& r : run_.scenario.robots) nodes_.emplace_back(owner_of(run_.scenario, r), run_.protocol);

  next_creation_.assign(n, {});
  next_sequence_.assign(n, 0);
  next_hello_.assign(n, INFINITY);
  for (const auto& r : run_.scenario.robots) {
    const auto i = static_cast<std::size_t>(r.id);
    if (r.role == RobotRole::Scout) {
      for (auto& t : next_creation_[i]) t = data_rng_.uniform(run_.data.period_min, run_.data.period_max);
    } else {
      next_creation_[i].fill(INFINITY);
    }
    // Random initial phase so beacons are not synchronised.
    if (nodes_[i].beacons()) next_hello_[i] = hello_rng_.uniform(0.0, run_.hello.period_max);
  }
  total_ticks_ = static_cast<long>(std::floor(run_.timing.duration / run_.tick + 1e-9));
}

void Engine::apply_failure(std::span<const RobotId> victims) {
  std::vector<bool> next = alive_;
  for (RobotId v : victims) {
    const auto i = static_cast<std::size_t>(v);
    if (i >= next.size()) throw ConfigError("failure names unknown robot " + std::to_string(v));
    if (!next[i]) throw AlreadyDead("robot " + std::to_string(v) + " has already failed");
    next[i] = false;
  }
  alive_.swap(next);
  for (RobotId v : victims) {
    if (observer_) observer_->on_failure(now_, v);
  }
}

void Engine::create_data(RobotId scout, int type, std::vector<Transmission>& wave) {
  const auto i = static_cast<std::size_t>(scout);
  DataItem item;
  item.id = static_cast<ItemId>(items_.size());
  item.data_id = {scout, next_sequence_[i]++};
  item.data_type = type;
  item.surv_requirement = run_.data.survivability[static_cast<std::size_t>(type - 1)];
  item.created_at = now_;
  item.size = run_.data.item_size;
  items_.push_back(item);
  ++counters_.produced[static_cast<std::size_t>(type - 1)];
  if (observer_) observer_->on_created(now_, item);

  std::vector<DataMessage> out;
  nodes_[i].on_data_created(item, now_, out);
  for (auto& m : out) wave.push_back({scout, false, std::move(m), {}});
}

bool Engine::step() {
  if (tick_index_ >= total_ticks_) return false;
  ++tick_index_;
  now_ = static_cast<double>(tick_index_) * run_.tick;
  constexpr double eps = 1e-9;

  // 1. mobility
  std::vector<bool> frozen(alive_.size());
  for (std::size_t i = 0; i < alive_.size(); ++i) frozen[i] = !alive_[i];
  fleet_.advance(run_.tick, frozen);

  // 2. failures due by now
  const auto& events = run_.schedule.events;
  while (next_failure_ < events.size() && events[next_failure_].time <= now_ + eps) {
    apply_failure(events[next_failure_].victims);
    ++next_failure_;
  }

  const std::vector<Point> positions = fleet_.positions();
  if (observer_) observer_->on_tick(now_, positions, alive_);
  medium_.begin_tick(positions, alive_);

  std::vector<Transmission> wave;
  // 3. data creation
  for (const auto& r : run_.scenario.robots) {
    const auto i = static_cast<std::size_t>(r.id);
    if (!alive_[i] || r.role != RobotRole::Scout) continue;
    for (int type = 1; type <= kDataTypes; ++type) {
      double& due = next_creation_[i][static_cast<std::size_t>(type - 1)];
      while (due <= now_ + eps) {
        create_data(r.id, type, wave);
        due += data_rng_.uniform(run_.data.period_min, run_.data.period_max);
      }
    }
  }
  // 4. HELLO beacons
  for (const auto& r : run_.scenario.robots) {
    const auto i = static_cast<std::size_t>(r.id);
    if (!alive_[i]) continue;
    while (next_hello_[i] <= now_ + eps) {
      if (auto h = nodes_[i].emit_hello(now_)) wave.push_back({r.id, true, {}, std::move(*h)});
      next_hello_[i] += hello_rng_.uniform(run_.hello.period_min, run_.hello.period_max);
    }
  }
  // 5. delivery and handlers
  deliver_waves(std::move(wave));
  return true;
}

void Engine::deliver_waves(std::vector<Transmission> wave) {
  DeliveryStats stats;
  std::vector<RobotId> receivers;
  std::vector<DataMessage> out;
  while (!wave.empty()) {
    std::stable_sort(wave.begin(), wave.end(),
                     [](const Transmission& a, const Transmission& b) { return a.sender < b.sender; });
    std::vector<Transmission> next;
    for (const auto& tx : wave) {
      if (tx.is_hello) {
        ++counters_.hello_transmissions;
        if (observer_) observer_->on_hello_sent(now_, tx.hello);
      } else {
        ++counters_.data_transmissions;
        if (observer_) observer_->on_data_sent(now_, tx.sender, tx.data);
      }
      medium_.deliver(tx.sender, tx.is_hello ? run_.hello.size : tx.data.item.size, radio_rng_, receivers, stats);
      for (RobotId r : receivers) {
        out.clear();
        Node& node = nodes_[static_cast<std::size_t>(r)];
        if (tx.is_hello) {
          if (observer_) observer_->on_hello_received(now_, r, tx.hello);
          node.on_hello_received(tx.hello, now_, out);
        } else {
          if (observer_) observer_->on_data_received(now_, r, tx.sender, tx.data);
          node.on_data_received(tx.data, now_, out);
        }
        for (auto& m : out) next.push_back({r, false, std::move(m), {}});
      }
    }
    wave.swap(next);
  }
  counters_.receptions += stats.receptions;
  counters_.shadowing_losses += stats.shadowing_losses;
  counters_.congestion_drops += stats.congestion_drops;
}

RunHistory Engine::history() const {
  RunHistory h;
  h.items = items_;
  h.alive = alive_;
  h.counters = counters_;
  for (const auto& r : run_.scenario.robots) {
    const auto i = static_cast<std::size_t>(r.id);
    if (alive_[i]) h.census.emplace_back(r.id, nodes_[i].storage());
  }
  return h;
}

RunHistory Engine::run() {
  while (step()) {
  }
  return history();
}

RunHistory run(const SimulationRun& r, RunObserver* observer) { return Engine(r, observer).run(); }

}  // namespace survsim
