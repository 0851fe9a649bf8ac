#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "survsim/failure.hpp"
#include "survsim/mobility.hpp"
#include "survsim/protocol.hpp"
#include "survsim/radio.hpp"
#include "survsim/scenario.hpp"

namespace survsim {

struct DataGeneration {
  std::uint32_t item_size = 500;  // bytes
  double period_min = 3.0;        // per scout and data type
  double period_max = 7.0;
  std::array<double, kDataTypes> survivability{1.0, 0.75, 0.5};
};

struct HelloTiming {
  double period_min = 8.0;
  double period_max = 12.0;
  std::uint32_t size = 1000;  // bytes
};

struct SimulationRun {
  Scenario scenario;
  ProtocolParams protocol;  // technique and the failure model the robots assume
  double rate = 0.0;
  FailureSchedule schedule;
  MissionTiming timing;
  double tick = 1.0;
  std::uint64_t seed = 0;
  RadioConfig radio;
  DataGeneration data;
  HelloTiming hello;
};

struct RunCounters {
  std::array<std::uint64_t, kDataTypes> produced{};
  std::uint64_t data_transmissions = 0;
  std::uint64_t hello_transmissions = 0;
  std::uint64_t receptions = 0;
  std::uint64_t shadowing_losses = 0;
  std::uint64_t congestion_drops = 0;
};

struct RunHistory {
  std::vector<DataItem> items;                        // indexed by ItemId
  std::vector<bool> alive;                            // indexed by RobotId
  std::vector<std::pair<RobotId, ItemSet>> census;    // storage of surviving robots, ascending id
  RunCounters counters;
};

/// Hooks for tracing and for tests. Every callback carries the tick time.
class RunObserver {
 public:
  virtual ~RunObserver() = default;
  virtual void on_tick(double /*t*/, std::span<const Point> /*positions*/, const std::vector<bool>& /*alive*/) {}
  virtual void on_failure(double /*t*/, RobotId /*robot*/) {}
  virtual void on_created(double /*t*/, const DataItem& /*item*/) {}
  virtual void on_data_sent(double /*t*/, RobotId /*sender*/, const DataMessage& /*msg*/) {}
  virtual void on_hello_sent(double /*t*/, const HelloMessage& /*hello*/) {}
  virtual void on_data_received(double /*t*/, RobotId /*receiver*/, RobotId /*sender*/, const DataMessage& /*msg*/) {}
  virtual void on_hello_received(double /*t*/, RobotId /*receiver*/, const HelloMessage& /*hello*/) {}
};

/// Writes one line per transmission: t sender kind data_id surv_remaining ttl.
class TransmissionLog : public RunObserver {
 public:
  explicit TransmissionLog(std::ostream& out) : out_(out) {}
  void on_data_sent(double t, RobotId sender, const DataMessage& msg) override;
  void on_hello_sent(double t, const HelloMessage& hello) override;

 private:
  std::ostream& out_;
};

/// Tick-driven simulation of one mission. Per tick: mobility, due failures,
/// due data creations, due HELLOs, then delivery waves in robot id order
/// until no handler produces further broadcasts.
class Engine {
 public:
  explicit Engine(SimulationRun run, RunObserver* observer = nullptr);
  Engine(const Engine&) = delete;
  Engine& operator=(const Engine&) = delete;

  /// Advances one tick; returns false once the mission is over.
  bool step();
  RunHistory run();
  RunHistory history() const;

  /// Marks victims dead; throws AlreadyDead if any of them already failed.
  void apply_failure(std::span<const RobotId> victims);

  double now() const { return now_; }
  bool alive(RobotId id) const { return alive_.at(static_cast<std::size_t>(id)); }
  const Node& node(RobotId id) const { return nodes_.at(static_cast<std::size_t>(id)); }
  std::span<const RobotKinematics> kinematics() const { return fleet_.kinematics(); }
  const RunCounters& counters() const { return counters_; }

 private:
  struct Transmission {
    RobotId sender;
    bool is_hello;
    DataMessage data;
    HelloMessage hello;
  };

  void create_data(RobotId scout, int type, std::vector<Transmission>& wave);
  void deliver_waves(std::vector<Transmission> wave);

  SimulationRun run_;
  RunObserver* observer_;
  FleetMobility fleet_;
  Medium medium_;
  Rng radio_rng_;
  Rng data_rng_;
  Rng hello_rng_;
  std::vector<Node> nodes_;
  std::vector<bool> alive_;
  std::vector<std::array<double, kDataTypes>> next_creation_;
  std::vector<std::uint32_t> next_sequence_;
  std::vector<double> next_hello_;
  std::size_t next_failure_ = 0;
  std::vector<DataItem> items_;
  RunCounters counters_;
  long tick_index_ = 0;
  long total_ticks_ = 0;
  double now_ = 0.0;
};

RunHistory run(const SimulationRun& run, RunObserver* observer = nullptr);

}  // namespace survsim
