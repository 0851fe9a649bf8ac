#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "survsim/geometry.hpp"
#include "survsim/random.hpp"
#include "survsim/scenario.hpp"

namespace survsim {

struct RadioConfig {
  double tx_range = 250.0;           // m
  double path_loss_exponent = 3.0;
  double shadowing_sigma_db = 6.0;
  double bandwidth_bps = 11e6;
  bool congestion = true;            // false: unlimited receive budget

  /// Bytes a node can receive within one tick of the given length.
  std::int64_t node_budget(double tick) const {
    return static_cast<std::int64_t>(bandwidth_bps / 8.0 * tick);
  }
};

void validate(const RadioConfig& cfg);

struct Broadcast {
  RobotId sender = 0;
  std::uint32_t payload_size = 0;  // bytes
  double timestamp = 0.0;
};

/// Probability that a frame sent over `distance` meters is received:
/// Phi(10 n log10(R / d) / sigma), 1 at d = 0, forced to 0 beyond 2R.
double reception_probability(double distance, const RadioConfig& cfg);

/// Remaining receive budget of every node for the current tick.
class CongestionState {
 public:
  CongestionState() = default;
  CongestionState(std::size_t nodes, std::int64_t budget) { reset(nodes, budget); }

  void reset(std::size_t nodes, std::int64_t budget) { remaining_.assign(nodes, budget); }
  /// Deducts `bytes` if the node can still take them.
  bool consume(std::size_t node, std::uint32_t bytes) {
    if (remaining_[node] < static_cast<std::int64_t>(bytes)) return false;
    remaining_[node] -= bytes;
    return true;
  }
  std::int64_t remaining(std::size_t node) const { return remaining_[node]; }

 private:
  std::vector<std::int64_t> remaining_;
};

struct DeliveryStats {
  std::uint64_t receptions = 0;
  std::uint64_t shadowing_losses = 0;
  std::uint64_t congestion_drops = 0;
};

/// Independent reception draw for every alive robot other than the sender,
/// ascending robot id. Throws DeadSender if the sender is not alive.
std::vector<RobotId> deliver(const Broadcast& broadcast, std::span<const Point> positions,
                             const std::vector<bool>& alive, const RadioConfig& cfg, CongestionState& congestion,
                             Rng& rng, DeliveryStats* stats = nullptr);

/// Per-tick cache of candidate receivers (within 2R) and their reception
/// probabilities, so that each broadcast only scans its neighborhood.
class Medium {
 public:
  explicit Medium(RadioConfig cfg, double tick = 1.0) : cfg_(cfg), tick_(tick) {}

  /// Recomputes neighbor tables and refills every node's budget.
  void begin_tick(std::span<const Point> positions, const std::vector<bool>& alive);

  void deliver(RobotId sender, std::uint32_t payload_size, Rng& rng, std::vector<RobotId>& out,
               DeliveryStats& stats);

  const RadioConfig& config() const { return cfg_; }

 private:
  struct Link {
    RobotId to;
    double probability;
  };
  RadioConfig cfg_;
  double tick_;
  std::vector<std::vector<Link>> links_;
  std::vector<bool> alive_;
  CongestionState congestion_;
};

}  // namespace survsim
