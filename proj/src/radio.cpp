#include "survsim/radio.hpp"

#include <cmath>
#include <limits>

#include "survsim/error.hpp"

namespace survsim {

void validate(const RadioConfig& cfg) {
  if (!(cfg.tx_range > 0.0 && cfg.path_loss_exponent > 0.0 && cfg.shadowing_sigma_db > 0.0 &&
        cfg.bandwidth_bps > 0.0))
    throw ConfigError("radio parameters must be positive");
}

double reception_probability(double d, const RadioConfig& cfg) {
  if (d <= 0.0) return 1.0;
  if (d > 2.0 * cfg.tx_range) return 0.0;
  const double margin_db = 10.0 * cfg.path_loss_exponent * std::log10(cfg.tx_range / d);
  // Phi(z) = erfc(-z / sqrt(2)) / 2
  return 0.5 * std::erfc(-margin_db / cfg.shadowing_sigma_db / std::sqrt(2.0));
}

namespace {

// Shared by the free function and the cached medium. Congestion is checked
// first: a receiver whose budget is exhausted drops the frame outright.
inline bool try_receive(std::size_t to, double p, std::uint32_t size, CongestionState* congestion, Rng& rng,
                        DeliveryStats* stats) {
  if (p <= 0.0) return false;
  if (congestion && congestion->remaining(to) < static_cast<std::int64_t>(size)) {
    if (stats) ++stats->congestion_drops;
    return false;
  }
  if (!rng.bernoulli(p)) {
    if (stats) ++stats->shadowing_losses;
    return false;
  }
  if (congestion) congestion->consume(to, size);
  if (stats) ++stats->receptions;
  return true;
}

}  // namespace

std::vector<RobotId> deliver(const Broadcast& b, std::span<const Point> positions, const std::vector<bool>& alive,
                             const RadioConfig& cfg, CongestionState& congestion, Rng& rng, DeliveryStats* stats) {
  const auto s = static_cast<std::size_t>(b.sender);
  if (s >= positions.size() || !alive[s]) throw DeadSender("robot " + std::to_string(b.sender) + " cannot transmit");
  std::vector<RobotId> out;
  for (std::size_t i = 0; i < positions.size(); ++i) {
    if (i == s || !alive[i]) continue;
    const double p = reception_probability(distance(positions[s], positions[i]), cfg);
    if (try_receive(i, p, b.payload_size, cfg.congestion ? &congestion : nullptr, rng, stats))
      out.push_back(static_cast<RobotId>(i));
  }
  return out;
}

void Medium::begin_tick(std::span<const Point> positions, const std::vector<bool>& alive) {
  const std::size_t n = positions.size();
  alive_ = alive;
  links_.assign(n, {});
  const double gate = 2.0 * cfg_.tx_range;
  for (std::size_t i = 0; i < n; ++i) {
    if (!alive[i]) continue;
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!alive[j]) continue;
      const double dx = positions[i].x - positions[j].x;
      const double dy = positions[i].y - positions[j].y;
      if (std::abs(dx) > gate || std::abs(dy) > gate) continue;
      const double p = reception_probability(std::sqrt(dx * dx + dy * dy), cfg_);
      if (p <= 0.0) continue;
      links_[i].push_back({static_cast<RobotId>(j), p});
      links_[j].push_back({static_cast<RobotId>(i), p});
    }
  }
  // Rows come out in ascending id order: entries below i are appended by
  // earlier outer iterations, entries above i by iteration i itself.
  congestion_.reset(n, cfg_.congestion ? cfg_.node_budget(tick_) : std::numeric_limits<std::int64_t>::max());
}

void Medium::deliver(RobotId sender, std::uint32_t payload_size, Rng& rng, std::vector<RobotId>& out,
                     DeliveryStats& stats) {
  const auto s = static_cast<std::size_t>(sender);
  if (s >= alive_.size() || !alive_[s]) throw DeadSender("robot " + std::to_string(sender) + " cannot transmit");
  out.clear();
  for (const Link& l : links_[s]) {
    if (try_receive(static_cast<std::size_t>(l.to), l.probability, payload_size, &congestion_, rng, &stats))
      out.push_back(l.to);
  }
}

}  // namespace survsim
