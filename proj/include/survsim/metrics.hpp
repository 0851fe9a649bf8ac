#pragma once

#include <array>
#include <cstdint>

#include "survsim/engine.hpp"

namespace survsim {

using PerType = std::array<double, kDataTypes>;
using PerTypeCount = std::array<std::uint64_t, kDataTypes>;

/// End-of-mission survivability and replication figures of one run.
/// Index k holds data type k + 1.
struct MetricsReport {
  PerType sa{};                  // distinct surviving / produced
  PerType rf{};                  // surviving copies / produced
  double cd = 0.0;               // sum |SA - SR|, percentage points
  double crf = 0.0;              // sum RF
  PerTypeCount produced{};
  PerTypeCount surviving_distinct{};
  PerTypeCount surviving_copies{};
  std::array<bool, kDataTypes> empty_production{};

  friend bool operator==(const MetricsReport&, const MetricsReport&) = default;
};

/// A type without production is flagged in empty_production and scored as
/// SA = RF = 1 (nothing produced, nothing lost).
MetricsReport compute_report(const RunHistory& history, const PerType& sr);

}  // namespace survsim
