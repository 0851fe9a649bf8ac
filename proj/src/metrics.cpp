#include "survsim/metrics.hpp"

#include <cmath>
#include <vector>

namespace survsim {

MetricsReport compute_report(const RunHistory& history, const PerType& sr) {
  MetricsReport m;
  for (const auto& item : history.items) ++m.produced[static_cast<std::size_t>(item.data_type - 1)];

  std::vector<bool> survived(history.items.size(), false);
  for (const auto& [robot, storage] : history.census) {
    storage.for_each([&](ItemId id) {
      if (id >= history.items.size()) return;
      ++m.surviving_copies[static_cast<std::size_t>(history.items[id].data_type - 1)];
      survived[id] = true;
    });
  }
  for (std::size_t id = 0; id < survived.size(); ++id)
    if (survived[id]) ++m.surviving_distinct[static_cast<std::size_t>(history.items[id].data_type - 1)];

  double deviation = 0.0;
  for (std::size_t s = 0; s < kDataTypes; ++s) {
    if (m.produced[s] == 0) {
      m.empty_production[s] = true;
      m.sa[s] = 1.0;
      m.rf[s] = 1.0;
    } else {
      const auto produced = static_cast<double>(m.produced[s]);
      m.sa[s] = static_cast<double>(m.surviving_distinct[s]) / produced;
      m.rf[s] = static_cast<double>(m.surviving_copies[s]) / produced;
    }
    deviation += std::abs(m.sa[s] - sr[s]);
    m.crf += m.rf[s];
  }
  m.cd = 100.0 * deviation;
  return m;
}

}  // namespace survsim
