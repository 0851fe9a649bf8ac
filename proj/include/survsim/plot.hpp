#pragma once

#include <filesystem>
#include <span>
#include <vector>

#include "survsim/harness.hpp"

namespace survsim {

/// Writes one SVG line chart per (metric, model, area): failure rate in
/// percent on x, seed-averaged CD or CRF on y, one polyline per technique.
/// Small-area CRF uses a logarithmic y axis. Returns the written paths.
/// Throws Error for empty input and IoError when the directory is unusable.
std::vector<std::filesystem::path> emit_plots(std::span<const AggregateRow> aggregates,
                                              const std::filesystem::path& output_dir);

}  // namespace survsim
