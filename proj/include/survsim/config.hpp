#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "survsim/engine.hpp"
#include "survsim/failure.hpp"
#include "survsim/protocol.hpp"
#include "survsim/radio.hpp"
#include "survsim/scenario.hpp"

namespace survsim {

struct AreaPreset {
  std::string name;
  double width = 0.0;
  double height = 0.0;
};

/// Everything needed to expand and run the experiment matrix. Defaults
/// reproduce the reference setup.
struct ExperimentConfig {
  ScenarioConfig scenario;  // operation size and failure rates are set per cell
  std::vector<AreaPreset> area_presets{{"large", 5000.0, 5000.0}, {"small", 2000.0, 2000.0}};
  RadioConfig radio;
  DataGeneration data;
  HelloTiming hello;
  ProtocolParams protocol;  // technique and model are set per cell
  MissionTiming timing;
  double tick = 1.0;

  std::vector<Technique> techniques{Technique::Br, Technique::BrCBr, Technique::BrCLFl, Technique::AdLH,
                                    Technique::AdFH};
  std::vector<FailureModel> models{FailureModel::IndependentRobot, FailureModel::IndependentArea,
                                   FailureModel::ClusteredArea};
  std::vector<double> rates{0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
  std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5};
  std::vector<std::string> areas{"large", "small"};
  unsigned workers = 0;  // 0: one per hardware thread
  std::string output_dir = "out";
};

/// Environment variable consulted for the configuration path when no flag is given.
inline constexpr const char* kConfigEnvVar = "SURVSIM_CONFIG";

void validate(const ExperimentConfig& config);

/// JSON text; absent keys keep their defaults. Throws ConfigError.
ExperimentConfig parse_config(std::string_view json_text);
std::string dump_config(const ExperimentConfig& config);
ExperimentConfig load_config(const std::filesystem::path& path);

const AreaPreset& find_preset(const ExperimentConfig& config, std::string_view area);

/// Identifies one simulation of the matrix.
struct CellKey {
  Technique technique = Technique::Br;
  FailureModel model = FailureModel::IndependentRobot;
  double rate = 0.0;
  std::uint64_t seed = 0;
  std::string area = "large";

  friend bool operator==(const CellKey&, const CellKey&) = default;
};

/// Scouts get rho = rate and working areas lambda = rate; every other role and
/// area kind keeps the configured (default zero) rate.
ScenarioConfig scenario_config(const ExperimentConfig& config, std::string_view area, double rate);

/// Scenario, failure schedule and engine streams all derive from key.seed, so
/// cells differing only in technique see identical mobility and failures.
SimulationRun make_run(const ExperimentConfig& config, const CellKey& key);

}  // namespace survsim
