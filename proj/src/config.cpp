#include "survsim/config.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "survsim/error.hpp"

namespace survsim {

using nlohmann::json;

namespace {

template <typename T>
void read(const json& j, const char* key, T& into) {
  if (auto it = j.find(key); it != j.end()) into = it->get<T>();
}

void read_speed(const json& j, SpeedRange& into) {
  read(j, "speed_min", into.min);
  read(j, "speed_max", into.max);
}

json speed_json(const json& base, SpeedRange s) {
  json j = base;
  j["speed_min"] = s.min;
  j["speed_max"] = s.max;
  return j;
}

}  // namespace

void validate(const ExperimentConfig& c) {
  if (c.area_presets.empty()) throw ConfigError("no area presets");
  for (const auto& p : c.area_presets)
    if (!(p.width > 0.0 && p.height > 0.0)) throw ConfigError("area preset '" + p.name + "' must have positive size");
  for (const auto& a : c.areas) find_preset(c, a);
  for (double r : c.rates)
    if (!(r >= 0.0 && r <= 1.0)) throw ConfigError("failure rates must lie in [0, 1]");
  if (!(c.tick > 0.0)) throw ConfigError("tick must be positive");
  if (!(c.timing.duration >= c.timing.warmup && c.timing.warmup >= 0.0))
    throw ConfigError("duration must cover the warm-up period");
  if (!(c.timing.clustered_window > 0.0 && c.timing.clustered_window <= 1.0))
    throw ConfigError("clustered window must lie in (0, 1]");
  if (!(c.data.period_min > 0.0 && c.data.period_min <= c.data.period_max))
    throw ConfigError("data creation period range is invalid");
  if (!(c.hello.period_min > 0.0 && c.hello.period_min <= c.hello.period_max))
    throw ConfigError("HELLO period range is invalid");
  for (double sr : c.data.survivability)
    if (!(sr >= 0.0 && sr <= 1.0)) throw ConfigError("survivability requirements must lie in [0, 1]");
  if (c.protocol.ttl_full < 1 || c.protocol.ttl_limited < 1) throw ConfigError("TTLs must be at least 1");
  if (!(c.protocol.staleness > 0.0)) throw ConfigError("staleness window must be positive");
  validate(c.radio);
}

ExperimentConfig parse_config(std::string_view text) {
  ExperimentConfig c;
  try {
    const json root = json::parse(text);
    if (!root.is_object()) throw ConfigError("configuration must be a JSON object");

    if (auto it = root.find("operation_areas"); it != root.end()) {
      c.area_presets.clear();
      for (const auto& [name, v] : it->items()) c.area_presets.push_back({name, v.at("width"), v.at("height")});
    }
    if (auto it = root.find("working_areas"); it != root.end()) {
      read(*it, "count", c.scenario.working_areas);
      read(*it, "width", c.scenario.working_width);
      read(*it, "height", c.scenario.working_height);
      read(*it, "scouts_per_area", c.scenario.scouts_per_working_area);
      read(*it, "placement_attempts", c.scenario.placement_attempts);
      read_speed(*it, c.scenario.scout_speed);
    }
    if (auto it = root.find("connecting_areas"); it != root.end()) {
      read(*it, "vertical", c.scenario.vertical_stripes);
      read(*it, "horizontal", c.scenario.horizontal_stripes);
      read(*it, "width", c.scenario.stripe_width);
      read(*it, "archivists_per_area", c.scenario.archivists_per_stripe);
      read_speed(*it, c.scenario.archivist_speed);
    }
    if (auto it = root.find("monitoring_areas"); it != root.end()) {
      read(*it, "columns", c.scenario.monitoring_columns);
      read(*it, "rows", c.scenario.monitoring_rows);
      read(*it, "supervisors_per_area", c.scenario.supervisors_per_monitoring_area);
      read_speed(*it, c.scenario.supervisor_speed);
    }
    if (auto it = root.find("failure_rates"); it != root.end()) {
      read(*it, "archivist", c.scenario.archivist_failure_rate);
      read(*it, "supervisor", c.scenario.supervisor_failure_rate);
      read(*it, "connecting_area", c.scenario.connecting_area_failure_rate);
      read(*it, "monitoring_area", c.scenario.monitoring_area_failure_rate);
    }
    if (auto it = root.find("data"); it != root.end()) {
      read(*it, "item_size", c.data.item_size);
      read(*it, "period_min", c.data.period_min);
      read(*it, "period_max", c.data.period_max);
      if (auto sr = it->find("survivability"); sr != it->end()) {
        const auto v = sr->get<std::vector<double>>();
        if (v.size() != kDataTypes) throw ConfigError("survivability needs exactly 3 entries");
        std::copy(v.begin(), v.end(), c.data.survivability.begin());
      }
    }
    if (auto it = root.find("hello"); it != root.end()) {
      read(*it, "period_min", c.hello.period_min);
      read(*it, "period_max", c.hello.period_max);
      read(*it, "size", c.hello.size);
      read(*it, "staleness", c.protocol.staleness);
      read(*it, "digest_window", c.protocol.digest_window);
    }
    if (auto it = root.find("radio"); it != root.end()) {
      read(*it, "tx_range", c.radio.tx_range);
      read(*it, "path_loss_exponent", c.radio.path_loss_exponent);
      read(*it, "shadowing_sigma_db", c.radio.shadowing_sigma_db);
      read(*it, "bandwidth_bps", c.radio.bandwidth_bps);
      read(*it, "congestion", c.radio.congestion);
    }
    if (auto it = root.find("protocol"); it != root.end()) {
      read(*it, "ttl_full", c.protocol.ttl_full);
      read(*it, "ttl_limited", c.protocol.ttl_limited);
    }
    if (auto it = root.find("mission"); it != root.end()) {
      read(*it, "duration", c.timing.duration);
      read(*it, "warmup", c.timing.warmup);
      read(*it, "clustered_window", c.timing.clustered_window);
      read(*it, "tick", c.tick);
    }
    if (auto it = root.find("experiment"); it != root.end()) {
      if (auto t = it->find("techniques"); t != it->end()) {
        c.techniques.clear();
        for (const auto& s : *t) c.techniques.push_back(parse_technique(s.get<std::string>()));
      }
      if (auto m = it->find("models"); m != it->end()) {
        c.models.clear();
        for (const auto& s : *m)
          c.models.push_back(parse_failure_model(s.is_number() ? std::to_string(s.get<int>()) : s.get<std::string>()));
      }
      read(*it, "rates", c.rates);
      read(*it, "seeds", c.seeds);
      read(*it, "areas", c.areas);
      read(*it, "workers", c.workers);
      read(*it, "output_dir", c.output_dir);
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("invalid configuration: ") + e.what());
  }
  validate(c);
  return c;
}

std::string dump_config(const ExperimentConfig& c) {
  json root;
  for (const auto& p : c.area_presets) root["operation_areas"][p.name] = {{"width", p.width}, {"height", p.height}};
  const auto& s = c.scenario;
  root["working_areas"] = speed_json({{"count", s.working_areas},
                                      {"width", s.working_width},
                                      {"height", s.working_height},
                                      {"scouts_per_area", s.scouts_per_working_area},
                                      {"placement_attempts", s.placement_attempts}},
                                     s.scout_speed);
  root["connecting_areas"] = speed_json({{"vertical", s.vertical_stripes},
                                         {"horizontal", s.horizontal_stripes},
                                         {"width", s.stripe_width},
                                         {"archivists_per_area", s.archivists_per_stripe}},
                                        s.archivist_speed);
  root["monitoring_areas"] = speed_json({{"columns", s.monitoring_columns},
                                         {"rows", s.monitoring_rows},
                                         {"supervisors_per_area", s.supervisors_per_monitoring_area}},
                                        s.supervisor_speed);
  root["failure_rates"] = {{"archivist", s.archivist_failure_rate},
                           {"supervisor", s.supervisor_failure_rate},
                           {"connecting_area", s.connecting_area_failure_rate},
                           {"monitoring_area", s.monitoring_area_failure_rate}};
  root["data"] = {{"item_size", c.data.item_size},
                  {"period_min", c.data.period_min},
                  {"period_max", c.data.period_max},
                  {"survivability", c.data.survivability}};
  root["hello"] = {{"period_min", c.hello.period_min},
                   {"period_max", c.hello.period_max},
                   {"size", c.hello.size},
                   {"staleness", c.protocol.staleness},
                   {"digest_window", c.protocol.digest_window}};
  root["radio"] = {{"tx_range", c.radio.tx_range},
                   {"path_loss_exponent", c.radio.path_loss_exponent},
                   {"shadowing_sigma_db", c.radio.shadowing_sigma_db},
                   {"bandwidth_bps", c.radio.bandwidth_bps},
                   {"congestion", c.radio.congestion}};
  root["protocol"] = {{"ttl_full", c.protocol.ttl_full}, {"ttl_limited", c.protocol.ttl_limited}};
  root["mission"] = {{"duration", c.timing.duration},
                     {"warmup", c.timing.warmup},
                     {"clustered_window", c.timing.clustered_window},
                     {"tick", c.tick}};
  json techniques = json::array();
  for (auto t : c.techniques) techniques.push_back(std::string(to_string(t)));
  json models = json::array();
  for (auto m : c.models) models.push_back(std::string(to_string(m)));
  root["experiment"] = {{"techniques", techniques}, {"models", models},   {"rates", c.rates},
                        {"seeds", c.seeds},         {"areas", c.areas},     {"workers", c.workers},
                        {"output_dir", c.output_dir}};
  return root.dump(2);
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read configuration " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

const AreaPreset& find_preset(const ExperimentConfig& config, std::string_view area) {
  for (const auto& p : config.area_presets)
    if (p.name == area) return p;
  throw ConfigError("unknown area preset '" + std::string(area) + "'");
}

ScenarioConfig scenario_config(const ExperimentConfig& config, std::string_view area, double rate) {
  ScenarioConfig s = config.scenario;
  const AreaPreset& p = find_preset(config, area);
  s.width = p.width;
  s.height = p.height;
  s.scout_failure_rate = rate;
  s.working_area_failure_rate = rate;
  return s;
}

SimulationRun make_run(const ExperimentConfig& config, const CellKey& key) {
  SimulationRun r;
  r.scenario = generate_scenario(scenario_config(config, key.area, key.rate), key.seed);
  r.protocol = config.protocol;
  r.protocol.technique = key.technique;
  r.protocol.model = key.model;
  r.rate = key.rate;
  r.timing = config.timing;
  r.schedule = build_failure_schedule(r.scenario, key.model, key.rate, key.seed, config.timing);
  r.tick = config.tick;
  r.seed = key.seed;
  r.radio = config.radio;
  r.data = config.data;
  r.hello = config.hello;
  return r;
}

}  // namespace survsim
