#include "shepherd/config_io.hpp"

#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

#include "shepherd/version.hpp"

namespace shepherd {

namespace {

using nlohmann::json;

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& value) {
  try {
    size_t used = 0;
    double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(key + " expects a number, got '" + value + "'");
  }
}

long long to_int(const std::string& key, const std::string& value) {
  try {
    size_t used = 0;
    long long v = std::stoll(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(key + " expects an integer, got '" + value + "'");
  }
}

std::uint64_t to_u64(const std::string& key, const std::string& value) {
  try {
    size_t used = 0;
    std::uint64_t v = std::stoull(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(key + " expects an unsigned integer, got '" + value + "'");
  }
}

using Setter = std::function<void(SimConfig&, GpConfig&, const std::string& key,
                                  const std::string& value)>;

const std::unordered_map<std::string, Setter>& setters() {
  static const std::unordered_map<std::string, Setter> table = {
      {"f_a", [](SimConfig& s, GpConfig&, const std::string& k, const std::string& v) { s.f_a = to_double(k, v); }},
      {"f_r", [](SimConfig& s, GpConfig&, const std::string& k, const std::string& v) { s.f_r = to_double(k, v); }},
      {"f_d", [](SimConfig& s, GpConfig&, const std::string& k, const std::string& v) { s.f_d = to_double(k, v); }},
      {"f_f", [](SimConfig& s, GpConfig&, const std::string& k, const std::string& v) { s.f_f = to_double(k, v); }},
      {"d_s", [](SimConfig& s, GpConfig&, const std::string& k, const std::string& v) { s.d_s = to_double(k, v); }},
      {"d_d", [](SimConfig& s, GpConfig&, const std::string& k, const std::string& v) { s.d_d = to_double(k, v); }},
      {"d_f", [](SimConfig& s, GpConfig&, const std::string& k, const std::string& v) { s.d_f = to_double(k, v); }},
      {"v_s", [](SimConfig& s, GpConfig&, const std::string& k, const std::string& v) { s.v_s = to_double(k, v); }},
      {"v_d", [](SimConfig& s, GpConfig&, const std::string& k, const std::string& v) { s.v_d = to_double(k, v); }},
      {"dt", [](SimConfig& s, GpConfig&, const std::string& k, const std::string& v) { s.dt = to_double(k, v); }},
      {"steps", [](SimConfig& s, GpConfig&, const std::string& k, const std::string& v) { s.steps = static_cast<int>(to_int(k, v)); }},
      {"field_size", [](SimConfig& s, GpConfig&, const std::string& k, const std::string& v) { s.field_size = to_double(k, v); }},
      {"pen_size", [](SimConfig& s, GpConfig&, const std::string& k, const std::string& v) { s.pen_size = to_double(k, v); }},
      {"n_sheep", [](SimConfig& s, GpConfig&, const std::string& k, const std::string& v) { s.n_sheep = static_cast<int>(to_int(k, v)); }},
      {"n_dogs", [](SimConfig& s, GpConfig&, const std::string& k, const std::string& v) { s.n_dogs = static_cast<int>(to_int(k, v)); }},
      {"sheep_spawn_region", [](SimConfig& s, GpConfig&, const std::string&, const std::string& v) { s.sheep_spawn_region = parse_spawn_region(v); }},
      {"steering_offset", [](SimConfig& s, GpConfig&, const std::string& k, const std::string& v) { s.steering_offset = to_double(k, v); }},
      {"population_size", [](SimConfig&, GpConfig& g, const std::string& k, const std::string& v) { g.population_size = static_cast<int>(to_int(k, v)); }},
      {"generations", [](SimConfig&, GpConfig& g, const std::string& k, const std::string& v) { g.generations = static_cast<int>(to_int(k, v)); }},
      {"p_m", [](SimConfig&, GpConfig& g, const std::string& k, const std::string& v) { g.p_m = to_double(k, v); }},
      {"d_ramp", [](SimConfig&, GpConfig& g, const std::string& k, const std::string& v) { g.d_ramp = static_cast<int>(to_int(k, v)); }},
      {"d_max", [](SimConfig&, GpConfig& g, const std::string& k, const std::string& v) { g.d_max = static_cast<int>(to_int(k, v)); }},
      {"tournament_size", [](SimConfig&, GpConfig& g, const std::string& k, const std::string& v) { g.tournament_size = static_cast<int>(to_int(k, v)); }},
      {"fitness_sims", [](SimConfig&, GpConfig& g, const std::string& k, const std::string& v) { g.fitness_sims = static_cast<int>(to_int(k, v)); }},
      {"master_seed", [](SimConfig&, GpConfig& g, const std::string& k, const std::string& v) { g.master_seed = to_u64(k, v); }},
      {"seed_mode", [](SimConfig&, GpConfig& g, const std::string&, const std::string& v) { g.seed_mode = parse_seed_mode(v); }},
  };
  return table;
}

}  // namespace

std::unordered_set<std::string> apply_config_text(const std::string& text,
                                                  SimConfig& sim, GpConfig& gp) {
  std::unordered_set<std::string> seen;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    size_t eq = stripped.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(line_no) +
                        ": expected key=value, got '" + stripped + "'");
    std::string key = trim(stripped.substr(0, eq));
    std::string value = trim(stripped.substr(eq + 1));
    auto it = setters().find(key);
    if (it == setters().end()) throw ConfigError("unknown config key '" + key + "'");
    it->second(sim, gp, key, value);
    seen.insert(key);
  }
  return seen;
}

std::unordered_set<std::string> apply_config_file(const std::string& path,
                                                  SimConfig& sim, GpConfig& gp) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return apply_config_text(buf.str(), sim, gp);
}

std::string spawn_region_name(SpawnRegion r) {
  return r == SpawnRegion::RightHalf ? "right_half" : "lower_half";
}

SpawnRegion parse_spawn_region(const std::string& s) {
  if (s == "right_half") return SpawnRegion::RightHalf;
  if (s == "lower_half") return SpawnRegion::LowerHalf;
  throw ConfigError("sheep_spawn_region must be right_half or lower_half, got '" + s + "'");
}

std::string seed_mode_name(SeedMode m) {
  return m == SeedMode::FreshPerGeneration ? "fresh" : "fixed";
}

SeedMode parse_seed_mode(const std::string& s) {
  if (s == "fresh") return SeedMode::FreshPerGeneration;
  if (s == "fixed") return SeedMode::FixedSuite;
  throw ConfigError("seed_mode must be fresh or fixed, got '" + s + "'");
}

std::string terminal_set_name(TerminalSet::Kind k) {
  return k == TerminalSet::Kind::SingleDog4 ? "single" : "multi";
}

TerminalSet::Kind parse_terminal_set(const std::string& s) {
  if (s == "single") return TerminalSet::Kind::SingleDog4;
  if (s == "multi") return TerminalSet::Kind::MultiDog12;
  throw ConfigError("terminals must be single or multi, got '" + s + "'");
}

std::string manifest_to_json(const RunManifest& m) {
  json sim = {
      {"f_a", m.sim.f_a},
      {"f_r", m.sim.f_r},
      {"f_d", m.sim.f_d},
      {"f_f", m.sim.f_f},
      {"d_s", m.sim.d_s},
      {"d_d", m.sim.d_d},
      {"d_f", m.sim.d_f},
      {"v_s", m.sim.v_s},
      {"v_d", m.sim.v_d},
      {"dt", m.sim.dt},
      {"steps", m.sim.steps},
      {"field_size", m.sim.field_size},
      {"pen_size", m.sim.pen_size},
      {"n_sheep", m.sim.n_sheep},
      {"n_dogs", m.sim.n_dogs},
      {"sheep_spawn_region", spawn_region_name(m.sim.sheep_spawn_region)},
      {"steering_offset", m.sim.steering_offset},
  };
  json gp = {
      {"population_size", m.gp.population_size},
      {"generations", m.gp.generations},
      {"p_m", m.gp.p_m},
      {"d_ramp", m.gp.d_ramp},
      {"d_max", m.gp.d_max},
      {"tournament_size", m.gp.tournament_size},
      {"fitness_sims", m.gp.fitness_sims},
      {"master_seed", m.gp.master_seed},
      {"seed_mode", seed_mode_name(m.gp.seed_mode)},
  };
  json root = {
      {"tool", "shepherd"},
      {"version", m.version.empty() ? kVersion : m.version},
      {"command", m.command},
      {"master_seed", m.master_seed},
      {"workers", m.workers},
      {"terminals", terminal_set_name(m.terminals)},
      {"sim", sim},
      {"gp", gp},
      {"outputs", m.outputs},
  };
  return root.dump(2) + "\n";
}

RunManifest manifest_from_json(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("manifest is not valid JSON: ") + e.what());
  }
  try {
    RunManifest m;
    m.command = root.value("command", "");
    m.version = root.value("version", "");
    m.master_seed = root.at("master_seed").get<std::uint64_t>();
    m.workers = root.value("workers", 0);
    m.terminals = parse_terminal_set(root.at("terminals").get<std::string>());

    const json& sim = root.at("sim");
    m.sim.f_a = sim.at("f_a").get<double>();
    m.sim.f_r = sim.at("f_r").get<double>();
    m.sim.f_d = sim.at("f_d").get<double>();
    m.sim.f_f = sim.at("f_f").get<double>();
    m.sim.d_s = sim.at("d_s").get<double>();
    m.sim.d_d = sim.at("d_d").get<double>();
    m.sim.d_f = sim.at("d_f").get<double>();
    m.sim.v_s = sim.at("v_s").get<double>();
    m.sim.v_d = sim.at("v_d").get<double>();
    m.sim.dt = sim.at("dt").get<double>();
    m.sim.steps = sim.at("steps").get<int>();
    m.sim.field_size = sim.at("field_size").get<double>();
    m.sim.pen_size = sim.at("pen_size").get<double>();
    m.sim.n_sheep = sim.at("n_sheep").get<int>();
    m.sim.n_dogs = sim.at("n_dogs").get<int>();
    m.sim.sheep_spawn_region = parse_spawn_region(sim.at("sheep_spawn_region").get<std::string>());
    m.sim.steering_offset = sim.at("steering_offset").get<double>();

    const json& gp = root.at("gp");
    m.gp.population_size = gp.at("population_size").get<int>();
    m.gp.generations = gp.at("generations").get<int>();
    m.gp.p_m = gp.at("p_m").get<double>();
    m.gp.d_ramp = gp.at("d_ramp").get<int>();
    m.gp.d_max = gp.at("d_max").get<int>();
    m.gp.tournament_size = gp.at("tournament_size").get<int>();
    m.gp.fitness_sims = gp.at("fitness_sims").get<int>();
    m.gp.master_seed = gp.at("master_seed").get<std::uint64_t>();
    m.gp.seed_mode = parse_seed_mode(gp.at("seed_mode").get<std::string>());

    if (root.contains("outputs"))
      m.outputs = root.at("outputs").get<std::vector<std::string>>();
    return m;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("manifest missing field: ") + e.what());
  }
}

RunManifest load_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read manifest '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return manifest_from_json(buf.str());
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

void write_generations_csv(std::ostream& os, const EvolutionLog& log) {
  os << "generation,max_fitness,mean_fitness\n";
  for (const GenerationStats& g : log.generations)
    os << g.generation << ',' << format_double(g.max_fitness) << ','
       << format_double(g.mean_fitness) << '\n';
}

void write_trial_reports_csv(std::ostream& os, const std::vector<TrialReport>& reports) {
  os << "controller,scenario,n_trials,mean,std_error\n";
  for (const TrialReport& r : reports)
    os << r.controller << ',' << r.scenario << ',' << r.n_trials << ','
       << format_double(r.mean) << ',' << format_double(r.std_error) << '\n';
}

std::string trial_reports_json(const std::vector<TrialReport>& reports) {
  json arr = json::array();
  for (const TrialReport& r : reports) {
    arr.push_back({{"controller", r.controller},
                   {"scenario", r.scenario},
                   {"n_trials", r.n_trials},
                   {"mean", r.mean},
                   {"std_error", r.std_error},
                   {"histogram", r.histogram}});
  }
  return arr.dump(2) + "\n";
}

}  // namespace shepherd
