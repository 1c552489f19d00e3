#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <unordered_set>
#include <vector>

#include "shepherd/evaluation.hpp"
#include "shepherd/gp.hpp"
#include "shepherd/sim_config.hpp"
#include "shepherd/terminal_set.hpp"

namespace shepherd {

// Flat key=value config files mirroring SimConfig/GpConfig field names.
// '#' starts a comment; blank lines ignored. Returns the set of keys seen.
// Unknown keys or unparseable values throw ConfigError.
std::unordered_set<std::string> apply_config_file(const std::string& path,
                                                  SimConfig& sim, GpConfig& gp);
std::unordered_set<std::string> apply_config_text(const std::string& text,
                                                  SimConfig& sim, GpConfig& gp);

std::string spawn_region_name(SpawnRegion r);
SpawnRegion parse_spawn_region(const std::string& s);
std::string seed_mode_name(SeedMode m);
SeedMode parse_seed_mode(const std::string& s);
std::string terminal_set_name(TerminalSet::Kind k);
TerminalSet::Kind parse_terminal_set(const std::string& s);

// Full snapshot of a run; re-running from a manifest reproduces the
// artifacts byte for byte.
struct RunManifest {
  std::string command;
  std::string version;
  std::uint64_t master_seed = 0;
  int workers = 0;
  SimConfig sim;
  GpConfig gp;
  TerminalSet::Kind terminals = TerminalSet::Kind::SingleDog4;
  std::vector<std::string> outputs;  // artifact file names relative to out dir
};

std::string manifest_to_json(const RunManifest& m);
RunManifest manifest_from_json(const std::string& json_text);
RunManifest load_manifest(const std::string& path);

// generations.csv: header generation,max_fitness,mean_fitness.
void write_generations_csv(std::ostream& os, const EvolutionLog& log);

// controller,scenario,n_trials,mean,std_error rows (with header).
void write_trial_reports_csv(std::ostream& os, const std::vector<TrialReport>& reports);

// JSON array of reports including the captured-count histogram.
std::string trial_reports_json(const std::vector<TrialReport>& reports);

std::string format_double(double v);  // %.12g, CSV cells

}  // namespace shepherd
