#pragma once

#include <string>

#include "latticenn/config.hpp"

namespace latticenn {

// Options shared by every subcommand; CLI flags override config values.
struct GlobalOptions {
  std::string config_path;
  std::string out_dir = ".";
  std::uint64_t seed = 0;
  bool seed_set = false;
  int jobs = 0;  // 0 -> config value or 1
  bool full_precision = false;
};

int cmd_simulate(const RunConfig& cfg, const GlobalOptions& opt);
int cmd_scenario(const RunConfig& cfg, const GlobalOptions& opt);
int cmd_fit(const RunConfig& cfg, const GlobalOptions& opt);
int cmd_ci(const RunConfig& cfg, const GlobalOptions& opt);
int cmd_kl(const RunConfig& cfg, const GlobalOptions& opt);
int cmd_ingest(const RunConfig& cfg, const GlobalOptions& opt);
int cmd_fit_real(const RunConfig& cfg, const GlobalOptions& opt);
int cmd_dump_effective_config(const RunConfig& cfg, const GlobalOptions& opt);

}  // namespace latticenn
