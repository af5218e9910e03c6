#include <CLI11.hpp>
#include <iostream>

#include "latticenn/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"latticenn: localized neural-network regression for lattice data"};
  app.require_subcommand(1);
  app.fallthrough();

  latticenn::GlobalOptions opt;
  app.add_option("--config", opt.config_path, "configuration file (INI-style)");
  app.add_option("--out", opt.out_dir, "output directory");
  auto* seed_opt = app.add_option("--seed", opt.seed, "master seed (overrides config)");
  app.add_option("--jobs", opt.jobs, "worker threads");
  app.add_flag("--full-precision", opt.full_precision,
               "write full-precision numbers instead of 6 significant digits");

  using Handler = int (*)(const latticenn::RunConfig&, const latticenn::GlobalOptions&);
  struct Sub {
    const char* name;
    const char* help;
    Handler handler;
  };
  const Sub subs[] = {
      {"simulate", "sample lattice fields and write the dataset", latticenn::cmd_simulate},
      {"scenario", "run the simulation-study table", latticenn::cmd_scenario},
      {"fit", "fit the localized network at one site", latticenn::cmd_fit},
      {"ci", "subsampling confidence intervals over the design ladder", latticenn::cmd_ci},
      {"kl", "KL-divergence series over the design ladder", latticenn::cmd_kl},
      {"ingest", "validate and normalize a gridded CSV export", latticenn::cmd_ingest},
      {"fit-real", "per-radius RMSE table on ingested grids", latticenn::cmd_fit_real},
      {"dump-effective-config", "print the fully resolved configuration",
       latticenn::cmd_dump_effective_config},
  };

  Handler chosen = nullptr;
  for (const Sub& sub : subs) {
    CLI::App* s = app.add_subcommand(sub.name, sub.help);
    s->callback([&chosen, handler = sub.handler] { chosen = handler; });
  }

  CLI11_PARSE(app, argc, argv);
  opt.seed_set = seed_opt->count() > 0;

  try {
    latticenn::RunConfig cfg = opt.config_path.empty()
                                   ? latticenn::RunConfig{}
                                   : latticenn::RunConfig::parse_file(opt.config_path);
    return chosen(cfg, opt);
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 1;
  }
}
