// Command-line front end: gsel simulate | sweep | frequencies
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "gsel/config.hpp"
#include "gsel/report.hpp"

namespace {

struct FlagSpec {
  const char* flag;
  const char* key;
  const char* help;
};

constexpr FlagSpec kFlags[] = {
    {"--game", "game", "pd, weak-chicken, strong-chicken or custom"},
    {"--a", "a", "payoff CC (custom game)"},
    {"--b", "b", "payoff DC (custom game)"},
    {"--c", "c", "payoff CD (custom game)"},
    {"--d", "d", "payoff DD (custom game)"},
    {"--a-fixed", "a_fixed", "sweep: fixed CC payoff (default 0.5)"},
    {"--step", "step", "sweep: grid step (default 0.1)"},
    {"--lo", "lo", "sweep: lower payoff bound (default 0)"},
    {"--hi", "hi", "sweep: upper payoff bound (default 1)"},
    {"-n,--n", "n", "population size (default 64)"},
    {"-m,--m", "m", "number of groups (default 8)"},
    {"-k,--k", "k", "memory length (default 3)"},
    {"-r,--rounds", "r", "rounds per match (default 200)"},
    {"--generations", "generations", "generations per run (default 1000)"},
    {"--mutation-prob", "mutation_prob", "per-offspring mutation probability (default 0.05)"},
    {"--reps", "reps", "replications per mechanism (default 100)"},
    {"--alpha", "alpha", "significance level (default 0.01)"},
    {"--mechanism", "mechanism", "group, individual or both (default both)"},
    {"--seed", "seed", "master seed (default 0)"},
    {"-o,--out", "output_dir", "output directory (default ./out)"},
    {"-j,--workers", "workers", "worker threads, 0 = all cores (default 0)"},
    {"--cache", "cache", "match payoff cache on/off (default on)"},
    {"--init", "init", "initial population: random, all-c, all-d (default random)"},
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Group vs individual selection for iterated 2x2 games"};
  app.require_subcommand(1);

  std::optional<std::string> config_path;
  gsel::KeyValues flags;
  std::optional<gsel::Command> command;

  for (gsel::Command cmd : {gsel::Command::Simulate, gsel::Command::Sweep, gsel::Command::Frequencies}) {
    const char* help = cmd == gsel::Command::Simulate ? "best/worst/mean payoff trajectories"
                       : cmd == gsel::Command::Sweep  ? "payoff-space sweep and significance heatmaps"
                                                      : "final-generation strategy bit frequencies";
    CLI::App* sub = app.add_subcommand(std::string(gsel::Name(cmd)), help);
    sub->add_option_function<std::string>("--config", [&](const std::string& p) { config_path = p; },
                                          "key = value configuration file");
    for (const auto& f : kFlags) {
      const std::string key = f.key;
      sub->add_option_function<std::string>(f.flag, [&flags, key](const std::string& v) { flags[key] = v; },
                                            f.help);
    }
    sub->callback([&command, cmd] { command = cmd; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return gsel::kExitConfig;
  }

  gsel::RunConfig cfg;
  try {
    cfg = gsel::LoadConfig(*command, config_path, flags);
  } catch (const gsel::InvalidInput& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return gsel::kExitConfig;
  }
  return gsel::Execute(cfg, std::cerr, std::cerr);
}
