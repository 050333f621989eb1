#ifndef GSEL_CONFIG_HPP
#define GSEL_CONFIG_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gsel/evolution.hpp"
#include "gsel/games.hpp"

namespace gsel {

// Configuration problems: unreadable file, bad syntax, unknown key, invalid value.
class ConfigError : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

enum class Command { Simulate, Sweep, Frequencies };
std::string_view Name(Command c);
Command ParseCommand(std::string_view name);

enum class InitialPopulation { Random, AllCooperate, AllDefect };

constexpr const char* kOutputDirEnv = "GSEL_OUTPUT_DIR";

struct RunConfig {
  Command command = Command::Simulate;

  // simulate / frequencies
  std::optional<StandardGame> named_game;
  PayoffMatrix game;

  // sweep
  Tenths a_fixed{5};
  GridSpec grid{Tenths{1}, Tenths{0}, Tenths{10}};

  EvolutionParams params;
  int reps = 100;
  double alpha = 0.01;
  std::vector<Mechanism> mechanisms{Mechanism::Group, Mechanism::Individual};
  uint64_t master_seed = 0;
  std::string output_dir = "out";
  unsigned workers = 0;  // 0 = all cores
  bool use_cache = true;
  InitialPopulation init = InitialPopulation::Random;
};

using KeyValues = std::map<std::string, std::string>;

// Every key accepted in a config file or as a flag.
const std::vector<std::string>& ConfigKeys();

// Parses `key = value` lines; '#' starts a comment. Rejects unknown and repeated keys.
KeyValues ParseConfigText(std::string_view text, std::string_view source = "<config>");
KeyValues ReadConfigFile(const std::string& path);

// Layers are applied in order, later ones overriding earlier ones.
RunConfig BuildConfig(Command command, const std::vector<KeyValues>& layers);

// Config file, then the output-directory environment variable, then flags.
RunConfig LoadConfig(Command command, const std::optional<std::string>& path, const KeyValues& flags);

}  // namespace gsel

#endif  // GSEL_CONFIG_HPP
