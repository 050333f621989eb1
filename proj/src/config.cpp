#include "gsel/config.hpp"

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace gsel {

std::string_view Name(Command c) {
  switch (c) {
    case Command::Simulate: return "simulate";
    case Command::Sweep: return "sweep";
    case Command::Frequencies: return "frequencies";
  }
  return "?";
}

Command ParseCommand(std::string_view name) {
  if (name == "simulate") return Command::Simulate;
  if (name == "sweep") return Command::Sweep;
  if (name == "frequencies") return Command::Frequencies;
  throw ConfigError("unknown command '" + std::string(name) + "'");
}

const std::vector<std::string>& ConfigKeys() {
  static const std::vector<std::string> keys = {
      "game", "a", "b", "c", "d", "a_fixed", "step", "lo", "hi",
      "n", "m", "k", "r", "generations", "mutation_prob",
      "reps", "alpha", "mechanism", "seed", "output_dir", "workers", "cache", "init"};
  return keys;
}

namespace {

std::string Trim(std::string_view s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

bool IsKnownKey(const std::string& key) {
  const auto& keys = ConfigKeys();
  return std::find(keys.begin(), keys.end(), key) != keys.end();
}

double ToDouble(const std::string& key, const std::string& v) {
  errno = 0;
  char* end = nullptr;
  const double x = std::strtod(v.c_str(), &end);
  if (v.empty() || end != v.c_str() + v.size() || errno == ERANGE)
    throw ConfigError(key + ": expected a number, got '" + v + "'");
  return x;
}

long long ToInteger(const std::string& key, const std::string& v) {
  errno = 0;
  char* end = nullptr;
  const long long x = std::strtoll(v.c_str(), &end, 10);
  if (v.empty() || end != v.c_str() + v.size() || errno == ERANGE)
    throw ConfigError(key + ": expected an integer, got '" + v + "'");
  return x;
}

int ToInt(const std::string& key, const std::string& v) {
  const long long x = ToInteger(key, v);
  if (x < -1'000'000'000LL || x > 1'000'000'000LL) throw ConfigError(key + ": value out of range");
  return static_cast<int>(x);
}

uint64_t ToSeed(const std::string& key, const std::string& v) {
  errno = 0;
  char* end = nullptr;
  if (v.empty() || v.front() == '-') throw ConfigError(key + ": expected a non-negative integer, got '" + v + "'");
  const unsigned long long x = std::strtoull(v.c_str(), &end, 0);
  if (end != v.c_str() + v.size() || errno == ERANGE)
    throw ConfigError(key + ": expected a non-negative integer, got '" + v + "'");
  return x;
}

bool ToBool(const std::string& key, const std::string& v) {
  std::string s;
  for (char ch : v) s.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
  if (s == "1" || s == "true" || s == "on" || s == "yes") return true;
  if (s == "0" || s == "false" || s == "off" || s == "no") return false;
  throw ConfigError(key + ": expected on/off, got '" + v + "'");
}

// Wraps InvalidInput raised by domain parsers so the message names the field.
template <typename F>
auto Field(const std::string& key, F&& f) {
  try {
    return f();
  } catch (const ConfigError&) {
    throw;
  } catch (const InvalidInput& e) {
    throw ConfigError(key + ": " + e.what());
  }
}

}  // namespace

KeyValues ParseConfigText(std::string_view text, std::string_view source) {
  KeyValues kv;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string body = Trim(line);
    if (body.empty()) continue;
    const std::string where = std::string(source) + ":" + std::to_string(lineno);
    const auto eq = body.find('=');
    if (eq == std::string::npos) throw ConfigError(where + ": expected 'key = value'");
    const std::string key = Trim(std::string_view(body).substr(0, eq));
    const std::string value = Trim(std::string_view(body).substr(eq + 1));
    if (key.empty()) throw ConfigError(where + ": missing key");
    if (!IsKnownKey(key)) throw ConfigError(where + ": unknown key '" + key + "'");
    if (value.empty()) throw ConfigError(where + ": missing value for '" + key + "'");
    if (!kv.emplace(key, value).second) throw ConfigError(where + ": duplicate key '" + key + "'");
  }
  return kv;
}

KeyValues ReadConfigFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ParseConfigText(ss.str(), path);
}

RunConfig BuildConfig(Command command, const std::vector<KeyValues>& layers) {
  KeyValues kv;
  for (const auto& layer : layers)
    for (const auto& [key, value] : layer) {
      if (!IsKnownKey(key)) throw ConfigError("unknown key '" + key + "'");
      kv[key] = value;
    }

  RunConfig cfg;
  cfg.command = command;
  auto get = [&](const std::string& key) -> const std::string* {
    auto it = kv.find(key);
    return it == kv.end() ? nullptr : &it->second;
  };

  const bool sweep = command == Command::Sweep;
  const bool has_abcd = get("a") || get("b") || get("c") || get("d");
  if (sweep) {
    for (const char* key : {"game", "a", "b", "c", "d"})
      if (get(key)) throw ConfigError(std::string(key) + ": not used by sweep (use a_fixed, step, lo, hi)");
    const double a_fixed = get("a_fixed") ? ToDouble("a_fixed", *get("a_fixed")) : 0.5;
    const double step = get("step") ? ToDouble("step", *get("step")) : 0.1;
    const double lo = get("lo") ? ToDouble("lo", *get("lo")) : 0.0;
    const double hi = get("hi") ? ToDouble("hi", *get("hi")) : 1.0;
    cfg.grid = Field("step", [&] { return GridSpec::From(step, lo, hi); });
    cfg.a_fixed = Field("a_fixed", [&] { return Tenths::Parse(a_fixed); });
    if (cfg.a_fixed < cfg.grid.lo || cfg.a_fixed > cfg.grid.hi)
      throw ConfigError("a_fixed: must lie within [lo, hi]");
  } else {
    for (const char* key : {"a_fixed", "step", "lo", "hi"})
      if (get(key)) throw ConfigError(std::string(key) + ": only used by sweep");
    const std::string* game = get("game");
    if (game && *game != "custom") {
      if (has_abcd) throw ConfigError("game: a named game cannot be combined with a, b, c, d");
      cfg.named_game = Field("game", [&] { return ParseStandardGame(*game); });
      cfg.game = MakeStandardGame(*cfg.named_game);
    } else if (has_abcd) {
      for (const char* key : {"a", "b", "c", "d"})
        if (!get(key)) throw ConfigError(std::string(key) + ": custom games need all of a, b, c, d");
      cfg.game = {ToDouble("a", *get("a")), ToDouble("b", *get("b")), ToDouble("c", *get("c")),
                  ToDouble("d", *get("d"))};
    } else {
      throw ConfigError("game: required (pd, weak-chicken, strong-chicken, or a, b, c, d)");
    }
  }

  if (auto v = get("n")) cfg.params.n = ToInt("n", *v);
  if (auto v = get("m")) cfg.params.m = ToInt("m", *v);
  if (auto v = get("k")) cfg.params.k = ToInt("k", *v);
  if (auto v = get("r")) cfg.params.rounds = ToInt("r", *v);
  if (auto v = get("generations")) cfg.params.generations = ToInt("generations", *v);
  if (auto v = get("mutation_prob")) cfg.params.mutation_prob = ToDouble("mutation_prob", *v);
  try {
    cfg.params.Validate();
  } catch (const InvalidInput& e) {
    throw ConfigError(e.what());
  }

  if (auto v = get("reps")) cfg.reps = ToInt("reps", *v);
  const int min_reps = sweep ? 2 : 1;
  if (cfg.reps < min_reps) throw ConfigError("reps: must be at least " + std::to_string(min_reps));
  if (auto v = get("alpha")) cfg.alpha = ToDouble("alpha", *v);
  if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0)) throw ConfigError("alpha: must lie in (0, 1)");

  if (auto v = get("mechanism")) {
    if (*v == "both") {
      cfg.mechanisms = {Mechanism::Group, Mechanism::Individual};
    } else {
      cfg.mechanisms = {Field("mechanism", [&] { return ParseMechanism(*v); })};
    }
    if (sweep && cfg.mechanisms.size() != 2) throw ConfigError("mechanism: sweep always compares both");
  }
  if (auto v = get("seed")) cfg.master_seed = ToSeed("seed", *v);
  if (auto v = get("output_dir")) cfg.output_dir = *v;
  if (auto v = get("workers")) {
    const int w = ToInt("workers", *v);
    if (w < 0) throw ConfigError("workers: must be non-negative (0 = all cores)");
    cfg.workers = static_cast<unsigned>(w);
  }
  if (auto v = get("cache")) cfg.use_cache = ToBool("cache", *v);
  if (auto v = get("init")) {
    if (*v == "random") cfg.init = InitialPopulation::Random;
    else if (*v == "all-c") cfg.init = InitialPopulation::AllCooperate;
    else if (*v == "all-d") cfg.init = InitialPopulation::AllDefect;
    else throw ConfigError("init: expected random, all-c or all-d, got '" + *v + "'");
  }
  return cfg;
}

RunConfig LoadConfig(Command command, const std::optional<std::string>& path, const KeyValues& flags) {
  std::vector<KeyValues> layers;
  if (path) layers.push_back(ReadConfigFile(*path));
  if (const char* env = std::getenv(kOutputDirEnv); env && *env) layers.push_back({{"output_dir", env}});
  layers.push_back(flags);
  return BuildConfig(command, layers);
}

}  // namespace gsel
