#ifndef GSEL_REPORT_HPP
#define GSEL_REPORT_HPP

#include <filesystem>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gsel/config.hpp"
#include "gsel/evolution.hpp"
#include "gsel/experiments.hpp"

namespace gsel {

// Every CSV starts with a line "# gsel-<kind> v<version>".
constexpr int kSchemaVersion = 1;

class OutputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Shortest round-trippable-to-12-digits representation, stable across runs.
std::string FormatNumber(double x);

void WriteTrajectoryCsv(const std::filesystem::path& path, const std::vector<GenerationStats>& trajectory);
// Per-generation means over replications of best, worst and mean.
void WriteAggregateCsv(const std::filesystem::path& path,
                       const std::vector<std::vector<GenerationStats>>& trajectories);
void WriteSweepCsv(const std::filesystem::path& path, const SweepResult& sweep);
// One sheet per (metric, d): rows c descending, columns b ascending, codes 1/0/-1.
std::vector<std::filesystem::path> WriteHeatmaps(const std::filesystem::path& dir, const SweepResult& sweep);
void WriteRegionSummary(const std::filesystem::path& path, const std::vector<RegionAgreement>& regions);
void WriteFrequencyCsv(const std::filesystem::path& path,
                       const std::vector<std::pair<Mechanism, StrategyFrequencyTable>>& rows);

enum ExitCode { kExitOk = 0, kExitConfig = 2, kExitRuntime = 3 };

// Run a validated command, writing files under cfg.output_dir. Throws
// OutputError on IO failure.
void CmdSimulate(const RunConfig& cfg, std::ostream& log);
void CmdSweep(const RunConfig& cfg, std::ostream& log);
void CmdFrequencies(const RunConfig& cfg, std::ostream& log);

// Dispatches and maps failures to exit codes, reporting them on `err`.
int Execute(const RunConfig& cfg, std::ostream& log, std::ostream& err);

}  // namespace gsel

#endif  // GSEL_REPORT_HPP
