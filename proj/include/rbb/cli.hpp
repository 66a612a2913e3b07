#ifndef RBB_CLI_HPP
#define RBB_CLI_HPP

#include "rbb/engine.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace rbb::cli {

/// One solver run of a preset.
struct PresetRun {
  std::string label;
  std::vector<Preference> prefs;
  double sigma = 0.0;
};

struct ExperimentPreset {
  std::string name;
  std::string problem;
  Eigen::Index n = 0;
  Eigen::Index m = 0;
  std::vector<PresetRun> runs;
  double epsilon = 0.0;
  double delta = 0.0;
  std::string check;  // acceptance check id
};

const std::vector<ExperimentPreset>& presets();
const ExperimentPreset& find_preset(const std::string& name);

/// A fully resolved run: problem id, shape and solver configuration.
struct RunSpec {
  std::string label;  // empty for single-run invocations
  std::string problem;
  Eigen::Index n = 0;
  Eigen::Index m = 0;
  RunConfig config;
};

enum class SolutionFormat { csv, json };

struct Options {
  std::vector<RunSpec> runs;
  std::filesystem::path out_dir = ".";
  SolutionFormat format = SolutionFormat::csv;
  bool quiet = false;
  bool list_presets = false;
};

/// Thrown for invalid command lines; the message is meant for the user.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Parses the command line. Throws UsageError on bad input. Returns nullopt
/// when help was requested (the help text is written to `help_out`).
std::optional<Options> parse_args(int argc, const char* const* argv, std::string* help_out = nullptr);

/// Parses "v1,v2,..." into a vector.
Vector parse_vector(const std::string& text);

std::vector<RunSpec> expand_preset(const ExperimentPreset& preset, const RunConfig& base);

/// File names written for a run.
struct OutputFiles {
  std::filesystem::path solutions;
  std::filesystem::path summary;
  std::filesystem::path boxes;
};

OutputFiles output_files(const Options& opts, const RunSpec& spec);

/// Writes solutions, summary JSON and final boxes. All files are staged and
/// renamed into place together; on failure no output file is left behind.
OutputFiles emit_results(const RunResult& result, const RunSpec& spec, const Problem& prob, const Options& opts);

/// Renderings used by emit_results, exposed for tests.
std::string solutions_csv(const RunResult& result, const Problem& prob);
std::string solutions_json(const RunResult& result, const Problem& prob);
std::string summary_json(const RunResult& result, const RunSpec& spec);
std::string boxes_csv(const RunResult& result);

/// Full program; returns the process exit code (0 converged, 2 cap hit, 1 error).
int main(int argc, const char* const* argv);

}  // namespace rbb::cli

#endif  // RBB_CLI_HPP
