#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "gapphaz/gamma_process.hpp"
#include "gapphaz/hazard_models.hpp"
#include "gapphaz/hyper_params.hpp"
#include "gapphaz/validation.hpp"

namespace gapphaz::cli {

using json = nlohmann::json;

struct GridSpec {
  double tmax = 5.0;
  std::size_t points = 501;
};

/// Settings for scalar parameters drawn from their priors instead of
/// being given explicitly.
struct PriorSpec {
  double nu = 1.0;
  bool pi_uniform = false;
};

/**
 * Everything a command needs, resolved from (in decreasing precedence)
 * command-line flags, the JSON config file, and the built-in demo values.
 */
struct RunConfig {
  ModelKind model = ModelKind::ifr;
  std::uint64_t seed = 0;
  std::vector<GaPPParams> gapp;          // one per draw the model needs
  std::vector<std::string> draw_files;   // optional: load draws instead of sampling
  std::optional<double> lambda0, lambda01, lambda02, a, pi, w0;
  std::optional<PriorSpec> prior;
  std::size_t n = 1000;
  std::optional<double> tau;
  GridSpec grid;
};

/// Flag values; unset fields fall through to the config file.
struct Overrides {
  std::optional<std::string> model;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> n;
  std::optional<double> tau;
  std::optional<double> tmax;
  std::optional<std::size_t> points;
};

/// Builds a config from an optional JSON document and flag overrides.
/// Unknown keys and model/parameter mismatches raise ConfigError.
RunConfig resolve_config(const std::optional<json>& file, const Overrides& flags);

/// The config as JSON; feeding it back through resolve_config reproduces it.
json config_to_json(const RunConfig& cfg);

/// The Gamma Process draws for the configured model (sampled or loaded).
std::vector<GammaProcessDraw> make_draws(const RunConfig& cfg);

/// The fully specified model: draws plus scalar parameters.
HazardModel make_model(const RunConfig& cfg);

/// One file a command produces.
struct OutputFile {
  std::string path;
  std::string content;
};

/// What a command produces. Files are written (or, for an empty path,
/// printed) by the caller, so runs can be compared in memory.
struct CommandOutput {
  std::vector<OutputFile> files;
  std::string stdout_text;
  int exit_code = 0;
};

/// Sidecar path holding the resolved config for an output file.
std::string sidecar_path(const std::string& out);

CommandOutput cmd_draw(const RunConfig& cfg, const std::string& out);
CommandOutput cmd_curves(const RunConfig& cfg, const std::string& out);
CommandOutput cmd_simulate(const RunConfig& cfg, const std::string& out);
CommandOutput cmd_loglik(const std::string& model_file, const std::string& data_file, std::optional<double> tau,
                         bool per_record, const std::string& out);
CommandOutput cmd_km(const std::string& data_file, const std::string& out);
CommandOutput cmd_validate(std::uint64_t seed, double tolerance_scale);

/// Runs every command twice in memory (plus a sidecar replay of simulate)
/// for each model and counts runs whose outputs differ.
validation::CheckResult check_determinism(const validation::Options& opt);

/// Writes files to disk; files with an empty path go to stdout.
void emit(const CommandOutput& result);

/// Entry point shared by the executable and the tests. Returns the exit code:
/// 0 success, 1 failed validation, 2 bad configuration or input, 3 I/O failure.
int run(int argc, const char* const* argv);

}  // namespace gapphaz::cli
