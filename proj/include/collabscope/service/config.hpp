#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "collabscope/annotate/annotator.hpp"
#include "collabscope/timeline/runs.hpp"

namespace collabscope::service {

struct BackendConfig {
  std::string kind = "mock";  // "mock" | "remote-llm"
  std::string endpoint;
  std::string model;
  std::string api_key_env = "COLLABSCOPE_API_KEY";
  double temperature = 0.7;  // used for the repeated-sample tasks
  std::optional<std::uint64_t> seed;  // defaults to the top-level seed
  int max_retries = 3;
  int backoff_ms = 250;
  double mock_jitter = 5.0;
  int batch_size = 40;
};

struct NmfConfig {
  int max_iter = 1000;
  double tol = 1e-6;
  std::optional<std::uint64_t> seed;
};

struct TsneConfig {
  double perplexity = 5.0;
  int iterations = 1000;
  double learning_rate = 100.0;
  std::optional<std::uint64_t> seed;
};

/// Everything that shapes a pipeline run. Relative paths resolve against
/// the directory of the configuration file.
struct PipelineConfig {
  BackendConfig backend;
  int smoothing_window = 3;
  timeline::RunWeighting merge_weighting = timeline::RunWeighting::Duration;
  NmfConfig nmf;
  TsneConfig tsne;
  int ena_window = 4;
  int cooccurrence_window = 1;
  std::optional<std::filesystem::path> scheme_path;
  std::string instructor = "0000";
  int workers = 4;
  std::uint64_t seed = 17;
  int role_samples = 10;
  int code_runs = 10;
  std::filesystem::path cache_dir = "cache";
  std::filesystem::path snapshot_dir = "snapshots";

  std::uint64_t backend_seed() const { return backend.seed.value_or(seed); }
  std::uint64_t nmf_seed() const { return nmf.seed.value_or(seed); }
  std::uint64_t tsne_seed() const { return tsne.seed.value_or(seed); }
  annotate::AnnotatorOptions annotator_options() const;
};

/// Throws ValidationError naming the first parameter outside its domain.
void validate_config(const PipelineConfig& config);

/// Parses a configuration document (schema_version 1). Unknown keys are
/// rejected so that typos do not silently fall back to defaults.
PipelineConfig config_from_json(const nlohmann::json& doc, const std::filesystem::path& base_dir);

PipelineConfig load_config(const std::filesystem::path& path);

/// The result-shaping parameters only: no directories, no credentials.
nlohmann::json config_to_json(const PipelineConfig& config);

}  // namespace collabscope::service
