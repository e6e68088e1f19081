#include "collabscope/service/config.hpp"

#include <set>

#include "collabscope/util/error.hpp"
#include "collabscope/util/json_io.hpp"

namespace collabscope::service {
namespace {

using nlohmann::json;

void reject_unknown(const json& obj, std::initializer_list<std::string_view> known, std::string_view where) {
  if (!obj.is_object()) throw ValidationError(std::string(where) + " must be an object");
  const std::set<std::string_view> allowed(known);
  for (const auto& [k, _] : obj.items()) {
    if (!allowed.contains(k)) throw ValidationError("unknown configuration key '" + std::string(where) + "." + k + "'");
  }
}

template <class T>
void read(const json& obj, const char* key, T& out) {
  if (obj.contains(key)) out = obj.at(key).get<T>();
}

template <class T>
void read(const json& obj, const char* key, std::optional<T>& out) {
  if (obj.contains(key) && !obj.at(key).is_null()) out = obj.at(key).get<T>();
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  const std::filesystem::path path(p);
  return path.is_absolute() ? path : base / path;
}

}  // namespace

annotate::AnnotatorOptions PipelineConfig::annotator_options() const {
  annotate::AnnotatorOptions o;
  o.batch_size = static_cast<std::size_t>(backend.batch_size);
  o.max_attempts = backend.max_retries;
  o.backoff = std::chrono::milliseconds(backend.backoff_ms);
  o.sampling_temperature = backend.temperature;
  o.role_samples = role_samples;
  o.code_runs = code_runs;
  o.min_code_runs = std::min(5, code_runs);
  return o;
}

void validate_config(const PipelineConfig& c) {
  auto fail = [](const std::string& m) { throw ValidationError("config: " + m); };
  if (c.backend.kind != "mock" && c.backend.kind != "remote-llm") fail("backend.kind must be 'mock' or 'remote-llm'");
  if (c.backend.kind == "remote-llm" && (c.backend.endpoint.empty() || c.backend.model.empty())) {
    fail("remote-llm backend needs endpoint and model");
  }
  if (c.backend.max_retries < 1) fail("backend.max_retries must be >= 1");
  if (c.backend.backoff_ms < 0) fail("backend.backoff_ms must be >= 0");
  if (c.backend.batch_size < 1) fail("backend.batch_size must be >= 1");
  if (!(c.backend.temperature >= 0.0 && c.backend.temperature <= 2.0)) fail("backend.temperature must lie in [0, 2]");
  if (c.smoothing_window < 1 || c.smoothing_window % 2 == 0) fail("smoothing_window must be a positive odd integer");
  if (c.nmf.max_iter < 1) fail("nmf.max_iter must be >= 1");
  if (!(c.nmf.tol >= 0.0)) fail("nmf.tol must be >= 0");
  if (!(c.tsne.perplexity > 0.0)) fail("tsne.perplexity must be > 0");
  if (c.tsne.iterations < 1) fail("tsne.iterations must be >= 1");
  if (!(c.tsne.learning_rate > 0.0)) fail("tsne.learning_rate must be > 0");
  if (c.ena_window < 2) fail("ena_window must be >= 2");
  if (c.cooccurrence_window < 1) fail("cooccurrence_window must be >= 1");
  if (!corpus::is_speaker_id(c.instructor)) fail("instructor must be a 4-digit speaker id");
  if (c.workers < 1) fail("workers must be >= 1");
  if (c.role_samples < 1) fail("role_samples must be >= 1");
  if (c.code_runs < 1) fail("code_runs must be >= 1");
}

PipelineConfig config_from_json(const json& doc, const std::filesystem::path& base_dir) {
  util::require_schema_version(doc, 1, "config");
  PipelineConfig c;
  try {
    reject_unknown(doc,
                   {"schema_version", "backend", "smoothing_window", "merge_weighting", "nmf", "tsne", "ena_window",
                    "cooccurrence_window", "scheme_path", "instructor", "workers", "seed", "role_samples", "code_runs",
                    "cache_dir", "snapshot_dir"},
                   "config");
    if (doc.contains("backend")) {
      const auto& b = doc.at("backend");
      reject_unknown(b,
                     {"kind", "endpoint", "model", "api_key_env", "temperature", "seed", "max_retries", "backoff_ms",
                      "mock_jitter", "batch_size"},
                     "backend");
      read(b, "kind", c.backend.kind);
      read(b, "endpoint", c.backend.endpoint);
      read(b, "model", c.backend.model);
      read(b, "api_key_env", c.backend.api_key_env);
      read(b, "temperature", c.backend.temperature);
      read(b, "seed", c.backend.seed);
      read(b, "max_retries", c.backend.max_retries);
      read(b, "backoff_ms", c.backend.backoff_ms);
      read(b, "mock_jitter", c.backend.mock_jitter);
      read(b, "batch_size", c.backend.batch_size);
    }
    if (doc.contains("nmf")) {
      const auto& n = doc.at("nmf");
      reject_unknown(n, {"max_iter", "tol", "seed"}, "nmf");
      read(n, "max_iter", c.nmf.max_iter);
      read(n, "tol", c.nmf.tol);
      read(n, "seed", c.nmf.seed);
    }
    if (doc.contains("tsne")) {
      const auto& t = doc.at("tsne");
      reject_unknown(t, {"perplexity", "iterations", "learning_rate", "seed"}, "tsne");
      read(t, "perplexity", c.tsne.perplexity);
      read(t, "iterations", c.tsne.iterations);
      read(t, "learning_rate", c.tsne.learning_rate);
      read(t, "seed", c.tsne.seed);
    }
    read(doc, "smoothing_window", c.smoothing_window);
    if (doc.contains("merge_weighting")) {
      const auto w = doc.at("merge_weighting").get<std::string>();
      if (w == "duration") {
        c.merge_weighting = timeline::RunWeighting::Duration;
      } else if (w == "unweighted") {
        c.merge_weighting = timeline::RunWeighting::Unweighted;
      } else {
        throw ValidationError("config: merge_weighting must be 'duration' or 'unweighted'");
      }
    }
    read(doc, "ena_window", c.ena_window);
    read(doc, "cooccurrence_window", c.cooccurrence_window);
    if (doc.contains("scheme_path") && !doc.at("scheme_path").is_null()) {
      c.scheme_path = resolve(base_dir, doc.at("scheme_path").get<std::string>());
    }
    read(doc, "instructor", c.instructor);
    read(doc, "workers", c.workers);
    read(doc, "seed", c.seed);
    read(doc, "role_samples", c.role_samples);
    read(doc, "code_runs", c.code_runs);
    c.cache_dir = resolve(base_dir, doc.value("cache_dir", std::string("cache")));
    c.snapshot_dir = resolve(base_dir, doc.value("snapshot_dir", std::string("snapshots")));
  } catch (const json::exception& e) {
    throw ValidationError(std::string("config: ") + e.what());
  }
  validate_config(c);
  return c;
}

PipelineConfig load_config(const std::filesystem::path& path) {
  return config_from_json(util::read_json_file(path), std::filesystem::absolute(path).parent_path());
}

json config_to_json(const PipelineConfig& c) {
  return {{"schema_version", 1},
          {"backend",
           {{"kind", c.backend.kind},
            {"model", c.backend.model},
            {"temperature", c.backend.temperature},
            {"seed", c.backend_seed()},
            {"max_retries", c.backend.max_retries},
            {"mock_jitter", c.backend.mock_jitter},
            {"batch_size", c.backend.batch_size}}},
          {"smoothing_window", c.smoothing_window},
          {"merge_weighting", c.merge_weighting == timeline::RunWeighting::Duration ? "duration" : "unweighted"},
          {"nmf", {{"max_iter", c.nmf.max_iter}, {"tol", c.nmf.tol}, {"seed", c.nmf_seed()}}},
          {"tsne",
           {{"perplexity", c.tsne.perplexity},
            {"iterations", c.tsne.iterations},
            {"learning_rate", c.tsne.learning_rate},
            {"seed", c.tsne_seed()}}},
          {"ena_window", c.ena_window},
          {"cooccurrence_window", c.cooccurrence_window},
          {"instructor", c.instructor},
          {"seed", c.seed},
          {"role_samples", c.role_samples},
          {"code_runs", c.code_runs}};
}

}  // namespace collabscope::service
