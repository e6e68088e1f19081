// Command-line entry point: ingest, annotate, compute, run, serve, export.
#include <csignal>
#include <filesystem>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "collabscope/annotate/cache.hpp"
#include "collabscope/annotate/prompts.hpp"
#include "collabscope/service/api.hpp"
#include "collabscope/service/config.hpp"
#include "collabscope/service/export.hpp"
#include "collabscope/service/pipeline.hpp"
#include "collabscope/service/server.hpp"
#include "collabscope/util/error.hpp"

namespace fs = std::filesystem;
using namespace collabscope;
using nlohmann::json;

namespace {

constexpr int kExitValidation = 1;
constexpr int kExitBackend = 2;

service::ApiServer* g_server = nullptr;

service::PipelineConfig config_for(const std::optional<fs::path>& path) {
  if (path) return service::load_config(*path);
  service::PipelineConfig c;
  service::validate_config(c);
  return c;
}

json errors_json(const std::vector<service::PipelineError>& errors) {
  json out = json::array();
  for (const auto& e : errors) out.push_back({{"group_id", e.group_id}, {"stage", e.stage}, {"message", e.message}});
  return out;
}

/// Exit status after a snapshot was produced: backend failure when no group
/// could be annotated at all.
int pipeline_status(const corpus::Cohort& cohort, const std::vector<service::PipelineError>& errors) {
  std::size_t failed = 0;
  for (const auto& e : errors) {
    if (e.stage == "annotate") ++failed;
  }
  return failed == cohort.sessions.size() ? kExitBackend : 0;
}

int run_pipeline_verb(const fs::path& sessions, const service::PipelineConfig& config, bool cache_only) {
  const auto cohort = service::ingest(sessions, config);
  std::unique_ptr<annotate::ChatBackend> backend = service::make_backend(config);
  if (cache_only) backend = std::make_unique<annotate::OfflineBackend>(backend->fingerprint());
  const auto result = service::run_pipeline(sessions, config, backend.get());
  std::cout << json{{"snapshot_id", result.snapshot_id},
                    {"snapshot_dir", result.snapshot_dir.string()},
                    {"cache_hits", result.cache_hits},
                    {"backend_calls", result.backend_calls},
                    {"errors", errors_json(result.errors)}}
                   .dump(2)
            << '\n';
  return pipeline_status(cohort, result.errors);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Collaborative problem-solving analytics pipeline and API server"};
  app.require_subcommand(1);

  std::optional<fs::path> config_path;
  fs::path sessions;
  auto add_common = [&](CLI::App* sub, bool needs_sessions) {
    sub->add_option("--config", config_path, "Pipeline configuration (JSON)")->check(CLI::ExistingFile);
    if (needs_sessions) sub->add_option("--sessions", sessions, "Cohort directory")->required()->check(CLI::ExistingDirectory);
  };

  auto* ingest = app.add_subcommand("ingest", "Validate the cohort and print a summary");
  add_common(ingest, true);
  auto* annotate_cmd = app.add_subcommand("annotate", "Annotate every question through the cache");
  add_common(annotate_cmd, true);
  auto* compute = app.add_subcommand("compute", "Build a snapshot from cached annotations only");
  add_common(compute, true);
  auto* run = app.add_subcommand("run", "ingest + annotate + compute");
  add_common(run, true);

  std::optional<fs::path> snapshot_arg;
  std::string host = "127.0.0.1";
  int port = 8080;
  std::optional<fs::path> media;
  auto* serve = app.add_subcommand("serve", "Serve a snapshot over HTTP");
  add_common(serve, false);
  serve->add_option("--snapshot", snapshot_arg, "Snapshot directory (default: latest under snapshot_dir)");
  serve->add_option("--host", host, "Bind address")->capture_default_str();
  serve->add_option("--port", port, "Port (0 picks a free one)")->capture_default_str()->check(CLI::Range(0, 65535));
  serve->add_option("--media", media, "Directory served under /media")->check(CLI::ExistingDirectory);

  std::string format;
  fs::path out_dir;
  auto* exp = app.add_subcommand("export", "Export a snapshot");
  add_common(exp, false);
  exp->add_option("--snapshot", snapshot_arg, "Snapshot directory (default: latest under snapshot_dir)");
  exp->add_option("--format", format, "json-bundle | csv-metrics")->required();
  exp->add_option("--out", out_dir, "Output directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    const auto config = config_for(config_path);
    const auto snapshot_dir = [&] { return service::resolve_snapshot(snapshot_arg.value_or(config.snapshot_dir)); };

    if (ingest->parsed()) {
      const auto cohort = service::ingest(sessions, config);
      json groups = json::array();
      for (const auto& s : cohort.sessions) {
        std::size_t utterances = 0;
        for (const auto& seg : s.segments) utterances += seg.utterances.size();
        groups.push_back({{"group_id", s.group_id},
                          {"questions", s.segments.size()},
                          {"utterances", utterances},
                          {"code_submissions", s.code_submissions.size()},
                          {"media", s.media_ref.has_value()}});
      }
      std::cout << json{{"groups", groups}}.dump(2) << '\n';
      return 0;
    }
    if (annotate_cmd->parsed()) {
      const auto cohort = service::ingest(sessions, config);
      auto backend = service::make_backend(config);
      annotate::AnnotationCache cache(config.cache_dir);
      annotate::CachingBackend caching(*backend, cache, std::string(annotate::kPromptVersion));
      const auto annotations = service::annotate_cohort(cohort, config, caching);
      json failed = json::array();
      for (const auto& g : annotations) {
        if (g.error) failed.push_back({{"group_id", g.group_id}, {"message", *g.error}});
      }
      std::cout << json{{"cache_hits", caching.stats().hits},
                        {"backend_calls", caching.stats().misses},
                        {"failed", failed}}
                       .dump(2)
                << '\n';
      return failed.empty() ? 0 : kExitBackend;
    }
    if (compute->parsed()) return run_pipeline_verb(sessions, config, true);
    if (run->parsed()) return run_pipeline_verb(sessions, config, false);
    if (serve->parsed()) {
      const service::Snapshot snap(snapshot_dir());
      if (!snap.verify()) throw ValidationError("snapshot " + snap.dir().string() + " fails digest verification");
      const service::SnapshotStore store(snap);
      service::ApiServer server(store, media);
      const int bound = server.bind(host, port);
      std::cerr << "serving snapshot " << snap.id() << " on http://" << host << ':' << bound << '\n';
      g_server = &server;
      std::signal(SIGINT, [](int) { if (g_server) g_server->stop(); });
      std::signal(SIGTERM, [](int) { if (g_server) g_server->stop(); });
      server.run();
      g_server = nullptr;
      return 0;
    }
    if (exp->parsed()) {
      const auto fmt = service::parse_export_format(format);
      const service::Snapshot snap(snapshot_dir());
      for (const auto& p : service::export_snapshot(snap, fmt, out_dir)) std::cout << p.string() << '\n';
      return 0;
    }
  } catch (const BackendError& e) {
    std::cerr << "backend error: " << e.what() << '\n';
    return kExitBackend;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  return 0;
}
