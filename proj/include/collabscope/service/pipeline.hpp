#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "collabscope/annotate/backend.hpp"
#include "collabscope/annotate/types.hpp"
#include "collabscope/corpus/session.hpp"
#include "collabscope/service/config.hpp"
#include "collabscope/service/snapshot.hpp"

namespace collabscope::service {

/// Model output for one question of one group.
struct QuestionAnnotations {
  int question_id = 0;
  std::vector<annotate::BehaviorAnnotation> behaviors;
  std::vector<annotate::RoleAssignment> roles;  // empty without a declared driver
  std::vector<annotate::ScaffoldEvent> scaffolds;
  std::optional<annotate::CodeScore> code;
};

struct GroupAnnotations {
  std::string group_id;
  std::vector<QuestionAnnotations> questions;  // segment order
  std::optional<std::string> error;            // set when any task failed
};

struct PipelineError {
  std::string group_id;  // empty for cohort-level problems
  std::string stage;
  std::string message;
};

/// Chat backend described by the configuration (mock or HTTP).
std::unique_ptr<annotate::ChatBackend> make_backend(const PipelineConfig& config);

/// Loads the cohort and fills in each session's coding scheme (its own
/// scheme.json, else the configured scheme, else the default).
corpus::Cohort ingest(const std::filesystem::path& sessions_dir, const PipelineConfig& config);

/// Runs all four annotation tasks for every question of every group on
/// `config.workers` threads. A failing task marks its group failed.
std::vector<GroupAnnotations> annotate_cohort(const corpus::Cohort& cohort, const PipelineConfig& config,
                                              annotate::ChatBackend& backend);

/// Derives every snapshot document from the annotations.
SnapshotBuilder build_snapshot(const corpus::Cohort& cohort, const std::vector<GroupAnnotations>& annotations,
                               const PipelineConfig& config, std::vector<PipelineError>& errors);

struct PipelineResult {
  std::string snapshot_id;
  std::filesystem::path snapshot_dir;
  std::size_t cache_hits = 0;
  std::size_t backend_calls = 0;  // cache misses forwarded to the backend
  std::vector<PipelineError> errors;
};

/// ingest -> annotate (through the on-disk cache) -> compute -> commit.
/// `backend` overrides the configured one when given.
PipelineResult run_pipeline(const std::filesystem::path& sessions_dir, const PipelineConfig& config,
                            annotate::ChatBackend* backend = nullptr);

// Document encodings shared with the API.
nlohmann::json annotations_to_json(const GroupAnnotations& g);
nlohmann::json transcript_to_json(const corpus::Session& session);

}  // namespace collabscope::service
