#include "collabscope/timeline/timeline.hpp"

#include "collabscope/timeline/smoothing.hpp"

namespace collabscope::timeline {
namespace {

using nlohmann::json;

annotate::Role parse_role(const std::string& name) {
  for (auto r : {annotate::Role::Driver, annotate::Role::Navigator, annotate::Role::Monitor, annotate::Role::None}) {
    if (annotate::role_name(r) == name) return r;
  }
  throw ValidationError("unknown role '" + name + "'");
}

}  // namespace

QuestionTimeline build_timeline(const corpus::QuestionSegment& segment,
                                std::span<const annotate::BehaviorAnnotation> behaviors,
                                std::span<const annotate::RoleAssignment> roles,
                                std::span<const annotate::ScaffoldEvent> scaffolds,
                                std::span<const corpus::SpeakerId> students, const TimelineOptions& options) {
  if (behaviors.size() != segment.utterances.size()) {
    throw ValidationError("question " + std::to_string(segment.question_id) + " has " +
                          std::to_string(segment.utterances.size()) + " utterances but " +
                          std::to_string(behaviors.size()) + " behavior annotations");
  }
  QuestionTimeline tl;
  tl.question_id = segment.question_id;

  std::vector<double> raw;
  raw.reserve(behaviors.size());
  for (const auto& b : behaviors) raw.push_back(b.confidence_pct);
  const auto smoothed = smooth_confidences(raw, options.smoothing_window);

  std::vector<TimedLabel> labels;
  for (std::size_t i = 0; i < behaviors.size(); ++i) {
    const auto& b = behaviors[i];
    const auto& u = segment.utterances[b.ref.index];
    tl.bars.push_back({b.ref, u.start, u.end, b.category, b.confidence_pct, smoothed[i], b.explanation, b.model_category});
    labels.push_back({b.ref, u.start, u.end, b.category, smoothed[i]});
  }
  tl.runs = merge_runs(labels, options.weighting);
  tl.roles = build_role_strip(segment, roles, students);
  for (const auto& s : scaffolds) {
    const auto& u = segment.utterances.at(s.ref.index);
    tl.scaffolds.push_back({s.ref, u.start, u.end, s.kind, s.confidence_pct, s.explanation});
  }
  return tl;
}

QuestionTimeline window_filter(const QuestionTimeline& timeline, double t0, double t1) {
  QuestionTimeline out;
  out.question_id = timeline.question_id;
  out.bars = window_filter(std::span<const ConfidenceBar>(timeline.bars), t0, t1);
  out.runs = window_filter(std::span<const MergedRun>(timeline.runs), t0, t1);
  out.roles = window_filter(std::span<const RoleCell>(timeline.roles), t0, t1);
  out.scaffolds = window_filter(std::span<const ScaffoldMarker>(timeline.scaffolds), t0, t1);
  return out;
}

json timeline_to_json(const QuestionTimeline& tl) {
  json bars = json::array();
  for (const auto& b : tl.bars) {
    json j = {{"index", b.ref.index},          {"t0", b.t0},
              {"t1", b.t1},                    {"category", b.category},
              {"confidence", b.smoothed_confidence}, {"raw_confidence", b.raw_confidence},
              {"explanation", b.explanation}};
    if (b.model_category) j["model_category"] = *b.model_category;
    bars.push_back(std::move(j));
  }
  json runs = json::array();
  for (const auto& r : tl.runs) {
    json members = json::array();
    for (const auto& m : r.members) members.push_back({{"index", m.ref.index}, {"t0", m.t0}, {"t1", m.t1}});
    runs.push_back({{"category", r.category},
                    {"start", r.start},
                    {"end", r.end},
                    {"mean_confidence", r.mean_confidence},
                    {"members", members}});
  }
  json roles = json::array();
  for (const auto& c : tl.roles) {
    roles.push_back({{"index", c.ref.index},
                     {"t0", c.t0},
                     {"t1", c.t1},
                     {"student", c.student},
                     {"role", annotate::role_name(c.role)},
                     {"uncertain", c.uncertain}});
  }
  json scaffolds = json::array();
  for (const auto& s : tl.scaffolds) {
    scaffolds.push_back({{"index", s.ref.index},
                         {"t0", s.t0},
                         {"t1", s.t1},
                         {"kind", annotate::scaffold_code(s.kind)},
                         {"label", annotate::scaffold_label(s.kind)},
                         {"confidence", s.confidence},
                         {"explanation", s.explanation}});
  }
  return {{"question_id", tl.question_id}, {"bars", bars}, {"runs", runs}, {"roles", roles}, {"scaffolds", scaffolds}};
}

QuestionTimeline timeline_from_json(const json& doc) {
  QuestionTimeline tl;
  try {
    tl.question_id = doc.at("question_id").get<int>();
    const int q = tl.question_id;
    for (const auto& b : doc.at("bars")) {
      ConfidenceBar bar{{q, b.at("index").get<std::size_t>()},
                        b.at("t0").get<double>(),
                        b.at("t1").get<double>(),
                        b.at("category").get<std::string>(),
                        b.at("raw_confidence").get<double>(),
                        b.at("confidence").get<double>(),
                        b.at("explanation").get<std::string>(),
                        std::nullopt};
      if (b.contains("model_category")) bar.model_category = b["model_category"].get<std::string>();
      tl.bars.push_back(std::move(bar));
    }
    for (const auto& r : doc.at("runs")) {
      MergedRun run{r.at("category").get<std::string>(), r.at("start").get<double>(), r.at("end").get<double>(),
                    r.at("mean_confidence").get<double>(), {}};
      for (const auto& m : r.at("members")) {
        run.members.push_back({{q, m.at("index").get<std::size_t>()}, m.at("t0").get<double>(), m.at("t1").get<double>()});
      }
      tl.runs.push_back(std::move(run));
    }
    for (const auto& c : doc.at("roles")) {
      tl.roles.push_back({{q, c.at("index").get<std::size_t>()},
                          c.at("t0").get<double>(),
                          c.at("t1").get<double>(),
                          c.at("student").get<std::string>(),
                          parse_role(c.at("role").get<std::string>()),
                          c.at("uncertain").get<bool>()});
    }
    for (const auto& s : doc.at("scaffolds")) {
      auto kind = annotate::parse_scaffold_kind(s.at("kind").get<std::string>());
      if (!kind) throw ValidationError("unknown scaffold kind in timeline document");
      tl.scaffolds.push_back({{q, s.at("index").get<std::size_t>()},
                              s.at("t0").get<double>(),
                              s.at("t1").get<double>(),
                              *kind,
                              s.at("confidence").get<double>(),
                              s.at("explanation").get<std::string>()});
    }
  } catch (const json::exception& e) {
    throw ValidationError(std::string("timeline document: ") + e.what());
  }
  return tl;
}

}  // namespace collabscope::timeline
