#include "collabscope/service/pipeline.hpp"

#include <algorithm>
#include <cstdlib>

#include "collabscope/analytics/features.hpp"
#include "collabscope/analytics/glyph.hpp"
#include "collabscope/analytics/similarity.hpp"
#include "collabscope/analytics/tsne.hpp"
#include "collabscope/annotate/annotator.hpp"
#include "collabscope/annotate/cache.hpp"
#include "collabscope/annotate/http_backend.hpp"
#include "collabscope/annotate/mock_backend.hpp"
#include "collabscope/annotate/prompts.hpp"
#include "collabscope/corpus/scheme.hpp"
#include "collabscope/ena/network.hpp"
#include "collabscope/engagement/engagement.hpp"
#include "collabscope/timeline/timeline.hpp"
#include "collabscope/util/error.hpp"
#include "collabscope/util/parallel.hpp"
#include "collabscope/util/random.hpp"

namespace collabscope::service {
namespace {

using nlohmann::json;
using corpus::Session;

json speaker_or_null(const std::optional<std::string>& s) { return s ? json(*s) : json(nullptr); }

json candidate_json(const annotate::RoleCandidate& c) {
  return {{"navigator", speaker_or_null(c.navigator)}, {"monitors", c.monitors}, {"drivers", c.drivers}};
}

/// Per-student aggregates shared by the profile, glyph and student views.
struct StudentSummary {
  corpus::Student student;
  double mean_behavioral = 0.0;
  double mean_cognitive = 0.0;
  double engagement_total = 0.0;
  std::array<int, 3> role_counts{};
  std::array<double, 4> color_share{};
};

/// Everything computed for one successfully annotated group.
struct GroupResult {
  analytics::GroupProfile profile;
  std::vector<StudentSummary> students;
  json timeline;
  json engagement;
  json networks;
};

std::array<double, 4> color_shares(std::span<const int> counts) {
  std::array<double, 4> out{};
  int total = 0;
  for (int c : counts) total += c;
  if (total == 0) return out;
  for (std::size_t i = 0; i < 4; ++i) out[i] = static_cast<double>(counts[i]) / total;
  return out;
}

GroupResult compute_group(const Session& s, const GroupAnnotations& ann, const PipelineConfig& config) {
  const auto ids = s.student_ids();
  const auto& scheme = *s.scheme;
  GroupResult r;
  auto& p = r.profile;
  p.group_id = s.group_id;
  p.students = ids;

  timeline::TimelineOptions topts{config.smoothing_window, config.merge_weighting};
  engagement::EngagementOptions eopts;
  eopts.features.cooccurrence_window = config.cooccurrence_window;
  eopts.max_iter = config.nmf.max_iter;
  eopts.tol = config.nmf.tol;
  eopts.seed = util::mix_seed(config.nmf_seed(), util::fnv1a(s.group_id));

  r.students.resize(ids.size());
  json timelines = json::array();
  std::vector<engagement::EngagementPoint> points;
  std::map<int, std::vector<std::string>> sequences;
  std::array<int, 4> group_colors{};
  std::vector<std::array<int, 4>> student_colors(ids.size());

  for (std::size_t k = 0; k < s.segments.size(); ++k) {
    const auto& seg = s.segments[k];
    const auto& qa = ann.questions.at(k);
    timelines.push_back(timeline::timeline_to_json(
        timeline::build_timeline(seg, qa.behaviors, qa.roles, qa.scaffolds, ids, topts)));
    auto pts = engagement::engagement_scores(seg, qa.behaviors, qa.roles, ids, scheme, eopts);
    points.insert(points.end(), pts.begin(), pts.end());

    auto& seq = sequences[seg.question_id];
    for (std::size_t i = 0; i < qa.behaviors.size(); ++i) {
      seq.push_back(qa.behaviors[i].category);
      const auto who = std::find(ids.begin(), ids.end(), seg.utterances[i].speaker);
      if (who == ids.end()) continue;
      const int cg = scheme.categories[*scheme.index_of(qa.behaviors[i].category)].color_group - 1;
      ++group_colors[static_cast<std::size_t>(cg)];
      ++student_colors[static_cast<std::size_t>(who - ids.begin())][static_cast<std::size_t>(cg)];
    }
    for (const auto& ev : qa.scaffolds) ++p.scaffold_counts[static_cast<std::size_t>(ev.kind)];
    p.duration += seg.span_end() - seg.span_start();
    if (qa.code) p.question_scores[seg.question_id] = qa.code->weighted_total;

    for (const auto& ra : qa.roles) {
      for (std::size_t st = 0; st < ids.size(); ++st) {
        const auto role = annotate::role_of(ra.roles, ids[st]);
        if (role != annotate::Role::None) ++r.students[st].role_counts[static_cast<std::size_t>(role)];
      }
    }
  }

  if (p.question_scores.empty()) throw ValidationError("no code submissions were scored");
  std::vector<double> scores;
  for (const auto& [_, v] : p.question_scores) scores.push_back(v);
  const auto totals = analytics::student_engagement_totals(points);
  for (std::size_t i = 0; i < ids.size(); ++i) {
    const auto it = totals.find(ids[i]);
    p.engagement[i] = it == totals.end() ? 0.0 : it->second;
  }
  p.quality = analytics::collaboration_quality(scores, p.engagement);

  int full_points = 0;
  std::vector<int> per_student(ids.size(), 0);
  for (const auto& pt : points) {
    if (pt.phase != engagement::Phase::Full) continue;
    p.mean_behavioral += pt.behavioral;
    p.mean_cognitive += pt.cognitive;
    ++full_points;
    const auto st = static_cast<std::size_t>(std::find(ids.begin(), ids.end(), pt.student) - ids.begin());
    r.students[st].mean_behavioral += pt.behavioral;
    r.students[st].mean_cognitive += pt.cognitive;
    ++per_student[st];
  }
  if (full_points > 0) {
    p.mean_behavioral /= full_points;
    p.mean_cognitive /= full_points;
  }
  double prior = 0.0;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    auto& ss = r.students[i];
    ss.student = s.students[i];
    if (per_student[i] > 0) {
      ss.mean_behavioral /= per_student[i];
      ss.mean_cognitive /= per_student[i];
    }
    ss.engagement_total = p.engagement[i];
    ss.color_share = color_shares(student_colors[i]);
    prior += s.students[i].prior_score;
  }
  p.prior_mean = prior / static_cast<double>(ids.size());
  p.color_group_share = color_shares(group_colors);
  p.feature_vector = analytics::group_feature_vector(p);

  r.timeline = {{"schema_version", 1}, {"group_id", s.group_id}, {"questions", timelines}};
  r.engagement = engagement::engagement_to_json(
      engagement::summarize_engagement(ids, std::move(points)));
  r.engagement["schema_version"] = 1;
  r.engagement["group_id"] = s.group_id;

  json per_question = json::object();
  json seq_doc = json::object();
  for (const auto& [q, seq] : sequences) {
    const int qs[] = {q};
    per_question[std::to_string(q)] = ena::network_to_json(ena::normalize_network(
        ena::network_for_range(sequences, qs, config.ena_window)));
    seq_doc[std::to_string(q)] = seq;
  }
  std::vector<int> all_q;
  for (const auto& [q, _] : sequences) all_q.push_back(q);
  r.networks = {{"schema_version", 1},
                {"group_id", s.group_id},
                {"k", config.ena_window},
                {"sequences", seq_doc},
                {"questions", per_question},
                {"all", ena::network_to_json(ena::normalize_network(
                            ena::network_for_range(sequences, all_q, config.ena_window)))}};
  return r;
}

json codes_to_json(const Session& s, const GroupAnnotations& ann, const std::map<int, std::string>& statements) {
  json codes = json::array();
  for (const auto& qa : ann.questions) {
    if (!qa.code) continue;
    const auto& c = *qa.code;
    const auto stmt = statements.find(qa.question_id);
    codes.push_back({{"question_id", qa.question_id},
                     {"question", stmt == statements.end() ? json(nullptr) : json(stmt->second)},
                     {"source", s.code_submissions.at(qa.question_id)},
                     {"dimensions",
                      {{"problem_solving", c.dimensions.problem_solving},
                       {"integrity", c.dimensions.integrity},
                       {"accuracy", c.dimensions.accuracy},
                       {"innovation", c.dimensions.innovation}}},
                     {"weighted_total", c.weighted_total},
                     {"rationale", c.rationale},
                     {"key_ideas", c.key_ideas},
                     {"demerits", c.demerits},
                     {"n_samples", c.n_samples}});
  }
  return {{"schema_version", 1}, {"group_id", s.group_id}, {"codes", codes}};
}

json projection_doc(std::string_view level, double perplexity, const json& points) {
  return {{"schema_version", 1}, {"level", level}, {"perplexity", perplexity}, {"points", points}};
}

Eigen::MatrixXd to_matrix(const std::vector<std::vector<double>>& rows) {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
  }
  return m;
}

}  // namespace

std::unique_ptr<annotate::ChatBackend> make_backend(const PipelineConfig& config) {
  if (config.backend.kind == "mock") {
    annotate::MockOptions o;
    o.seed = config.backend_seed();
    o.jitter = config.backend.mock_jitter;
    return std::make_unique<annotate::MockBackend>(o);
  }
  annotate::HttpBackendConfig h;
  h.endpoint = config.backend.endpoint;
  h.model = config.backend.model;
  h.seed = config.backend_seed();
  if (const char* key = std::getenv(config.backend.api_key_env.c_str()); key != nullptr && *key != '\0') h.api_key = key;
  return std::make_unique<annotate::HttpChatBackend>(h);
}

corpus::Cohort ingest(const std::filesystem::path& sessions_dir, const PipelineConfig& config) {
  corpus::LoadOptions lo;
  lo.instructor = config.instructor;
  auto cohort = corpus::load_cohort(sessions_dir, lo);
  if (cohort.sessions.empty()) throw ValidationError("no group sessions found under " + sessions_dir.string());
  const corpus::CodingScheme fallback = config.scheme_path ? corpus::load_scheme(*config.scheme_path)
                                                           : corpus::default_scheme();
  for (auto& s : cohort.sessions) {
    if (!s.scheme) s.scheme = fallback;
  }
  return cohort;
}

std::vector<GroupAnnotations> annotate_cohort(const corpus::Cohort& cohort, const PipelineConfig& config,
                                              annotate::ChatBackend& backend) {
  struct Task {
    std::size_t group;
    std::size_t segment;
  };
  std::vector<Task> tasks;
  std::vector<GroupAnnotations> out(cohort.sessions.size());
  for (std::size_t g = 0; g < cohort.sessions.size(); ++g) {
    out[g].group_id = cohort.sessions[g].group_id;
    out[g].questions.resize(cohort.sessions[g].segments.size());
    for (std::size_t k = 0; k < cohort.sessions[g].segments.size(); ++k) tasks.push_back({g, k});
  }
  std::vector<std::optional<std::string>> failures(tasks.size());
  const auto options = config.annotator_options();

  util::parallel_for(tasks.size(), static_cast<std::size_t>(config.workers), [&](std::size_t t) {
    const auto& s = cohort.sessions[tasks[t].group];
    const auto& seg = s.segments[tasks[t].segment];
    auto& qa = out[tasks[t].group].questions[tasks[t].segment];
    qa.question_id = seg.question_id;
    try {
      const auto ids = s.student_ids();
      qa.behaviors = annotate::annotate_behaviors(seg, *s.scheme, backend, options);
      if (seg.driver) qa.roles = annotate::annotate_roles(seg, ids, backend, options);
      qa.scaffolds = annotate::annotate_scaffolding(seg, s.instructor, backend, options);
      if (const auto code = s.code_submissions.find(seg.question_id); code != s.code_submissions.end()) {
        const auto stmt = cohort.questions.find(seg.question_id);
        const std::string question =
            stmt == cohort.questions.end() ? "Question " + std::to_string(seg.question_id) : stmt->second;
        qa.code = annotate::score_code(question, code->second, backend, options);
      }
    } catch (const std::exception& e) {
      failures[t] = "question " + std::to_string(seg.question_id) + ": " + e.what();
    }
  });

  for (std::size_t t = 0; t < tasks.size(); ++t) {
    auto& g = out[tasks[t].group];
    if (failures[t] && !g.error) g.error = *failures[t];
  }
  return out;
}

json annotations_to_json(const GroupAnnotations& g) {
  json questions = json::array();
  for (const auto& qa : g.questions) {
    json behaviors = json::array();
    for (const auto& b : qa.behaviors) {
      json j = {{"index", b.ref.index},
                {"category", b.category},
                {"confidence", b.confidence_pct},
                {"explanation", b.explanation}};
      if (b.model_category) j["model_category"] = *b.model_category;
      behaviors.push_back(std::move(j));
    }
    json roles = json::array();
    for (const auto& r : qa.roles) {
      json j = candidate_json(r.roles);
      j["index"] = r.ref.index;
      j["votes"] = r.votes;
      j["valid_samples"] = r.valid_samples;
      j["uncertain"] = r.uncertain;
      json cands = json::array();
      for (const auto& c : r.candidates) {
        json cj = candidate_json(c.candidate);
        cj["votes"] = c.votes;
        cj["confidence_sum"] = c.confidence_sum;
        cands.push_back(std::move(cj));
      }
      j["candidates"] = std::move(cands);
      roles.push_back(std::move(j));
    }
    json scaffolds = json::array();
    for (const auto& s : qa.scaffolds) {
      scaffolds.push_back({{"index", s.ref.index},
                           {"kind", annotate::scaffold_code(s.kind)},
                           {"label", annotate::scaffold_label(s.kind)},
                           {"confidence", s.confidence_pct},
                           {"explanation", s.explanation}});
    }
    questions.push_back({{"question_id", qa.question_id},
                         {"behaviors", behaviors},
                         {"roles", roles},
                         {"scaffolds", scaffolds}});
  }
  return {{"schema_version", 1}, {"group_id", g.group_id}, {"questions", questions}};
}

json transcript_to_json(const Session& s) {
  json students = json::array();
  for (const auto& st : s.students) {
    students.push_back({{"id", st.id}, {"major", st.major}, {"prior_score", st.prior_score}});
  }
  json questions = json::array();
  for (const auto& seg : s.segments) {
    json utts = json::array();
    for (std::size_t i = 0; i < seg.utterances.size(); ++i) {
      const auto& u = seg.utterances[i];
      utts.push_back({{"index", i}, {"start", u.start}, {"end", u.end}, {"speaker", u.speaker}, {"text", u.text}});
    }
    questions.push_back({{"question_id", seg.question_id}, {"driver", speaker_or_null(seg.driver)}, {"utterances", utts}});
  }
  return {{"schema_version", 1},
          {"group_id", s.group_id},
          {"media_ref", speaker_or_null(s.media_ref)},
          {"instructor", s.instructor},
          {"students", students},
          {"questions", questions}};
}

SnapshotBuilder build_snapshot(const corpus::Cohort& cohort, const std::vector<GroupAnnotations>& annotations,
                               const PipelineConfig& config, std::vector<PipelineError>& errors) {
  SnapshotBuilder snap;
  std::vector<std::optional<GroupResult>> results(cohort.sessions.size());

  for (std::size_t g = 0; g < cohort.sessions.size(); ++g) {
    const auto& s = cohort.sessions[g];
    const auto& ann = annotations.at(g);
    const std::string base = "groups/" + s.group_id + "/";
    snap.add_json(base + "transcript.json", transcript_to_json(s));
    if (ann.error) {
      errors.push_back({s.group_id, "annotate", *ann.error});
      continue;
    }
    snap.add_json(base + "annotations.json", annotations_to_json(ann));
    snap.add_json(base + "codes.json", codes_to_json(s, ann, cohort.questions));
    try {
      results[g] = compute_group(s, ann, config);
    } catch (const std::exception& e) {
      errors.push_back({s.group_id, "compute", e.what()});
    }
  }

  // Cohort analytics over the groups that made it through.
  std::vector<std::size_t> ok;
  for (std::size_t g = 0; g < results.size(); ++g) {
    if (results[g]) ok.push_back(g);
  }
  std::vector<std::string> ok_ids;
  std::vector<std::vector<double>> raw;
  for (std::size_t g : ok) {
    ok_ids.push_back(cohort.sessions[g].group_id);
    raw.push_back(results[g]->profile.feature_vector);
  }
  if (ok.size() >= 2) {
    const auto z = analytics::standardize(raw);
    for (std::size_t i = 0; i < ok.size(); ++i) results[ok[i]]->profile.standardized = z[i];
  } else {
    errors.push_back({"", "standardize", "feature standardization needs at least 2 analysed groups"});
  }

  std::map<std::string, json> similar;
  if (ok.size() >= 3) {
    std::vector<std::vector<double>> z;
    for (std::size_t g : ok) z.push_back(results[g]->profile.standardized);
    json matrix = json::array();
    for (std::size_t i = 0; i < ok.size(); ++i) {
      json row = json::array();
      for (std::size_t j = 0; j < ok.size(); ++j) row.push_back(analytics::euclidean_distance(z[i], z[j]));
      matrix.push_back(std::move(row));
    }
    json per_group = json::object();
    for (const auto& id : ok_ids) {
      const auto r = analytics::rank_similarity(id, ok_ids, z);
      similar[id] = {{"group_id", id},
                     {"most_similar", {{"group_id", r.most_similar.group_id}, {"distance", r.most_similar.distance}}},
                     {"most_different",
                      {{"group_id", r.most_different.group_id}, {"distance", r.most_different.distance}}}};
      per_group[id] = similar[id];
    }
    snap.add_json("cohort/similarity.json",
                  {{"schema_version", 1}, {"ids", ok_ids}, {"distances", matrix}, {"results", per_group}});
  } else {
    errors.push_back({"", "similarity", "similarity ranking needs at least 3 analysed groups"});
  }

  const double perplexity_cap = [&](std::size_t n) { return std::min(config.tsne.perplexity, (n - 1) / 3.0); }(
      std::max<std::size_t>(ok.size(), 1));
  if (ok.size() >= 4) {
    std::vector<std::vector<double>> z;
    for (std::size_t g : ok) z.push_back(results[g]->profile.standardized);
    analytics::TsneOptions t{perplexity_cap, config.tsne.iterations, config.tsne.learning_rate,
                             util::mix_seed(config.tsne_seed(), util::fnv1a("groups"))};
    const auto y = analytics::project_tsne(to_matrix(z), t);
    json points = json::array();
    for (std::size_t i = 0; i < ok.size(); ++i) {
      const auto ii = static_cast<Eigen::Index>(i);
      results[ok[i]]->profile.projection = {y(ii, 0), y(ii, 1)};
      points.push_back({{"id", ok_ids[i]}, {"x", y(ii, 0)}, {"y", y(ii, 1)}});
    }
    snap.add_json("cohort/projection_groups.json", projection_doc("group", perplexity_cap, points));
  } else {
    errors.push_back({"", "projection", "group projection needs at least 4 analysed groups"});
  }

  // Student level.
  struct StudentRow {
    std::string group_id;
    const StudentSummary* summary;
  };
  std::vector<StudentRow> student_rows;
  std::vector<std::vector<double>> student_features;
  for (std::size_t g : ok) {
    for (const auto& ss : results[g]->students) {
      student_rows.push_back({cohort.sessions[g].group_id, &ss});
      const double roles_total = ss.role_counts[0] + ss.role_counts[1] + ss.role_counts[2];
      std::vector<double> f = {ss.mean_behavioral, ss.mean_cognitive};
      for (int rc : ss.role_counts) f.push_back(roles_total > 0 ? rc / roles_total : 0.0);
      f.insert(f.end(), ss.color_share.begin(), ss.color_share.end());
      f.push_back(ss.student.prior_score / 100.0);
      student_features.push_back(std::move(f));
    }
  }
  std::vector<std::optional<std::array<double, 2>>> student_xy(student_rows.size());
  if (student_rows.size() >= 4) {
    const double perp = std::min(config.tsne.perplexity, (student_rows.size() - 1) / 3.0);
    analytics::TsneOptions t{perp, config.tsne.iterations, config.tsne.learning_rate,
                             util::mix_seed(config.tsne_seed(), util::fnv1a("students"))};
    const auto y = analytics::project_tsne(to_matrix(analytics::standardize(student_features)), t);
    json points = json::array();
    for (std::size_t i = 0; i < student_rows.size(); ++i) {
      const auto ii = static_cast<Eigen::Index>(i);
      student_xy[i] = std::array<double, 2>{y(ii, 0), y(ii, 1)};
      points.push_back({{"id", student_rows[i].summary->student.id},
                        {"group_id", student_rows[i].group_id},
                        {"x", y(ii, 0)},
                        {"y", y(ii, 1)}});
    }
    snap.add_json("cohort/projection_students.json", projection_doc("student", perp, points));
  } else {
    errors.push_back({"", "projection", "student projection needs at least 4 students"});
  }
  json students = json::array();
  for (std::size_t i = 0; i < student_rows.size(); ++i) {
    const auto& ss = *student_rows[i].summary;
    students.push_back({{"id", ss.student.id},
                        {"group_id", student_rows[i].group_id},
                        {"major", ss.student.major},
                        {"prior_score", ss.student.prior_score},
                        {"mean_behavioral", ss.mean_behavioral},
                        {"mean_cognitive", ss.mean_cognitive},
                        {"engagement_total", ss.engagement_total},
                        {"role_counts",
                         {{"Driver", ss.role_counts[0]}, {"Navigator", ss.role_counts[1]}, {"Monitor", ss.role_counts[2]}}},
                        {"color_group_share", ss.color_share},
                        {"projection", student_xy[i] ? json(*student_xy[i]) : json(nullptr)}});
  }
  snap.add_json("cohort/students.json", {{"schema_version", 1}, {"students", students}});

  // Glyphs and per-group documents.
  std::vector<analytics::GroupGlyphInput> glyph_in;
  for (std::size_t g : ok) {
    const auto& r = *results[g];
    analytics::GroupGlyphInput in{r.profile.group_id, r.profile.quality.quality, r.profile.scaffold_total(),
                                  r.profile.duration, r.profile.prior_mean, {}};
    for (const auto& ss : r.students) in.students.push_back({ss.student.id, ss.mean_behavioral, ss.mean_cognitive, ss.role_counts});
    glyph_in.push_back(std::move(in));
  }
  const auto glyphs = analytics::glyph_params(glyph_in);

  json overview = json::array();
  std::size_t next_ok = 0;
  for (std::size_t g = 0; g < cohort.sessions.size(); ++g) {
    const auto& s = cohort.sessions[g];
    const std::string base = "groups/" + s.group_id + "/";
    if (!results[g]) {
      std::string why = annotations[g].error.value_or("");
      for (const auto& e : errors) {
        if (e.group_id == s.group_id) why = e.message;
      }
      json failed = {{"schema_version", 1}, {"group_id", s.group_id}, {"status", "failed"}, {"error", why}};
      snap.add_json(base + "profile.json", failed);
      failed.erase("schema_version");
      overview.push_back(std::move(failed));
      continue;
    }
    const auto& r = *results[g];
    const json glyph = analytics::glyph_to_json(glyphs[next_ok++]);
    json profile = analytics::profile_to_json(r.profile);
    profile["schema_version"] = 1;
    profile["status"] = "ok";
    profile["glyph"] = glyph;
    profile["media_ref"] = speaker_or_null(s.media_ref);
    json qids = json::array();
    for (const auto& seg : s.segments) qids.push_back(seg.question_id);
    profile["questions"] = qids;
    snap.add_json(base + "profile.json", profile);
    snap.add_json(base + "timeline.json", r.timeline);
    snap.add_json(base + "engagement.json", r.engagement);
    snap.add_json(base + "networks.json", r.networks);

    overview.push_back({{"group_id", s.group_id},
                        {"status", "ok"},
                        {"mean_score", r.profile.quality.mean_score},
                        {"quality", r.profile.quality.quality},
                        {"cv_e", r.profile.quality.cv_e},
                        {"duration", r.profile.duration},
                        {"prior_performance", r.profile.prior_mean},
                        {"scaffold_counts", profile["scaffold_counts"]},
                        {"glyph", glyph},
                        {"projection", profile["projection"]},
                        {"media_ref", profile["media_ref"]}});
  }
  snap.add_json("cohort/groups.json", {{"schema_version", 1}, {"groups", overview}});

  json err = json::array();
  for (const auto& e : errors) {
    err.push_back({{"group_id", e.group_id.empty() ? json(nullptr) : json(e.group_id)},
                   {"stage", e.stage},
                   {"message", e.message}});
  }
  snap.add_json("cohort/errors.json", {{"schema_version", 1}, {"errors", err}});
  snap.add_json("cohort/config.json", config_to_json(config));
  return snap;
}

PipelineResult run_pipeline(const std::filesystem::path& sessions_dir, const PipelineConfig& config,
                            annotate::ChatBackend* backend) {
  validate_config(config);
  const auto cohort = ingest(sessions_dir, config);
  std::unique_ptr<annotate::ChatBackend> owned;
  if (backend == nullptr) {
    owned = make_backend(config);
    backend = owned.get();
  }
  annotate::AnnotationCache cache(config.cache_dir);
  annotate::CachingBackend caching(*backend, cache, std::string(annotate::kPromptVersion));
  const auto annotations = annotate_cohort(cohort, config, caching);

  PipelineResult result;
  const auto snap = build_snapshot(cohort, annotations, config, result.errors);
  result.snapshot_dir = snap.commit(config.snapshot_dir);
  result.snapshot_id = snap.digest();
  result.cache_hits = caching.stats().hits;
  result.backend_calls = caching.stats().misses;
  return result;
}

}  // namespace collabscope::service
