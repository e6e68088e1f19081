#include "collabscope/annotate/annotator.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <thread>

#include <json.hpp>

#include "collabscope/annotate/label_mapping.hpp"
#include "collabscope/annotate/model_json.hpp"
#include "collabscope/annotate/prompts.hpp"
#include "collabscope/annotate/role_vote.hpp"
#include "collabscope/annotate/wire.hpp"

namespace collabscope::annotate {

AnnotationError::AnnotationError(Task task, int question_id, std::size_t completed, const std::string& message)
    : BackendError(std::string(task_name(task)) + " annotation failed for question " + std::to_string(question_id) +
                   " after " + std::to_string(completed) + " completed items: " + message),
      task_(task),
      question_id_(question_id),
      completed_(completed) {}

namespace {

using corpus::QuestionSegment;
using corpus::Utterance;
using nlohmann::json;

void pause(const AnnotatorOptions& o, std::chrono::milliseconds d) {
  if (o.sleep) {
    o.sleep(d);
  } else {
    std::this_thread::sleep_for(d);
  }
}

std::string call_with_retry(ChatBackend& backend, const ChatRequest& request, const AnnotatorOptions& o) {
  auto delay = o.backoff;
  for (int attempt = 1;; ++attempt) {
    try {
      return backend.complete(request);
    } catch (const BackendError&) {
      if (attempt >= o.max_attempts) throw;
    }
    pause(o, delay);
    delay *= 2;
  }
}

/// Sends `request`, parses the reply, and on a malformed reply asks once
/// more with the previous answer and a correction appended.
template <class Parse>
auto ask(ChatBackend& backend, ChatRequest request, const AnnotatorOptions& o, Parse parse) {
  auto guarded = [&](const std::string& reply) {
    try {
      return parse(reply);
    } catch (const json::exception& e) {
      throw MalformedOutput(e.what());
    }
  };
  std::string reply = call_with_retry(backend, request, o);
  try {
    return guarded(reply);
  } catch (const MalformedOutput&) {
  }
  request.messages.push_back({"assistant", std::move(reply)});
  request.messages.push_back({"user", std::string(kFormatCorrection)});
  return guarded(call_with_retry(backend, request, o));
}

ChatRequest make_request(Task task, std::string system, std::string user, double temperature, int sample) {
  ChatRequest r;
  r.task = task;
  r.temperature = temperature;
  r.sample_index = sample;
  r.messages.push_back({"system", std::move(system)});
  r.messages.push_back({"user", std::move(user)});
  return r;
}

/// The per-sentence entries of a reply, whichever wrapper the model chose.
std::vector<json> entries_of(const json& doc) {
  if (doc.is_array()) return {doc.begin(), doc.end()};
  if (doc.is_object()) {
    if (const json* conv = find_field(doc, {"Conversations", "Conversation", "Sentences", "Results"})) {
      if (conv->is_array()) return {conv->begin(), conv->end()};
    }
    return {doc};
  }
  throw MalformedOutput("reply is neither an object nor an array");
}

std::vector<json> expect_entries(const json& doc, std::size_t n) {
  auto entries = entries_of(doc);
  if (entries.size() != n) {
    throw MalformedOutput("expected " + std::to_string(n) + " entries, got " + std::to_string(entries.size()));
  }
  for (const auto& e : entries) {
    if (!e.is_object()) throw MalformedOutput("entry is not an object");
  }
  return entries;
}

template <class T>
std::vector<std::span<const T>> batches(std::span<const T> items, std::size_t size) {
  std::vector<std::span<const T>> out;
  const std::size_t step = std::max<std::size_t>(size, 1);
  for (std::size_t i = 0; i < items.size(); i += step) out.push_back(items.subspan(i, std::min(step, items.size() - i)));
  return out;
}

std::optional<std::string> speaker_value(const json& v) {
  if (v.is_string()) {
    std::string s = v.get<std::string>();
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return std::nullopt;
    s = s.substr(b, s.find_last_not_of(" \t") - b + 1);
    return s;
  }
  if (v.is_number_integer()) {
    std::string s = std::to_string(v.get<long long>());
    return std::string(s.size() < 4 ? 4 - s.size() : 0, '0') + s;
  }
  return std::nullopt;
}

void collect_speakers(const json* field, std::vector<std::string>& out) {
  if (field == nullptr || field->is_null()) return;
  if (field->is_array()) {
    for (const auto& v : *field) {
      if (auto s = speaker_value(v)) out.push_back(*s);
    }
  } else if (auto s = speaker_value(*field)) {
    out.push_back(*s);
  }
}

std::optional<RoleCandidate> parse_role_entry(const json& entry, const SpeakerId& driver,
                                              std::span<const SpeakerId> students) {
  RoleCandidate c;
  if (const json* nav = find_field(entry, {"Navigator"})) {
    auto s = speaker_value(*nav);
    if (s && *s != kNoneSentinel) c.navigator = *s;
  }
  std::vector<const json*> holders{&entry};
  if (const json* other = find_field(entry, {"Other_Roles", "Other Roles", "OtherRoles"})) {
    if (other->is_array()) {
      for (const auto& o : *other) holders.push_back(&o);
    } else {
      holders.push_back(other);
    }
  }
  for (const json* h : holders) {
    if (!h->is_object()) continue;
    collect_speakers(find_field(*h, {"Monitors", "Monitor"}), c.monitors);
    collect_speakers(find_field(*h, {"Drivers", "Driver"}), c.drivers);
  }
  std::erase(c.monitors, std::string(kNoneSentinel));
  c = normalize_candidate(std::move(c), driver);
  if (!satisfies_partition(c, students)) return std::nullopt;
  return c;
}

RoleCandidate default_roles(const SpeakerId& driver, std::span<const SpeakerId> students) {
  RoleCandidate c;
  for (const auto& s : students) {
    if (s != driver) c.monitors.push_back(s);
  }
  c.drivers.push_back(driver);
  return normalize_candidate(std::move(c), driver);
}

std::optional<ScaffoldKind> scaffold_kind_of(std::string_view label) {
  if (auto k = parse_scaffold_kind(label)) return k;
  std::optional<ScaffoldKind> best;
  double best_d = kMappingThreshold;
  for (ScaffoldKind k : kAllScaffoldKinds) {
    const double d = normalized_edit_distance(label, scaffold_label(k));
    if (d <= best_d) {
      if (!best || d < best_d) best = k;
      best_d = d;
    }
  }
  return best;
}

struct CodeRun {
  DimensionScores dims;
  std::string rationale;
  std::string key_ideas;
  std::vector<std::string> demerits;
};

int rubric_score(const json& v) {
  if (v.is_number_integer()) return v.get<int>();
  if (v.is_number()) {
    const double d = v.get<double>();
    if (d == std::floor(d)) return static_cast<int>(d);
    return 0;
  }
  if (!v.is_string()) return 0;
  const std::string s = v.get<std::string>();
  const auto open = s.rfind('(');
  if (open != std::string::npos && open + 1 < s.size() && std::isdigit(static_cast<unsigned char>(s[open + 1]))) {
    return s[open + 1] - '0';
  }
  for (auto it = s.rbegin(); it != s.rend(); ++it) {
    if (std::isdigit(static_cast<unsigned char>(*it))) return *it - '0';
  }
  return 0;
}

double* dimension_slot(DimensionScores& d, std::string_view key) {
  std::string k(key);
  std::transform(k.begin(), k.end(), k.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (k.find("problem") != std::string::npos) return &d.problem_solving;
  if (k.find("integrity") != std::string::npos) return &d.integrity;
  if (k.find("accuracy") != std::string::npos) return &d.accuracy;
  if (k.find("innovation") != std::string::npos) return &d.innovation;
  return nullptr;
}

CodeRun parse_code_run(std::string_view reply) {
  const json doc = parse_model_json(reply);
  if (!doc.is_object()) throw MalformedOutput("grading reply is not an object");
  const json* details = find_field(doc, {"Details", "Detail", "Scores", "Criteria"});
  if (details == nullptr) throw MalformedOutput("grading reply has no details");

  CodeRun run;
  DimensionScores seen{};  // 1 marks a filled slot
  auto take = [&](const std::string& key, const json& body, const json* holder) {
    double* slot = dimension_slot(run.dims, key);
    if (slot == nullptr || !body.is_object()) return;
    const json* score = find_field(body, {"Score", "Grade", "Mark"});
    const int s = score ? rubric_score(*score) : 0;
    if (s < 1 || s > 5) throw MalformedOutput("dimension '" + key + "' has no 1..5 score");
    *slot = s;
    *dimension_slot(seen, key) = 1;
    if (auto why = string_field(body, {"Explanation", "Reason", "Comment"})) {
      if (!run.rationale.empty()) run.rationale += '\n';
      run.rationale += key + ": " + *why;
    }
    for (const json* h : {&body, holder}) {
      if (h == nullptr) continue;
      if (auto dm = string_field(*h, {"Demerits", "Demerit"})) run.demerits.push_back(*dm);
    }
  };
  if (details->is_array()) {
    for (const auto& item : *details) {
      if (!item.is_object()) continue;
      for (const auto& [k, v] : item.items()) take(k, v, &item);
    }
  } else if (details->is_object()) {
    for (const auto& [k, v] : details->items()) take(k, v, nullptr);
  }
  if (seen.problem_solving == 0 || seen.integrity == 0 || seen.accuracy == 0 || seen.innovation == 0) {
    throw MalformedOutput("grading reply lacks one of the four rubric dimensions");
  }
  run.key_ideas = string_field(doc, {"Key ideas", "Key idea", "Key_ideas"}).value_or("");
  return run;
}

}  // namespace

std::vector<BehaviorAnnotation> annotate_behaviors(const QuestionSegment& segment, const corpus::CodingScheme& scheme,
                                                   ChatBackend& backend, const AnnotatorOptions& options) {
  std::vector<BehaviorAnnotation> out;
  out.reserve(segment.utterances.size());
  const std::string system = behavior_system_message(scheme);
  for (auto batch : batches(std::span<const Utterance>(segment.utterances), options.batch_size)) {
    auto request = make_request(Task::Behavior, system, behavior_input(segment.question_id, batch), options.temperature, 0);
    auto parse = [&](const std::string& reply) {
      const auto entries = expect_entries(parse_model_json(reply), batch.size());
      std::vector<BehaviorAnnotation> part;
      for (const auto& e : entries) {
        auto label = string_field(e, {"Behavior Category", "Category", "Behavior"});
        const json* pct_field = find_field(e, {"Prediction Percentage", "Confidence", "Percentage"});
        auto pct = pct_field ? parse_percentage(*pct_field) : std::nullopt;
        if (!label || !pct) throw MalformedOutput("entry lacks category or percentage");
        const auto mapped = map_to_scheme(*label, *pct, scheme);
        BehaviorAnnotation a;
        a.ref = {segment.question_id, out.size() + part.size()};
        a.category = mapped.category;
        a.confidence_pct = mapped.confidence_pct;
        a.explanation = string_field(e, {"Explanation", "Reason"}).value_or("");
        if (mapped.mapped) a.model_category = *label;
        part.push_back(std::move(a));
      }
      return part;
    };
    try {
      auto part = ask(backend, std::move(request), options, parse);
      std::move(part.begin(), part.end(), std::back_inserter(out));
    } catch (const BackendError& e) {
      throw AnnotationError(Task::Behavior, segment.question_id, out.size(), e.what());
    } catch (const MalformedOutput& e) {
      throw AnnotationError(Task::Behavior, segment.question_id, out.size(), e.what());
    }
  }
  return out;
}

std::vector<RoleAssignment> annotate_roles(const QuestionSegment& segment, std::span<const SpeakerId> students,
                                           ChatBackend& backend, const AnnotatorOptions& options) {
  if (!segment.driver) {
    throw ValidationError("question " + std::to_string(segment.question_id) + " has no declared driver");
  }
  const SpeakerId& driver = *segment.driver;
  const RoleCandidate fallback = default_roles(driver, students);
  const int n = std::max(options.role_samples, 1);

  std::vector<RoleAssignment> out;
  out.reserve(segment.utterances.size());
  for (auto batch : batches(std::span<const Utterance>(segment.utterances), options.batch_size)) {
    const std::string user = role_input(segment.question_id, driver, batch, students);
    // votes[i] collects the samples for utterance i of the batch.
    std::vector<std::vector<RoleSample>> votes(batch.size());
    int survived = 0;
    std::string last_failure;
    for (int s = 0; s < n; ++s) {
      auto request = make_request(Task::Roles, std::string(system_prompt(Task::Roles)), user,
                                  options.sampling_temperature, s);
      auto parse = [&](const std::string& reply) {
        const auto entries = expect_entries(parse_model_json(reply), batch.size());
        std::vector<RoleSample> sample;
        for (const auto& e : entries) {
          RoleSample rs;
          rs.candidate = parse_role_entry(e, driver, students);
          if (const json* pct = find_field(e, {"Prediction Percentage", "Confidence"})) {
            rs.confidence = parse_percentage(*pct).value_or(100.0) / 100.0;
          }
          sample.push_back(std::move(rs));
        }
        return sample;
      };
      try {
        auto sample = ask(backend, std::move(request), options, parse);
        for (std::size_t i = 0; i < sample.size(); ++i) votes[i].push_back(std::move(sample[i]));
        ++survived;
      } catch (const BackendError& e) {
        last_failure = e.what();
      } catch (const MalformedOutput& e) {
        last_failure = e.what();
      }
    }
    if (2 * survived <= n) {
      throw AnnotationError(Task::Roles, segment.question_id, out.size(),
                            std::to_string(n - survived) + " of " + std::to_string(n) +
                                " samples failed; last: " + last_failure);
    }
    for (std::size_t i = 0; i < batch.size(); ++i) {
      const RoleCandidate* previous = out.empty() ? nullptr : &out.back().roles;
      out.push_back(vote_roles({segment.question_id, out.size()}, votes[i], previous, fallback));
    }
  }
  return out;
}

std::vector<ScaffoldEvent> annotate_scaffolding(const QuestionSegment& segment, const SpeakerId& instructor,
                                                ChatBackend& backend, const AnnotatorOptions& options) {
  std::vector<Utterance> spoken;
  std::vector<std::size_t> index;
  for (std::size_t i = 0; i < segment.utterances.size(); ++i) {
    if (segment.utterances[i].speaker == instructor) {
      spoken.push_back(segment.utterances[i]);
      index.push_back(i);
    }
  }
  std::vector<ScaffoldEvent> out;
  for (auto batch : batches(std::span<const Utterance>(spoken), options.batch_size)) {
    auto request = make_request(Task::Scaffolding, std::string(system_prompt(Task::Scaffolding)), scaffold_input(batch),
                                options.temperature, 0);
    auto parse = [&](const std::string& reply) {
      const auto entries = expect_entries(parse_model_json(reply), batch.size());
      std::vector<ScaffoldEvent> part;
      for (const auto& e : entries) {
        auto label = string_field(e, {"Behavior Category", "Scaffolding Category", "Category", "Type"});
        const json* pct_field = find_field(e, {"Prediction Percentage", "Confidence", "Percentage"});
        auto pct = pct_field ? parse_percentage(*pct_field) : std::nullopt;
        auto kind = label ? scaffold_kind_of(*label) : std::nullopt;
        if (!kind || !pct) throw MalformedOutput("entry lacks a known scaffolding kind or percentage");
        ScaffoldEvent ev;
        ev.ref = {segment.question_id, index[out.size() + part.size()]};
        ev.kind = *kind;
        ev.confidence_pct = *pct;
        ev.explanation = string_field(e, {"Explanation", "Reason"}).value_or("");
        part.push_back(std::move(ev));
      }
      return part;
    };
    try {
      auto part = ask(backend, std::move(request), options, parse);
      std::move(part.begin(), part.end(), std::back_inserter(out));
    } catch (const BackendError& e) {
      throw AnnotationError(Task::Scaffolding, segment.question_id, out.size(), e.what());
    } catch (const MalformedOutput& e) {
      throw AnnotationError(Task::Scaffolding, segment.question_id, out.size(), e.what());
    }
  }
  return out;
}

DimensionScores parse_code_reply_scores(std::string_view reply) { return parse_code_run(reply).dims; }

CodeScore score_code(std::string_view question, std::string_view answer, ChatBackend& backend,
                     const AnnotatorOptions& options) {
  if (answer.find_first_not_of(" \t\r\n") == std::string_view::npos) {
    throw ValidationError("cannot score an empty submission");
  }
  const std::string user = code_input(question, answer);
  std::vector<CodeRun> runs;
  std::string last_failure;
  for (int r = 0; r < options.code_runs; ++r) {
    auto request = make_request(Task::CodeScore, std::string(system_prompt(Task::CodeScore)), user,
                                options.sampling_temperature, r);
    try {
      runs.push_back(ask(backend, std::move(request), options, [](const std::string& reply) { return parse_code_run(reply); }));
    } catch (const BackendError& e) {
      last_failure = e.what();
    } catch (const MalformedOutput& e) {
      last_failure = e.what();
    }
  }
  if (static_cast<int>(runs.size()) < options.min_code_runs) {
    throw AnnotationError(Task::CodeScore, 0, runs.size(),
                          "only " + std::to_string(runs.size()) + " of " + std::to_string(options.code_runs) +
                              " grading runs succeeded; last: " + last_failure);
  }

  CodeScore score;
  score.n_samples = static_cast<int>(runs.size());
  const double k = static_cast<double>(runs.size());
  for (const auto& run : runs) {
    score.dimensions.problem_solving += run.dims.problem_solving;
    score.dimensions.integrity += run.dims.integrity;
    score.dimensions.accuracy += run.dims.accuracy;
    score.dimensions.innovation += run.dims.innovation;
  }
  score.dimensions.problem_solving /= k;
  score.dimensions.integrity /= k;
  score.dimensions.accuracy /= k;
  score.dimensions.innovation /= k;
  score.weighted_total = weighted_total(score.dimensions);

  const CodeRun* rep = &runs.front();
  double best = std::abs(weighted_total(rep->dims) - score.weighted_total);
  for (const auto& run : runs) {
    const double d = std::abs(weighted_total(run.dims) - score.weighted_total);
    if (d < best) {
      best = d;
      rep = &run;
    }
  }
  score.rationale = rep->rationale;
  score.key_ideas = rep->key_ideas;
  score.demerits = rep->demerits;
  return score;
}

}  // namespace collabscope::annotate
