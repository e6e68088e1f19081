#include "collabscope/annotate/mock_backend.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "collabscope/annotate/wire.hpp"
#include "collabscope/util/random.hpp"

namespace collabscope::annotate {
namespace {

using nlohmann::json;

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

bool has_any(const std::string& text, std::initializer_list<std::string_view> needles) {
  return std::any_of(needles.begin(), needles.end(), [&](std::string_view n) { return text.find(n) != std::string::npos; });
}

std::size_t word_count(std::string_view s) {
  std::istringstream ss{std::string(s)};
  std::size_t n = 0;
  for (std::string w; ss >> w;) ++n;
  return n;
}

const std::string& first_user_message(const ChatRequest& request) {
  for (const auto& m : request.messages) {
    if (m.role == "user") return m.content;
  }
  throw BackendError("mock: request has no user message");
}

std::string question_label(int q) { return "Question" + std::to_string(q); }

std::string grade_label(int score) {
  static constexpr const char* kNames[] = {"Bad", "Poor", "Fair", "Good", "Excellent"};
  return std::string(kNames[std::clamp(score, 1, 5) - 1]) + " (" + std::to_string(score) + ")";
}

}  // namespace

MockLabel mock_behavior(std::string_view raw) {
  const std::string t = lower(raw);
  if (has_any(t, {"laugh", "haha", "joke", "lunch", "weekend", "movie", "game", "mess around", "whatever"})) {
    return {"Unrelated chat", 60, "Casual remark not pertinent to the task."};
  }
  if (has_any(t, {"error", "bug", "wrong", "fix", "debug", "traceback", "exception", "doesn't work", "not working",
                  "indent", "syntax", "crash"})) {
    return {"Debugging", 85, "Member is locating or repairing a fault in the program."};
  }
  if (has_any(t, {"print(", "def ", "for ", "while ", "append", "sort", "loop", "variable", "function", "input(",
                  "int(", "eval(", "range", "type ", "list", "string"})) {
    return {"Python coding", 80, "Member discusses concrete Python constructs."};
  }
  if (has_any(t, {"should", "let's", "let us", "plan", "how about", "combine", "idea", "approach", "step", "merge",
                  "first we", "then we", "maybe we"})) {
    return {"Question Planning", 75, "Member proposes how to approach the question."};
  }
  if (has_any(t, {"success", "perfect", "good", "great", "okay", "ok,", "yes", "right", "agree", "done", "nice"})) {
    return {"Acknowledgement", 80, "Member acknowledges progress with positive feedback."};
  }
  if (has_any(t, {"question", "title", "requirement", "mean", "understand", "asking", "task"})) {
    return {"Project understanding", 85, "Member clarifies what the task requires."};
  }
  return {"Project understanding", 55, "No clear cue; treated as engagement with the task."};
}

bool mock_is_planning(std::string_view raw) {
  const std::string t = lower(raw);
  if (has_any(t, {"messing around", "mess around"})) return false;
  return has_any(t, {"should", "let's", "let us", "could", "combine", "notice", "first", "then", "merge", "order",
                     "question", "template", "try", "use ", "need to", "we can", "how about", "maybe"});
}

MockLabel mock_scaffold(std::string_view raw) {
  const std::string t = lower(raw);
  if (word_count(t) >= 40) {
    return {"High-control cognitive scaffolding", 100, "Teacher provides detailed explanation and coding instructions."};
  }
  if (has_any(t, {"you need to", "you must", "try ", "check", "look at", "remember", "don't forget", "hint",
                  "consider"})) {
    return {"Medium-control cognitive scaffolding", 85, "Teacher gives a hint while leaving the work to the group."};
  }
  if (has_any(t, {"why", "how would", "what do you think", "what if", "how can"})) {
    return {"Low-control cognitive scaffolding", 85, "Teacher raises an open question to prompt group thinking."};
  }
  if (t.find('?') != std::string::npos) {
    return {"Metacognitive scaffolding", 80, "Teacher checks on the group's goal or progress."};
  }
  return {"Metacognitive scaffolding", 90, "Teacher acknowledges and regulates the group's process."};
}

DimensionScores mock_code_grade(std::string_view code) {
  std::istringstream ss{std::string(code)};
  int lines = 0;
  for (std::string line; std::getline(ss, line);) {
    const auto b = line.find_first_not_of(" \t\r");
    if (b != std::string::npos && line[b] != '#') ++lines;
  }
  const std::string t = lower(code);
  const bool loop = has_any(t, {"for ", "while "});
  const bool branch = t.find("if ") != std::string::npos;
  const bool defines = t.find("def ") != std::string::npos;
  const bool prints = t.find("print(") != std::string::npos;
  const bool eval = t.find("eval(") != std::string::npos;
  const bool builtin_sort = has_any(t, {".sort(", "sorted("});
  const bool incomplete = has_any(t, {"todo", "\n    pass", "..."});

  auto clamp = [](int v) { return static_cast<double>(std::clamp(v, 1, 5)); };
  DimensionScores d;
  d.problem_solving = clamp(2 + (lines >= 3) + loop + branch);
  d.integrity = clamp(5 - !prints - incomplete - (lines < 2));
  d.accuracy = clamp(5 - 2 * !prints - eval - incomplete);
  d.innovation = clamp(2 + defines + (loop && !builtin_sort) + (lines >= 8));
  return d;
}

double MockBackend::jittered(double base, std::string_view key, int sample) const {
  util::SplitMix64 rng(util::mix_seed(util::mix_seed(options_.seed, util::fnv1a(key)), static_cast<std::uint64_t>(sample)));
  const double v = base + options_.jitter * (2.0 * rng.uniform() - 1.0);
  return std::clamp(std::round(v), 0.0, 100.0);
}

std::string MockBackend::fingerprint() const {
  char buf[160];
  std::snprintf(buf, sizeof(buf), "mock/1 seed=%llu jitter=%.6g flip=%.6g code=%.6g",
                static_cast<unsigned long long>(options_.seed), options_.jitter, options_.role_flip_rate,
                options_.code_variation);
  return buf;
}

std::string MockBackend::complete(const ChatRequest& request) {
  ++calls_;
  const std::string& input = first_user_message(request);
  switch (request.task) {
    case Task::Behavior: return behavior_reply(input, request.sample_index);
    case Task::Roles: return roles_reply(input, request.sample_index);
    case Task::Scaffolding: return scaffolding_reply(input, request.sample_index);
    case Task::CodeScore: return code_reply(input, request.sample_index);
  }
  throw BackendError("mock: unknown task");
}

std::string MockBackend::behavior_reply(std::string_view input, int sample) const {
  const auto seg = parse_behavior_input(input);
  json conv = json::array();
  for (const auto& u : seg.utterances) {
    const auto label = mock_behavior(u.text);
    const double pct = jittered(label.confidence, "behavior|" + timestamp_label(u) + "|" + u.text, sample);
    conv.push_back({{"Speaker", u.speaker},
                    {"Timestamp", timestamp_label(u)},
                    {"Content", u.text},
                    {"Behavior Category", label.label},
                    {"Prediction Percentage", std::to_string(static_cast<int>(pct)) + "%"},
                    {"Explanation", label.explanation}});
  }
  return json{{"Question", question_label(seg.question_id)}, {"Conversations", conv}}.dump(4);
}

std::string MockBackend::roles_reply(std::string_view input, int sample) const {
  const auto in = parse_role_input(input);
  const SpeakerId& driver = *in.segment.driver;
  json conv = json::array();
  for (const auto& u : in.segment.utterances) {
    const bool member = std::find(in.members.begin(), in.members.end(), u.speaker) != in.members.end();
    util::SplitMix64 rng(util::mix_seed(util::mix_seed(options_.seed, util::fnv1a("roles|" + timestamp_label(u) + "|" + u.text)),
                                        static_cast<std::uint64_t>(sample)));
    bool planning = mock_is_planning(u.text);
    if (rng.uniform() < options_.role_flip_rate) planning = !planning;

    json navigator = "None";
    json monitors = json::array();
    json drivers = json::array();
    if (!member) {
      // Instructor speaking: the whole group listens.
      for (const auto& m : in.members) monitors.push_back(m);
      drivers.push_back(std::string(kNoneSentinel));
    } else if (planning) {
      navigator = u.speaker;
      for (const auto& m : in.members) {
        if (m != u.speaker && m != driver) monitors.push_back(m);
      }
      if (u.speaker == driver) {
        drivers.push_back(std::string(kNoneSentinel));
      } else {
        drivers.push_back(driver);
      }
    } else {
      for (const auto& m : in.members) {
        if (m != driver) monitors.push_back(m);
      }
      drivers.push_back(driver);
    }
    conv.push_back({{"Timestamp", timestamp_label(u)},
                    {"Content", u.text},
                    {"Navigator", navigator},
                    {"Other_Roles", json::array({json{{"Monitors", monitors}, {"Drivers", drivers}}})}});
  }
  return json{{"Question", question_label(in.segment.question_id)}, {"Conversations", conv}}.dump(4);
}

std::string MockBackend::scaffolding_reply(std::string_view input, int sample) const {
  const auto utterances = parse_scaffold_input(input);
  // Matches the appendix listing: bare objects separated by commas.
  std::string out;
  for (std::size_t i = 0; i < utterances.size(); ++i) {
    const auto& u = utterances[i];
    const auto label = mock_scaffold(u.text);
    const double pct = jittered(label.confidence, "scaffold|" + timestamp_label(u) + "|" + u.text, sample);
    json entry = {{"Speaker", u.speaker},
                  {"Timestamp", timestamp_label(u)},
                  {"Content", u.text},
                  {"Behavior Category", label.label},
                  {"Prediction Percentage", std::to_string(static_cast<int>(pct)) + "%"},
                  {"Explanation", label.explanation}};
    if (i > 0) out += ",\n";
    out += entry.dump(4);
  }
  return out.empty() ? "[]" : out;
}

std::string MockBackend::code_reply(std::string_view input, int sample) const {
  const auto in = parse_code_input(input);
  DimensionScores d = mock_code_grade(in.answer);
  util::SplitMix64 rng(util::mix_seed(util::mix_seed(options_.seed, util::fnv1a("code|" + in.answer)),
                                      static_cast<std::uint64_t>(sample)));
  const double u = rng.uniform();
  if (u < options_.code_variation / 2) {
    d.innovation = std::max(1.0, d.innovation - 1);
  } else if (u < options_.code_variation) {
    d.problem_solving = std::min(5.0, d.problem_solving + 1);
  }

  auto detail = [](std::string_view name, double score, std::string_view why) {
    const int s = static_cast<int>(score);
    json demerit = nullptr;
    if (s < 5) demerit = "The " + lower(name.substr(0, name.find(" ("))) + " falls short of the top criterion.";
    return json{{std::string(name), {{"Score", grade_label(s)}, {"Explanation", std::string(why)}}}, {"Demerits", demerit}};
  };
  char total[32];
  std::snprintf(total, sizeof(total), "%.2f / 5", weighted_total(d));
  std::string ideas = "The code ";
  ideas += in.answer.find("def ") != std::string::npos ? "defines helper functions" : "runs as a flat script";
  ideas += in.answer.find("for ") != std::string::npos || in.answer.find("while ") != std::string::npos
               ? ", iterates over the data"
               : "";
  ideas += in.answer.find("print(") != std::string::npos ? " and prints the result." : " and produces no output.";

  json reply = {{"Key ideas", ideas},
                {"Score", total},
                {"Details", json::array({detail("Problem-solving Approach (5%)", d.problem_solving,
                                                "Assessed from the control flow used to address the task."),
                                         detail("Code Integrity (35%)", d.integrity,
                                                "Assessed from structure, completeness and output."),
                                         detail("Code Accuracy (35%)", d.accuracy,
                                                "Assessed from output handling and risky constructs."),
                                         detail("Algorithm Innovation (25%)", d.innovation,
                                                "Assessed from custom logic beyond built-in calls.")})}};
  return "```json\n" + reply.dump(4) + "\n```";
}

}  // namespace collabscope::annotate
