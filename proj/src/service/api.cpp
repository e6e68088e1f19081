#include "collabscope/service/api.hpp"

#include <charconv>
#include <cmath>
#include <optional>
#include <vector>

#include "collabscope/ena/network.hpp"
#include "collabscope/timeline/timeline.hpp"
#include "collabscope/util/error.hpp"

namespace collabscope::service {
namespace {

using nlohmann::json;

/// Carries an HTTP status and stable error code up to the router.
struct ApiError {
  int status;
  std::string code;
  std::string message;
};

ApiResponse ok(const json& body) { return {200, "application/json", body.dump()}; }

ApiResponse error_response(const ApiError& e) {
  return {e.status, "application/json", json{{"error", {{"code", e.code}, {"message", e.message}}}}.dump()};
}

[[noreturn]] void bad_request(const std::string& message) { throw ApiError{400, "bad_request", message}; }

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.emplace_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) return out;
    start = pos + 1;
  }
}

int parse_int(std::string_view name, std::string_view text) {
  int v = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || end != text.data() + text.size()) bad_request(std::string(name) + " must be an integer");
  return v;
}

double parse_double(std::string_view name, std::string_view text) {
  double v = 0.0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || end != text.data() + text.size() || !std::isfinite(v)) {
    bad_request(std::string(name) + " must be a finite number");
  }
  return v;
}

std::optional<std::string_view> param(const QueryParams& q, std::string_view name) {
  const auto it = q.find(name);
  if (it == q.end()) return std::nullopt;
  return std::string_view(it->second);
}

const json& require_doc(const SnapshotStore& store, const std::string& path, const std::string& what) {
  const json* d = store.doc(path);
  if (d == nullptr) throw ApiError{404, "not_available", what + " is not available in this snapshot"};
  return *d;
}

ApiResponse verbatim(const SnapshotStore& store, const std::string& path, const std::string& what) {
  const std::string* r = store.raw(path);
  if (r == nullptr) throw ApiError{404, "not_available", what + " is not available in this snapshot"};
  return {200, "application/json", *r};
}

/// Looks up the entry of `array` whose "question_id" equals q.
const json& question_entry(const json& array, int q) {
  for (const auto& e : array) {
    if (e.at("question_id").get<int>() == q) return e;
  }
  throw ApiError{404, "unknown_question", "question " + std::to_string(q) + " does not exist"};
}

ApiResponse timeline(const SnapshotStore& store, const std::string& group, const QueryParams& query) {
  const std::string path = "groups/" + group + "/timeline.json";
  const auto q = param(query, "q");
  const auto t0 = param(query, "t0");
  const auto t1 = param(query, "t1");
  if (!q) {
    if (t0 || t1) bad_request("t0/t1 require q");
    return verbatim(store, path, "timeline");
  }
  const json& doc = require_doc(store, path, "timeline");
  const json& entry = question_entry(doc.at("questions"), parse_int("q", *q));
  if (!t0 && !t1) return ok(entry);
  if (!t0 || !t1) bad_request("t0 and t1 must be given together");
  const double a = parse_double("t0", *t0);
  const double b = parse_double("t1", *t1);
  if (!(a < b)) bad_request("t0 must be smaller than t1");
  return ok(timeline::timeline_to_json(timeline::window_filter(timeline::timeline_from_json(entry), a, b)));
}

ApiResponse network(const SnapshotStore& store, const std::string& group, const QueryParams& query) {
  const json& doc = require_doc(store, "groups/" + group + "/networks.json", "network");
  std::map<int, std::vector<std::string>> sequences;
  for (const auto& [q, seq] : doc.at("sequences").items()) sequences[std::stoi(q)] = seq.get<std::vector<std::string>>();

  int k = doc.at("k").get<int>();
  if (const auto kp = param(query, "k")) k = parse_int("k", *kp);
  if (k < 2) bad_request("k must be at least 2");

  std::vector<int> questions;
  if (const auto qs = param(query, "questions"); qs && !qs->empty()) {
    for (const auto& part : split(*qs, ',')) {
      const int q = parse_int("questions", part);
      if (!sequences.count(q)) throw ApiError{404, "unknown_question", "question " + part + " does not exist"};
      questions.push_back(q);
    }
  } else {
    for (const auto& [q, _] : sequences) questions.push_back(q);
  }
  json out = ena::network_to_json(ena::normalize_network(ena::network_for_range(sequences, questions, k)));
  out["group_id"] = group;
  return ok(out);
}

ApiResponse transcript(const SnapshotStore& store, const std::string& group, const QueryParams& query) {
  const std::string path = "groups/" + group + "/transcript.json";
  const auto q = param(query, "q");
  const auto t = param(query, "t");
  if (!q) {
    if (t) bad_request("t requires q");
    return verbatim(store, path, "transcript");
  }
  const json& doc = require_doc(store, path, "transcript");
  json entry = question_entry(doc.at("questions"), parse_int("q", *q));
  json focus = nullptr;
  if (t) {
    const double at = parse_double("t", *t);
    for (auto& u : entry.at("utterances")) {
      const bool hit = u.at("start").get<double>() <= at && at < u.at("end").get<double>();
      u["focus"] = hit;
      if (hit && focus.is_null()) focus = u.at("index");
    }
  }
  return ok({{"group_id", group},
             {"media_ref", doc.at("media_ref")},
             {"question_id", entry.at("question_id")},
             {"driver", entry.at("driver")},
             {"focus_index", focus},
             {"utterances", entry.at("utterances")}});
}

ApiResponse group_route(const SnapshotStore& store, const std::vector<std::string>& parts, const QueryParams& query) {
  const std::string& id = parts[2];
  const std::string profile_path = "groups/" + id + "/profile.json";
  if (store.raw(profile_path) == nullptr) throw ApiError{404, "unknown_group", "group " + id + " does not exist"};
  if (parts.size() == 3) return verbatim(store, profile_path, "profile");
  if (parts.size() != 4) throw ApiError{404, "not_found", "no such endpoint"};

  const std::string& view = parts[3];
  if (view == "similar") {
    const json& sim = require_doc(store, "cohort/similarity.json", "similarity");
    const auto& results = sim.at("results");
    if (!results.contains(id)) throw ApiError{404, "not_available", "group " + id + " has no similarity ranking"};
    return ok(results.at(id));
  }
  if (view == "timeline") return timeline(store, id, query);
  if (view == "engagement") return verbatim(store, "groups/" + id + "/engagement.json", "engagement");
  if (view == "network") return network(store, id, query);
  if (view == "codes") return verbatim(store, "groups/" + id + "/codes.json", "code scores");
  if (view == "transcript") return transcript(store, id, query);
  throw ApiError{404, "not_found", "no such endpoint"};
}

ApiResponse route(const SnapshotStore& store, std::string_view path, const QueryParams& query) {
  while (path.size() > 1 && path.back() == '/') path.remove_suffix(1);
  const auto parts = split(path, '/');  // "", "api", ...
  if (parts.size() < 3 || !parts[0].empty() || parts[1] != "api") throw ApiError{404, "not_found", "no such endpoint"};

  if (parts[2] == "groups") {
    if (parts.size() == 3) return ok(require_doc(store, "cohort/groups.json", "group overview").at("groups"));
    return group_route(store, {parts.begin() + 1, parts.end()}, query);
  }
  if (parts[2] == "students" && parts.size() == 4) {
    for (const auto& s : require_doc(store, "cohort/students.json", "students").at("students")) {
      if (s.at("id") == parts[3]) return ok(s);
    }
    throw ApiError{404, "unknown_student", "student " + parts[3] + " does not exist"};
  }
  if (parts[2] == "projection" && parts.size() == 3) {
    const std::string level(param(query, "level").value_or("group"));
    if (level != "group" && level != "student") bad_request("level must be group or student");
    return verbatim(store, "cohort/projection_" + level + "s.json", level + " projection");
  }
  throw ApiError{404, "not_found", "no such endpoint"};
}

}  // namespace

SnapshotStore::SnapshotStore(const Snapshot& snapshot) : id_(snapshot.id()), raw_(snapshot.files()) {
  for (const auto& [path, bytes] : raw_) {
    if (path.size() > 5 && path.compare(path.size() - 5, 5, ".json") == 0) parsed_.emplace(path, json::parse(bytes));
  }
}

const std::string* SnapshotStore::raw(const std::string& path) const {
  const auto it = raw_.find(path);
  return it == raw_.end() ? nullptr : &it->second;
}

const nlohmann::json* SnapshotStore::doc(const std::string& path) const {
  const auto it = parsed_.find(path);
  return it == parsed_.end() ? nullptr : &it->second;
}

ApiResponse handle_request(const SnapshotStore& store, std::string_view path, const QueryParams& query) {
  try {
    return route(store, path, query);
  } catch (const ApiError& e) {
    return error_response(e);
  } catch (const ValidationError& e) {
    return error_response({400, "bad_request", e.what()});
  }
}

}  // namespace collabscope::service
