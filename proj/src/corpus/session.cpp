#include "collabscope/corpus/session.hpp"

#include <algorithm>
#include <regex>
#include <set>
#include <sstream>

#include "collabscope/corpus/scheme.hpp"
#include "collabscope/corpus/transcript.hpp"
#include "collabscope/util/error.hpp"
#include "collabscope/util/json_io.hpp"

namespace collabscope::corpus {
namespace fs = std::filesystem;

const QuestionSegment* Session::find_segment(int question_id) const {
  for (const auto& s : segments) {
    if (s.question_id == question_id) return &s;
  }
  return nullptr;
}

std::vector<SpeakerId> Session::student_ids() const {
  std::vector<SpeakerId> ids;
  for (const auto& s : students) ids.push_back(s.id);
  return ids;
}

bool Session::is_student(std::string_view speaker) const {
  return std::any_of(students.begin(), students.end(), [&](const Student& s) { return s.id == speaker; });
}

void validate_session(const Session& session) {
  const std::string where = "group " + session.group_id + ": ";
  if (session.students.size() != 3) throw ValidationError(where + "group must have exactly 3 students");
  std::set<SpeakerId> ids;
  for (const auto& st : session.students) {
    if (!is_speaker_id(st.id)) throw ValidationError(where + "student id '" + st.id + "' is not a 4-digit id");
    if (st.id == session.instructor) throw ValidationError(where + "student id collides with the instructor id");
    if (!ids.insert(st.id).second) throw ValidationError(where + "duplicate student id " + st.id);
    if (!(st.prior_score >= 0.0 && st.prior_score <= 100.0)) {
      throw ValidationError(where + "prior_score of " + st.id + " must be within 0..100");
    }
  }
  int last_q = 0;
  for (const auto& seg : session.segments) {
    if (seg.question_id == last_q) throw ValidationError(where + "duplicate question id " + std::to_string(last_q));
    if (seg.question_id < last_q) throw ValidationError(where + "question ids must be strictly increasing");
    last_q = seg.question_id;
    if (seg.driver && !ids.contains(*seg.driver)) {
      throw ValidationError(where + "driver " + *seg.driver + " of question " + std::to_string(seg.question_id) +
                            " is not a group member");
    }
    for (std::size_t i = 0; i < seg.utterances.size(); ++i) {
      const auto& u = seg.utterances[i];
      if (u.speaker != session.instructor && !ids.contains(u.speaker)) {
        throw ValidationError(where + "question " + std::to_string(seg.question_id) + " utterance " +
                              std::to_string(i) + ": speaker " + u.speaker + " is neither a student nor the instructor");
      }
      if (i > 0 && u.start < seg.utterances[i - 1].start) {
        throw ValidationError(where + "utterances of question " + std::to_string(seg.question_id) +
                              " are not ordered by start");
      }
    }
  }
  for (const auto& [q, _] : session.code_submissions) {
    if (session.find_segment(q) == nullptr) {
      throw ValidationError(where + "code submission for unknown question " + std::to_string(q));
    }
  }
}

namespace {

std::vector<Student> read_roster(const fs::path& path, std::string& group_id) {
  if (!fs::exists(path)) throw ValidationError("missing roster: " + path.string());
  const auto doc = util::read_json_file(path);
  util::require_schema_version(doc, 1, "roster.json");
  std::vector<Student> students;
  try {
    if (doc.contains("group_id")) group_id = doc["group_id"].get<std::string>();
    for (const auto& s : doc.at("students")) {
      students.push_back({s.at("id").get<std::string>(), s.value("major", std::string{}),
                          s.at("prior_score").get<double>()});
    }
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
  return students;
}

std::map<int, std::string> read_code(const fs::path& dir) {
  std::map<int, std::string> code;
  if (!fs::is_directory(dir)) return code;
  static const std::regex name_re(R"(^q(\d+)\.py$)");
  for (const auto& entry : fs::directory_iterator(dir)) {
    const std::string name = entry.path().filename().string();
    std::smatch m;
    if (!entry.is_regular_file() || !std::regex_match(name, m, name_re)) continue;
    const int q = std::stoi(m[1].str());
    if (code.contains(q)) throw ValidationError("duplicate code submission for question " + std::to_string(q));
    code[q] = util::read_text_file(entry.path());
  }
  return code;
}

}  // namespace

Session load_session(const fs::path& dir, const LoadOptions& options) {
  if (!fs::is_directory(dir)) throw ValidationError("not a session directory: " + dir.string());
  Session s;
  s.instructor = options.instructor;
  s.group_id = dir.filename().string();
  s.students = read_roster(dir / "roster.json", s.group_id);

  const auto transcript_path = dir / "transcript.txt";
  if (!fs::exists(transcript_path)) throw ValidationError("missing transcript: " + transcript_path.string());
  try {
    s.segments = parse_transcript(util::read_text_file(transcript_path));
  } catch (const ParseError& e) {
    throw ParseError(e.line(), transcript_path.string() + ": " + e.what());
  }
  s.code_submissions = read_code(dir / "code");
  if (fs::exists(dir / "scheme.json")) s.scheme = load_scheme(dir / "scheme.json");
  if (fs::exists(dir / "media.mp4")) s.media_ref = (dir.filename() / "media.mp4").generic_string();
  validate_session(s);
  return s;
}

Cohort load_cohort(const fs::path& dir, const LoadOptions& options) {
  if (!fs::is_directory(dir)) throw ValidationError("not a directory: " + dir.string());
  Cohort cohort;
  std::vector<fs::path> groups;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_directory() && fs::exists(entry.path() / "roster.json")) groups.push_back(entry.path());
  }
  std::sort(groups.begin(), groups.end());
  std::set<std::string> seen;
  for (const auto& g : groups) {
    auto session = load_session(g, options);
    if (!seen.insert(session.group_id).second) throw ValidationError("duplicate group id " + session.group_id);
    cohort.sessions.push_back(std::move(session));
  }
  std::sort(cohort.sessions.begin(), cohort.sessions.end(),
            [](const Session& a, const Session& b) { return a.group_id < b.group_id; });
  if (fs::exists(dir / "questions.json")) {
    const auto doc = util::read_json_file(dir / "questions.json");
    util::require_schema_version(doc, 1, "questions.json");
    for (const auto& [k, v] : doc.at("questions").items()) cohort.questions[std::stoi(k)] = v.get<std::string>();
  }
  return cohort;
}

}  // namespace collabscope::corpus
