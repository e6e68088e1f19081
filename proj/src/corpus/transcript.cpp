#include "collabscope/corpus/transcript.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <regex>
#include <sstream>

#include "collabscope/util/error.hpp"

namespace collabscope::corpus {
namespace {

const std::regex& header_re() {
  static const std::regex re(R"(^Question(\d+)( Driver: (\d{4}))?$)");
  return re;
}

const std::regex& record_re() {
  static const std::regex re(R"(^(\d+(\.\d+)?) (\d+(\.\d+)?) (\d{4}) (.+)$)");
  return re;
}

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

double parse_seconds(const std::string& s, std::size_t line) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw ParseError(line, "bad time '" + s + "'");
  return v;
}

Utterance parse_record_line(const std::string& line, std::size_t lineno) {
  std::smatch m;
  if (!std::regex_match(line, m, record_re())) {
    throw ParseError(lineno, "expected '<start> <end> <speaker> <text>' or a Question header");
  }
  Utterance u;
  u.start = parse_seconds(m[1].str(), lineno);
  u.end = parse_seconds(m[3].str(), lineno);
  u.speaker = m[5].str();
  u.text = std::string(trim(m[6].str()));
  if (u.end <= u.start) throw ParseError(lineno, "utterance end must be after its start");
  if (u.text.empty()) throw ParseError(lineno, "empty utterance text");
  return u;
}

// Strips a trailing CR and surrounding blanks; returns false for blank lines.
bool normalise_line(std::string& line) {
  const auto t = trim(line);
  if (t.empty()) return false;
  line = std::string(t);
  return true;
}

}  // namespace

bool is_speaker_id(std::string_view s) {
  return s.size() == 4 && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

double QuestionSegment::span_start() const {
  return utterances.empty() ? 0.0 : utterances.front().start;
}

double QuestionSegment::span_end() const {
  double end = 0.0;
  for (const auto& u : utterances) end = std::max(end, u.end);
  return end;
}

std::vector<QuestionSegment> parse_transcript(std::istream& in) {
  std::vector<QuestionSegment> segments;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!normalise_line(line)) continue;
    std::smatch m;
    if (std::regex_match(line, m, header_re())) {
      QuestionSegment seg;
      seg.question_id = std::stoi(m[1].str());
      if (seg.question_id <= 0) throw ParseError(lineno, "question number must be positive");
      if (m[3].matched) seg.driver = m[3].str();
      segments.push_back(std::move(seg));
      continue;
    }
    if (segments.empty()) {
      if (std::regex_match(line, record_re())) throw ParseError(lineno, "utterance before any Question header");
      throw ParseError(lineno, "expected a Question header");
    }
    Utterance u = parse_record_line(line, lineno);
    auto& seg = segments.back();
    if (!seg.utterances.empty() && u.start < seg.utterances.back().start) {
      throw ParseError(lineno, "utterances must be ordered by start time");
    }
    seg.utterances.push_back(std::move(u));
  }
  return segments;
}

std::vector<QuestionSegment> parse_transcript(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_transcript(in);
}

std::vector<Utterance> parse_records(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::vector<Utterance> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!normalise_line(line)) continue;
    out.push_back(parse_record_line(line, lineno));
  }
  return out;
}

std::string format_seconds(double seconds) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), seconds, std::chars_format::fixed);
  if (ec != std::errc()) throw std::runtime_error("format_seconds: value out of range");
  std::string s(buf, ptr);
  if (s.find('.') == std::string::npos) s += ".00";
  return s;
}

std::string format_header(const QuestionSegment& segment) {
  std::string h = "Question" + std::to_string(segment.question_id);
  if (segment.driver) h += " Driver: " + *segment.driver;
  return h;
}

std::string format_record(const Utterance& u) {
  return format_seconds(u.start) + " " + format_seconds(u.end) + " " + u.speaker + " " + u.text;
}

std::string format_transcript(std::span<const QuestionSegment> segments) {
  std::string out;
  for (const auto& seg : segments) {
    out += format_header(seg);
    out += '\n';
    for (const auto& u : seg.utterances) {
      out += format_record(u);
      out += '\n';
    }
  }
  return out;
}

std::size_t first_half_count(const QuestionSegment& segment) {
  if (segment.utterances.empty()) throw ValidationError("split_half: empty segment");
  const double mid = (segment.span_start() + segment.span_end()) / 2.0;
  // Starts are non-decreasing, so the first half is a prefix. The first
  // utterance always qualifies because its end lies past its start.
  std::size_t n = 0;
  while (n < segment.utterances.size() && segment.utterances[n].start < mid) ++n;
  return n;
}

HalfSplit split_half(const QuestionSegment& segment) {
  const std::size_t n = first_half_count(segment);
  HalfSplit out;
  out.first_half.assign(segment.utterances.begin(), segment.utterances.begin() + static_cast<std::ptrdiff_t>(n));
  out.full = segment.utterances;
  return out;
}

}  // namespace collabscope::corpus
