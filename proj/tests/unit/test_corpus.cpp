#include <doctest.h>

#include <fstream>

#include "collabscope/corpus/scheme.hpp"
#include "collabscope/corpus/session.hpp"
#include "collabscope/corpus/transcript.hpp"
#include "collabscope/util/json_io.hpp"
#include "test_support.hpp"

using namespace collabscope;
using namespace collabscope::corpus;
namespace fs = std::filesystem;

TEST_CASE("a header and one record form one segment") {
  const auto segs = parse_transcript("Question1\n1.00 2.90 0303 This one is better done");
  REQUIRE(segs.size() == 1);
  CHECK(segs[0].question_id == 1);
  CHECK_FALSE(segs[0].driver.has_value());
  REQUIRE(segs[0].utterances.size() == 1);
  const auto& u = segs[0].utterances[0];
  CHECK(u.start == 1.00);
  CHECK(u.end == 2.90);
  CHECK(u.speaker == "0303");
  CHECK(u.text == "This one is better done");
}

TEST_CASE("driver header and empty input") {
  CHECK(parse_transcript("").empty());
  const auto segs = parse_transcript("Question2 Driver: 0302\n46.70 49.40 0303 What is the title of the second question?");
  REQUIRE(segs.size() == 1);
  CHECK(segs[0].question_id == 2);
  CHECK(segs[0].driver == std::optional<SpeakerId>("0302"));
}

TEST_CASE("parse errors carry the line number") {
  auto line_of = [](std::string_view text) -> std::size_t {
    try {
      parse_transcript(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return 0;
  };
  CHECK(line_of("Question1\n1.0 2.0 0301 ok\nnot a record") == 3);
  CHECK(line_of("1.0 2.0 0301 before any header") == 1);
  CHECK(line_of("Question1\n3.0 2.0 0301 backwards") == 2);
  CHECK(line_of("Question1\n2.0 2.0 0301 zero length") == 2);
  CHECK(line_of("Question1\n1.0 2.0 301 short speaker") == 2);
}

TEST_CASE("record count per segment equals record lines under its header") {
  const std::string text =
      "Question1 Driver: 0301\n0.0 1.0 0301 a\n1.0 2.0 0302 b\n\nQuestion2\n5.0 6.5 0303 c\n"
      "Question3 Driver: 0302\n7.0 8.0 0000 d\n8.0 9.0 0301 e\n9.0 9.5 0302 f\n";
  const auto segs = parse_transcript(text);
  REQUIRE(segs.size() == 3);
  CHECK(segs[0].utterances.size() == 2);
  CHECK(segs[1].utterances.size() == 1);
  CHECK(segs[2].utterances.size() == 3);
}

TEST_CASE("parse and format round-trip on randomized transcripts") {
  testing::Gen g(7);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<QuestionSegment> segs;
    double t = 0.0;
    const int nq = g.integer(1, 4);
    for (int q = 1; q <= nq; ++q) {
      QuestionSegment s;
      s.question_id = q * g.integer(1, 3);
      if (!segs.empty() && s.question_id <= segs.back().question_id) s.question_id = segs.back().question_id + 1;
      if (g.uniform() < 0.5) s.driver = "030" + std::to_string(g.integer(1, 3));
      for (int i = g.integer(1, 6); i > 0; --i) {
        const double start = std::round(t * 100) / 100;
        const double end = start + std::round(g.uniform(0.1, 9.0) * 100) / 100;
        s.utterances.push_back({start, end, "030" + std::to_string(g.integer(0, 3)), "text " + std::to_string(i) + " ?"});
        t = end + g.uniform(0.0, 2.0);
      }
      segs.push_back(std::move(s));
    }
    const auto text = format_transcript(segs);
    const auto back = parse_transcript(text);
    CHECK(back == segs);
    CHECK(format_transcript(back) == text);
  }
}

TEST_CASE("split_half splits at the time midpoint") {
  QuestionSegment two{1, std::nullopt, {{0, 10, "0301", "a"}, {10, 20, "0302", "b"}}};
  auto h = split_half(two);
  CHECK(h.first_half.size() == 1);
  CHECK(h.full.size() == 2);

  QuestionSegment one{1, std::nullopt, {{3, 4, "0301", "a"}}};
  h = split_half(one);
  CHECK(h.first_half == one.utterances);
  CHECK(h.full == one.utterances);

  CHECK_THROWS_AS(split_half(QuestionSegment{}), ValidationError);
}

TEST_CASE("split_half on seven utterances over [0,100] keeps exactly those starting before 50") {
  const std::vector<std::pair<double, double>> spans = {{0, 12}, {12, 30}, {30, 49.9}, {49.9, 50}, {50, 61}, {61, 80}, {80, 100}};
  QuestionSegment s;
  s.question_id = 4;
  for (const auto& [a, b] : spans) s.utterances.push_back({a, b, "0301", "x"});
  const auto h = split_half(s);
  std::vector<Utterance> oracle;
  for (const auto& u : s.utterances) {
    if (u.start < 50.0) oracle.push_back(u);
  }
  CHECK(h.first_half == oracle);
  CHECK(h.first_half.size() == 4);
}

TEST_CASE("split_half: first half is an ordered prefix of full") {
  testing::Gen g(99);
  for (int trial = 0; trial < 300; ++trial) {
    QuestionSegment s;
    s.question_id = 1;
    double t = g.uniform(0, 50);
    for (int i = g.integer(1, 12); i > 0; --i) {
      const double d = g.uniform(0.1, 20);
      s.utterances.push_back({t, t + d, "0301", "x"});
      t += g.uniform(0.0, 25);
    }
    const auto h = split_half(s);
    REQUIRE(h.first_half.size() <= h.full.size());
    CHECK(h.full == s.utterances);
    CHECK(std::equal(h.first_half.begin(), h.first_half.end(), h.full.begin()));
    CHECK(h.first_half.size() >= 1);
  }
}

namespace {

void write(const fs::path& p, const std::string& text) {
  fs::create_directories(p.parent_path());
  std::ofstream(p) << text;
}

fs::path make_group(const testing::TempDir& dir, const std::string& roster, const std::string& transcript) {
  const auto g = dir / "G01";
  write(g / "roster.json", roster);
  write(g / "transcript.txt", transcript);
  return g;
}

const char* kRoster = R"({"schema_version":1,"students":[{"id":"0301","major":"A","prior_score":60},
  {"id":"0302","major":"B","prior_score":70},{"id":"0303","major":"C","prior_score":80}]})";

}  // namespace

TEST_CASE("bundled fixture groups load with five questions and three students") {
  const auto cohort = load_cohort(testing::fixture_cohort());
  REQUIRE(cohort.sessions.size() == 4);
  CHECK(cohort.sessions[0].group_id == "G06");
  for (const auto& s : cohort.sessions) {
    CHECK(s.students.size() == 3);
    CHECK(s.segments.size() == 5);
    CHECK(s.code_submissions.size() == 5);
  }
  CHECK(cohort.questions.size() == 5);
  CHECK(cohort.sessions[1].media_ref == std::optional<std::string>("G10/media.mp4"));
  CHECK_FALSE(cohort.sessions[0].media_ref.has_value());
}

TEST_CASE("session invariants") {
  testing::TempDir dir("corpus");
  SUBCASE("two students") {
    const auto g = make_group(dir,
                              R"({"schema_version":1,"students":[{"id":"0301","prior_score":1},{"id":"0302","prior_score":2}]})",
                              "Question1\n0.0 1.0 0301 hi\n");
    try {
      load_session(g);
      FAIL("expected an error");
    } catch (const ValidationError& e) {
      CHECK(std::string(e.what()).find("group must have exactly 3 students") != std::string::npos);
    }
  }
  SUBCASE("unknown speaker") {
    const auto g = make_group(dir, kRoster, "Question1\n0.0 1.0 0309 hi\n");
    CHECK_THROWS_AS(load_session(g), ValidationError);
  }
  SUBCASE("instructor is allowed") {
    const auto g = make_group(dir, kRoster, "Question1 Driver: 0302\n0.0 1.0 0000 hi\n1.0 2.0 0301 yo\n");
    const auto s = load_session(g);
    CHECK(s.group_id == "G01");
    CHECK(s.segments.size() == 1);
  }
  SUBCASE("missing roster") {
    write(dir / "G02/transcript.txt", "Question1\n0.0 1.0 0301 hi\n");
    CHECK_THROWS_AS(load_session(dir / "G02"), ValidationError);
  }
  SUBCASE("duplicate question ids") {
    const auto g = make_group(dir, kRoster, "Question1\n0.0 1.0 0301 a\nQuestion1\n2.0 3.0 0302 b\n");
    CHECK_THROWS_AS(load_session(g), ValidationError);
  }
  SUBCASE("driver outside the roster") {
    const auto g = make_group(dir, kRoster, "Question1 Driver: 0304\n0.0 1.0 0301 a\n");
    CHECK_THROWS_AS(load_session(g), ValidationError);
  }
  SUBCASE("code for an unknown question") {
    const auto g = make_group(dir, kRoster, "Question1\n0.0 1.0 0301 a\n");
    write(g / "code/q7.py", "print(1)\n");
    CHECK_THROWS_AS(load_session(g), ValidationError);
  }
}

TEST_CASE("default scheme has fourteen categories over four colour groups") {
  const auto s = default_scheme();
  CHECK(s.size() == 14);
  CHECK_NOTHROW(validate_scheme(s));
  for (const char* name : {"Project understanding", "Unrelated chat", "Acknowledgement", "Question Planning",
                           "Python coding", "Debugging"}) {
    CHECK(s.contains(name));
  }
  CHECK(scheme_from_json(scheme_to_json(s)) == s);
}

TEST_CASE("scheme validation") {
  auto s = default_scheme();
  s.categories[1].name = s.categories[0].name;
  CHECK_THROWS_AS(validate_scheme(s), ValidationError);

  s = default_scheme();
  for (auto& c : s.categories) {
    if (c.color_group == 4) c.color_group = 3;
  }
  CHECK_THROWS_AS(validate_scheme(s), ValidationError);

  s = default_scheme();
  s.categories.pop_back();
  CHECK_THROWS_AS(validate_scheme(s), ValidationError);
}
