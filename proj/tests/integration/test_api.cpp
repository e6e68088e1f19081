#include <doctest.h>

#include <fstream>
#include <sstream>

#include "collabscope/ena/network.hpp"
#include "collabscope/service/api.hpp"
#include "collabscope/service/pipeline.hpp"
#include "test_support.hpp"

using namespace collabscope;
using namespace collabscope::service;
using nlohmann::json;

namespace {

/// One pipeline run shared by every case in this binary.
struct Fixture {
  testing::TempDir dir{"api"};
  std::unique_ptr<Snapshot> snapshot;
  std::unique_ptr<SnapshotStore> store;

  Fixture() {
    const auto result = run_pipeline(testing::fixture_cohort(), testing::fixture_config(dir.path()));
    snapshot = std::make_unique<Snapshot>(result.snapshot_dir);
    store = std::make_unique<SnapshotStore>(*snapshot);
  }
};

Fixture& fixture() {
  static Fixture f;
  return f;
}

ApiResponse get(std::string_view path, QueryParams query = {}) { return handle_request(*fixture().store, path, query); }

json body(const ApiResponse& r) { return json::parse(r.body); }

void expect_error(const ApiResponse& r, int status, const std::string& code) {
  CHECK(r.status == status);
  CHECK(body(r).at("error").at("code") == code);
  CHECK_FALSE(body(r).at("error").at("message").get<std::string>().empty());
}

struct Line {
  double start, end;
  std::string speaker;
};

/// Utterances of one question read straight from the fixture transcript.
std::vector<Line> fixture_question(const std::string& group, int q) {
  std::ifstream in(testing::fixture_cohort() / group / "transcript.txt");
  std::vector<Line> out;
  std::string line;
  bool inside = false;
  while (std::getline(in, line)) {
    if (line.rfind("Question", 0) == 0) {
      inside = std::stoi(line.substr(8)) == q;
      continue;
    }
    if (!inside || line.empty()) continue;
    std::istringstream ss(line);
    Line l;
    ss >> l.start >> l.end >> l.speaker;
    out.push_back(l);
  }
  return out;
}

}  // namespace

TEST_CASE("group overview and profiles") {
  const auto r = get("/api/groups");
  CHECK(r.status == 200);
  CHECK(r.content_type.find("application/json") != std::string::npos);
  const auto groups = body(r);
  REQUIRE(groups.is_array());
  CHECK(groups.size() == 4);
  CHECK(groups[0].at("group_id") == "G06");
  CHECK(get("/api/groups/").status == 200);

  const auto p = get("/api/groups/G20");
  CHECK(p.status == 200);
  CHECK(p.body == *fixture().store->raw("groups/G20/profile.json"));
  CHECK(body(p).at("quality").get<double>() == doctest::Approx(3.88).epsilon(0.01 / 3.88));
  expect_error(get("/api/groups/G99"), 404, "unknown_group");
  expect_error(get("/api/groups/G20/nonsense"), 404, "not_found");
  expect_error(get("/api/nothing"), 404, "not_found");
  expect_error(get("/elsewhere"), 404, "not_found");
}

TEST_CASE("similar groups") {
  const auto r = body(get("/api/groups/G10/similar"));
  CHECK(r.at("most_similar").at("group_id") == "G18");
  CHECK(r.at("most_different").at("group_id") == "G06");
  CHECK(r.at("most_similar").at("distance").get<double>() <= r.at("most_different").at("distance").get<double>());
  expect_error(get("/api/groups/G99/similar"), 404, "unknown_group");
}

TEST_CASE("timeline windows") {
  const auto full = get("/api/groups/G10/timeline");
  CHECK(full.status == 200);
  CHECK(full.body == *fixture().store->raw("groups/G10/timeline.json"));

  const auto q1 = body(get("/api/groups/G10/timeline", {{"q", "1"}}));
  CHECK(q1.at("question_id") == 1);
  const auto& bars = q1.at("bars");
  REQUIRE(bars.size() > 4);

  const double t0 = 20.0, t1 = 90.0;
  const auto win = body(get("/api/groups/G10/timeline", {{"q", "1"}, {"t0", "20"}, {"t1", "90"}}));
  std::size_t expected = 0;
  for (const auto& b : bars) expected += b.at("t0").get<double>() < t1 && b.at("t1").get<double>() > t0;
  CHECK(win.at("bars").size() == expected);
  for (const auto& b : win.at("bars")) {
    CHECK(b.at("t0").get<double>() >= t0);
    CHECK(b.at("t1").get<double>() <= t1);
  }

  expect_error(get("/api/groups/G10/timeline", {{"t0", "1"}, {"t1", "2"}}), 400, "bad_request");
  expect_error(get("/api/groups/G10/timeline", {{"q", "1"}, {"t0", "1"}}), 400, "bad_request");
  expect_error(get("/api/groups/G10/timeline", {{"q", "1"}, {"t0", "5"}, {"t1", "5"}}), 400, "bad_request");
  expect_error(get("/api/groups/G10/timeline", {{"q", "x"}}), 400, "bad_request");
  expect_error(get("/api/groups/G10/timeline", {{"q", "9"}}), 404, "unknown_question");
}

TEST_CASE("engagement and codes are served verbatim") {
  const auto e = get("/api/groups/G18/engagement");
  CHECK(e.status == 200);
  CHECK(e.body == *fixture().store->raw("groups/G18/engagement.json"));
  CHECK(body(e).at("points").size() == 3 * 2 * 5);
  const auto c = get("/api/groups/G18/codes");
  CHECK(c.body == *fixture().store->raw("groups/G18/codes.json"));
}

TEST_CASE("networks are recomputed for question selections") {
  const auto doc = *fixture().store->doc("groups/G18/networks.json");
  std::map<int, std::vector<std::string>> seqs;
  for (const auto& [q, s] : doc.at("sequences").items()) seqs[std::stoi(q)] = s.get<std::vector<std::string>>();

  const auto r = body(get("/api/groups/G18/network", {{"questions", "1,3"}, {"k", "3"}}));
  const std::vector<int> qs = {1, 3};
  const auto oracle = ena::network_to_json(ena::normalize_network(ena::network_for_range(seqs, qs, 3)));
  CHECK(r.at("edges") == oracle.at("edges"));
  CHECK(r.at("nodes") == oracle.at("nodes"));
  CHECK(r.at("k") == 3);
  CHECK(r.at("group_id") == "G18");

  const auto all = body(get("/api/groups/G18/network"));
  CHECK(all.at("k") == doc.at("k"));
  CHECK(all.at("range").size() == seqs.size());

  expect_error(get("/api/groups/G18/network", {{"questions", "1,9"}}), 404, "unknown_question");
  expect_error(get("/api/groups/G18/network", {{"k", "1"}}), 400, "bad_request");
  expect_error(get("/api/groups/G18/network", {{"questions", "one"}}), 400, "bad_request");
}

TEST_CASE("Q1 networks show more debugging for G18 than G10") {
  auto debugging = [](const json& net) {
    for (const auto& n : net.at("nodes")) {
      if (n.at("category") == "Debugging") return n.at("freq").get<double>();
    }
    return 0.0;
  };
  const auto g10 = body(get("/api/groups/G10/network", {{"questions", "1"}}));
  const auto g18 = body(get("/api/groups/G18/network", {{"questions", "1"}}));
  CHECK(debugging(g18) > debugging(g10));
}

TEST_CASE("transcript focus follows an interval oracle") {
  const auto lines = fixture_question("G10", 5);
  REQUIRE_FALSE(lines.empty());
  for (double t : {lines.front().start, 733.0, 760.25, lines.back().end - 0.05, lines.back().end, 0.0}) {
    const auto r = body(get("/api/groups/G10/transcript", {{"q", "5"}, {"t", std::to_string(t)}}));
    CHECK(r.at("media_ref") == "G10/media.mp4");
    CHECK(r.at("question_id") == 5);
    const auto& utts = r.at("utterances");
    REQUIRE(utts.size() == lines.size());
    json expect_focus = nullptr;
    for (std::size_t i = 0; i < lines.size(); ++i) {
      const bool hit = lines[i].start <= t && t < lines[i].end;
      CHECK(utts[i].at("focus") == hit);
      CHECK(utts[i].at("speaker") == lines[i].speaker);
      if (hit && expect_focus.is_null()) expect_focus = i;
    }
    CHECK(r.at("focus_index") == expect_focus);
  }
  const auto nofocus = body(get("/api/groups/G10/transcript", {{"q", "5"}}));
  CHECK(nofocus.at("focus_index").is_null());
  CHECK_FALSE(nofocus.at("utterances")[0].contains("focus"));

  const auto full = get("/api/groups/G10/transcript");
  CHECK(full.body == *fixture().store->raw("groups/G10/transcript.json"));
  expect_error(get("/api/groups/G10/transcript", {{"t", "3"}}), 400, "bad_request");
  expect_error(get("/api/groups/G10/transcript", {{"q", "5"}, {"t", "abc"}}), 400, "bad_request");
  expect_error(get("/api/groups/G10/transcript", {{"q", "6"}}), 404, "unknown_question");
}

TEST_CASE("students and projections") {
  const auto s = body(get("/api/students/1802"));
  CHECK(s.at("id") == "1802");
  CHECK(s.at("group_id") == "G18");
  expect_error(get("/api/students/9999"), 404, "unknown_student");

  const auto g = get("/api/projection");
  CHECK(g.body == *fixture().store->raw("cohort/projection_groups.json"));
  CHECK(body(g).at("points").size() == 4);
  const auto st = body(get("/api/projection", {{"level", "student"}}));
  CHECK(st.at("points").size() == 12);
  expect_error(get("/api/projection", {{"level", "galaxy"}}), 400, "bad_request");
}
