#include <doctest.h>

#include "collabscope/timeline/roles.hpp"
#include "collabscope/timeline/runs.hpp"
#include "collabscope/timeline/smoothing.hpp"
#include "collabscope/timeline/timeline.hpp"
#include "test_support.hpp"

using namespace collabscope;
using namespace collabscope::timeline;

TEST_CASE("moving average examples") {
  CHECK(smooth_confidences(std::vector<double>{50, 50, 50}, 3) == std::vector<double>{50, 50, 50});
  CHECK(smooth_confidences(std::vector<double>{80, 20, 80}, 3) == std::vector<double>{50, 60, 50});
  CHECK(smooth_confidences(std::vector<double>{42}, 7) == std::vector<double>{42});
  CHECK(smooth_confidences(std::vector<double>{}, 3).empty());
  CHECK_THROWS_AS(smooth_confidences(std::vector<double>{1, 2}, 2), ValidationError);
  CHECK_THROWS_AS(smooth_confidences(std::vector<double>{1, 2}, 0), ValidationError);
}

TEST_CASE("moving average matches a direct window oracle") {
  testing::Gen g(5);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> v(static_cast<std::size_t>(g.integer(1, 30)));
    for (auto& x : v) x = g.uniform(0, 100);
    const int w = 2 * g.integer(0, 4) + 1;
    const auto out = smooth_confidences(v, w);
    REQUIRE(out.size() == v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
      double sum = 0;
      int n = 0;
      for (int d = -w / 2; d <= w / 2; ++d) {
        const auto j = static_cast<std::ptrdiff_t>(i) + d;
        if (j < 0 || j >= static_cast<std::ptrdiff_t>(v.size())) continue;
        sum += v[static_cast<std::size_t>(j)];
        ++n;
      }
      CHECK(out[i] == doctest::Approx(sum / n).epsilon(1e-12));
    }
  }
}

namespace {

TimedLabel label(std::size_t i, double t0, double t1, std::string cat, double conf) {
  return {{1, i}, t0, t1, std::move(cat), conf};
}

}  // namespace

TEST_CASE("merge examples") {
  const std::vector<TimedLabel> aab = {label(0, 0, 2, "A", 90), label(1, 2, 4, "A", 70), label(2, 4, 5, "B", 60)};
  const auto runs = merge_runs(aab);
  REQUIRE(runs.size() == 2);
  CHECK(runs[0].category == "A");
  CHECK(runs[0].mean_confidence == 80);
  CHECK(runs[0].start == 0);
  CHECK(runs[0].end == 4);
  CHECK(runs[0].members.size() == 2);
  CHECK(runs[1].mean_confidence == 60);

  const std::vector<TimedLabel> aba = {label(0, 0, 1, "A", 11), label(1, 1, 2, "B", 22), label(2, 2, 3, "A", 33)};
  const auto alt = merge_runs(aba);
  REQUIRE(alt.size() == 3);
  CHECK(alt[0].mean_confidence == 11);
  CHECK(alt[1].mean_confidence == 22);
  CHECK(alt[2].mean_confidence == 33);

  CHECK(merge_runs(std::vector<TimedLabel>{}).empty());
}

TEST_CASE("unweighted merging averages members equally") {
  const std::vector<TimedLabel> v = {label(0, 0, 1, "A", 90), label(1, 1, 4, "A", 60)};
  CHECK(merge_runs(v, RunWeighting::Duration)[0].mean_confidence == doctest::Approx(67.5));
  CHECK(merge_runs(v, RunWeighting::Unweighted)[0].mean_confidence == doctest::Approx(75));
}

TEST_CASE("merged members concatenate back to the input order") {
  testing::Gen g(8);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<TimedLabel> v;
    double t = 0;
    for (int i = g.integer(0, 25); i > 0; --i) {
      const double d = g.integer(1, 8) * 0.25;
      v.push_back(label(v.size(), t, t + d, std::string(1, static_cast<char>('A' + g.integer(0, 2))), g.integer(0, 100)));
      t += d + g.integer(0, 4) * 0.25;
    }
    const auto runs = merge_runs(v);
    std::vector<corpus::UtteranceRef> refs;
    for (std::size_t r = 0; r < runs.size(); ++r) {
      if (r > 0) CHECK(runs[r].category != runs[r - 1].category);
      for (const auto& m : runs[r].members) refs.push_back(m.ref);
    }
    REQUIRE(refs.size() == v.size());
    for (std::size_t i = 0; i < v.size(); ++i) CHECK(refs[i] == v[i].ref);
  }
}

TEST_CASE("window filter") {
  MergedRun r{"A", 10, 20, 77, {{{1, 0}, 10, 14}, {{1, 1}, 14, 20}}};
  const std::vector<MergedRun> runs = {r};
  auto out = window_filter<MergedRun>(runs, 15, 30);
  REQUIRE(out.size() == 1);
  CHECK(out[0].start == 15);
  CHECK(out[0].end == 20);
  CHECK(out[0].mean_confidence == 77);
  REQUIRE(out[0].members.size() == 1);
  CHECK(out[0].members[0].t0 == 15);

  CHECK(window_filter<MergedRun>(runs, 0, 100).front().start == 10);
  CHECK(window_filter<MergedRun>(runs, 0, 100).front().members.size() == 2);
  CHECK(window_filter<MergedRun>(runs, 20, 30).empty());
  CHECK(window_filter<MergedRun>(runs, 0, 10).empty());
  CHECK_THROWS_AS(window_filter<MergedRun>(runs, 30, 15), ValidationError);
  CHECK_THROWS_AS(window_filter<MergedRun>(runs, 15, 15), ValidationError);
}

TEST_CASE("nested windows compose") {
  testing::Gen g(12);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<ConfidenceBar> bars;
    double t = 0;
    for (int i = g.integer(1, 15); i > 0; --i) {
      const double d = g.uniform(0.5, 5);
      bars.push_back({{1, bars.size()}, t, t + d, "A", 50, 50, "", std::nullopt});
      t += d + g.uniform(0, 2);
    }
    const double a = g.uniform(0, t), b = a + g.uniform(0.1, t);
    const double c = g.uniform(a, b), d = g.uniform(c + 1e-6, b);
    if (!(c < d)) continue;
    const auto outer = window_filter<ConfidenceBar>(bars, a, b);
    const auto twice = window_filter<ConfidenceBar>(outer, c, d);
    const auto once = window_filter<ConfidenceBar>(bars, c, d);
    REQUIRE(twice.size() == once.size());
    for (std::size_t i = 0; i < once.size(); ++i) {
      CHECK(twice[i].ref == once[i].ref);
      CHECK(twice[i].t0 == once[i].t0);
      CHECK(twice[i].t1 == once[i].t1);
    }
  }
}

TEST_CASE("role strips") {
  const std::vector<corpus::SpeakerId> students = {"0301", "0302", "0303"};
  corpus::QuestionSegment seg{2, "0302", {{58.1, 60.5, "0302", "q"}, {60.5, 70, "0000", "teacher talk"}}};
  std::vector<annotate::RoleAssignment> roles(2);
  roles[0].ref = {2, 0};
  roles[0].roles = {"0302", {"0301", "0303"}, {"None"}};
  roles[1].ref = {2, 1};
  roles[1].roles = {std::nullopt, {"0301", "0302", "0303"}, {"None"}};
  const auto strip = build_role_strip(seg, roles, students);
  REQUIRE(strip.size() == 6);
  CHECK(strip[0].role == annotate::Role::Monitor);
  CHECK(strip[1].role == annotate::Role::Navigator);
  CHECK(strip[2].role == annotate::Role::Monitor);
  CHECK(strip[1].t0 == 58.1);
  for (int i = 3; i < 6; ++i) CHECK(strip[static_cast<std::size_t>(i)].role == annotate::Role::Monitor);

  CHECK(build_role_strip(seg, {}, students).empty());
  roles[0].roles = {"0302", {"0301"}, {"None"}};
  CHECK_THROWS_AS(build_role_strip(seg, roles, students), ValidationError);
}

TEST_CASE("timeline assembly and JSON round trip") {
  const std::vector<corpus::SpeakerId> students = {"0301", "0302", "0303"};
  corpus::QuestionSegment seg{1, "0301", {{0, 2, "0301", "a"}, {2, 4, "0302", "b"}, {4, 6, "0000", "c"}, {6, 8, "0303", "d"}}};
  std::vector<annotate::BehaviorAnnotation> beh = {
      {{1, 0}, "Debugging", 90, "e0", std::nullopt},
      {{1, 1}, "Debugging", 30, "e1", "Debuging"},
      {{1, 2}, "Project understanding", 60, "e2", std::nullopt},
      {{1, 3}, "Debugging", 60, "e3", std::nullopt},
  };
  std::vector<annotate::ScaffoldEvent> sc = {{{1, 2}, annotate::ScaffoldKind::MediumControl, 85, "hint"}};
  const auto tl = build_timeline(seg, beh, {}, sc, students);
  REQUIRE(tl.bars.size() == 4);
  CHECK(tl.bars[0].raw_confidence == 90);
  CHECK(tl.bars[0].smoothed_confidence == 60);
  CHECK(tl.bars[1].smoothed_confidence == 60);
  REQUIRE(tl.runs.size() == 3);
  CHECK(tl.runs[0].mean_confidence == doctest::Approx(60));  // built from smoothed values
  REQUIRE(tl.scaffolds.size() == 1);
  CHECK(tl.scaffolds[0].t0 == 4);

  const auto j = timeline_to_json(tl);
  CHECK(j["question_id"] == 1);
  CHECK(j["bars"][0]["confidence"] == 60.0);
  CHECK(j["bars"][1]["model_category"] == "Debuging");
  const auto back = timeline_from_json(j);
  CHECK(timeline_to_json(back) == j);

  const auto zoom = window_filter(tl, 3, 5);
  CHECK(zoom.bars.size() == 2);
  CHECK(zoom.scaffolds.size() == 1);
  CHECK(zoom.bars.front().t0 == 3);

  std::vector<annotate::BehaviorAnnotation> short_beh(beh.begin(), beh.begin() + 2);
  CHECK_THROWS_AS(build_timeline(seg, short_beh, {}, sc, students), ValidationError);
}

TEST_CASE("merge conserves duration and the duration-weighted confidence") {
  testing::Gen g(77);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<TimedLabel> labels;
    double t = 0.0;
    const int n = g.integer(1, 30);
    for (int i = 0; i < n; ++i) {
      t += g.integer(0, 3) * 0.25;
      const double dur = g.integer(1, 32) * 0.125;
      labels.push_back(label(static_cast<std::size_t>(i), t, t + dur, g.integer(0, 1) ? "A" : "B", g.uniform(0, 100)));
      t += dur;
    }
    const auto runs = merge_runs(labels);
    double in_d = 0, out_d = 0, in_w = 0, out_w = 0;
    for (const auto& l : labels) {
      in_d += l.t1 - l.t0;
      in_w += l.confidence * (l.t1 - l.t0);
    }
    for (std::size_t i = 0; i < runs.size(); ++i) {
      if (i > 0) CHECK(runs[i].category != runs[i - 1].category);
      out_d += runs[i].duration();
      out_w += runs[i].mean_confidence * runs[i].duration();
    }
    CHECK(in_d == out_d);
    CHECK(std::abs(in_w / in_d - out_w / out_d) <= 1e-9);
  }
}

TEST_CASE("moving average keeps constants and stays within the input range") {
  testing::Gen g(78);
  for (int trial = 0; trial < 500; ++trial) {
    const int w = 2 * g.integer(0, 5) + 1;
    std::vector<double> v(static_cast<std::size_t>(g.integer(1, 40)));
    const double c = g.uniform(0, 100);
    std::fill(v.begin(), v.end(), c);
    for (double x : smooth_confidences(v, w)) CHECK(x == doctest::Approx(c).epsilon(1e-12));
    for (auto& x : v) x = g.uniform(0, 100);
    const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    for (double x : smooth_confidences(v, w)) {
      CHECK(x >= *lo - 1e-12);
      CHECK(x <= *hi + 1e-12);
    }
  }
}
