#include <doctest.h>

#include <set>

#include "collabscope/ena/network.hpp"
#include "test_support.hpp"

using namespace collabscope;
using namespace collabscope::ena;

namespace {

using Seq = std::vector<std::string>;

/// Direct stanza count: every window start, binary per distinct pair.
std::map<std::pair<std::string, std::string>, double> oracle_edges(const Seq& s, int k) {
  std::map<std::pair<std::string, std::string>, double> out;
  const std::size_t n = s.size();
  const std::size_t ku = static_cast<std::size_t>(k);
  const std::size_t starts = n <= ku ? (n > 0 ? 1 : 0) : n - ku + 1;
  for (std::size_t w = 0; w < starts; ++w) {
    std::set<std::pair<std::string, std::string>> seen;
    for (std::size_t i = w; i < std::min(n, w + ku); ++i) {
      for (std::size_t j = i + 1; j < std::min(n, w + ku); ++j) {
        if (s[i] == s[j]) continue;
        seen.insert(std::minmax(s[i], s[j]));
      }
    }
    for (const auto& e : seen) out[e] += 1.0;
  }
  return out;
}

Seq random_seq(testing::Gen& g, int n) {
  static const char* cats[] = {"A", "B", "C", "D", "E"};
  Seq s;
  for (int i = 0; i < n; ++i) s.push_back(cats[g.integer(0, 4)]);
  return s;
}

}  // namespace

TEST_CASE("behavior network hand counts") {
  const auto ab = build_behavior_network(Seq{"A", "B"}, 2);
  CHECK(ab.edge("A", "B") == 1);
  CHECK(ab.edge("B", "A") == 1);
  CHECK(ab.nodes.at("A") == 1);
  CHECK(ab.nodes.at("B") == 1);

  const auto same = build_behavior_network(Seq{"A", "A", "A", "A"}, 3);
  CHECK(same.edges.empty());
  CHECK(same.nodes.size() == 1);
  CHECK(same.nodes.at("A") == 4);

  const auto aba = build_behavior_network(Seq{"A", "B", "A"}, 2);
  CHECK(aba.edge("A", "B") == 2);

  const auto shorter = build_behavior_network(Seq{"A", "B", "C"}, 4);
  CHECK(shorter.edges.size() == 3);
  CHECK(shorter.edge("A", "C") == 1);

  CHECK(build_behavior_network(Seq{}, 2).edges.empty());
  CHECK_THROWS_AS(build_behavior_network(Seq{"A"}, 1), ValidationError);
}

TEST_CASE("behavior network matches a window-enumeration oracle") {
  testing::Gen g(17);
  for (int trial = 0; trial < 300; ++trial) {
    const auto s = random_seq(g, g.integer(0, 30));
    const int k = g.integer(2, 6);
    const auto net = build_behavior_network(s, k);
    CHECK(net.edges == oracle_edges(s, k));
    double total = 0;
    for (const auto& [_, f] : net.nodes) total += f;
    CHECK(total == double(s.size()));
  }
}

TEST_CASE("ranges add per-question networks") {
  testing::Gen g(23);
  for (int trial = 0; trial < 100; ++trial) {
    const std::map<int, Seq> by_q = {{1, random_seq(g, g.integer(0, 15))}, {2, random_seq(g, g.integer(0, 15))},
                                     {3, random_seq(g, g.integer(0, 15))}};
    const int k = g.integer(2, 5);
    const std::vector<int> q1 = {1};
    const auto single = network_for_range(by_q, q1, k);
    const auto direct = build_behavior_network(by_q.at(1), k);
    CHECK(single.edges == direct.edges);
    CHECK(single.nodes == direct.nodes);

    const std::vector<int> q13 = {1, 3};
    const auto both = network_for_range(by_q, q13, k);
    const auto n3 = build_behavior_network(by_q.at(3), k);
    auto expect = direct.edges;
    for (const auto& [e, w] : n3.edges) expect[e] += w;
    CHECK(both.edges == expect);
    CHECK(both.questions == q13);
  }
  const std::map<int, Seq> by_q = {{1, {"A", "B"}}};
  CHECK(network_for_range(by_q, std::vector<int>{}, 2).edges.empty());
  CHECK_THROWS_AS(network_for_range(by_q, std::vector<int>{7}, 2), ValidationError);
}

TEST_CASE("normalized networks are scale invariant and peak at one") {
  testing::Gen g(29);
  for (int trial = 0; trial < 100; ++trial) {
    const auto net = build_behavior_network(random_seq(g, g.integer(2, 25)), 3);
    auto doubled = net;
    for (auto& [_, w] : doubled.edges) w *= 2;
    for (auto& [_, f] : doubled.nodes) f *= 2;
    const auto [a, b] = compare_networks(net, doubled);
    CHECK(a.edge_norm == b.edge_norm);
    CHECK(a.node_norm == b.node_norm);
    const auto [c, d] = compare_networks(net, net);
    CHECK(c.edge_norm == d.edge_norm);
    if (!net.edges.empty()) {
      double mx = 0;
      for (const auto& [_, w] : a.edge_norm) {
        CHECK(w >= 0.0);
        CHECK(w <= 1.0);
        mx = std::max(mx, w);
      }
      CHECK(mx == 1.0);
    }
  }
}

TEST_CASE("network json layout") {
  const std::vector<int> q = {1};
  const auto j = network_to_json(normalize_network(network_for_range({{1, {"A", "B", "A"}}}, q, 2)));
  CHECK(j.at("k") == 2);
  CHECK(j.at("range") == nlohmann::json::array({1}));
  REQUIRE(j.at("edges").size() == 1);
  CHECK(j.at("edges")[0].at("w") == 2.0);
  CHECK(j.at("edges")[0].at("norm") == 1.0);
  CHECK(j.at("nodes")[0].at("category") == "A");
  CHECK(j.at("nodes")[0].at("freq") == 2.0);
}
