#include <doctest.h>

#include <httplib.h>

#include <fstream>
#include <thread>

#include "collabscope/annotate/http_backend.hpp"
#include "collabscope/service/api.hpp"
#include "collabscope/service/pipeline.hpp"
#include "collabscope/service/server.hpp"
#include "test_support.hpp"

using namespace collabscope;
using namespace collabscope::service;
using nlohmann::json;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

/// Minimal chat-completion server on a background thread.
class FakeChatServer {
 public:
  explicit FakeChatServer(httplib::Server::Handler handler) {
    server_.Post("/v1/chat/completions", std::move(handler));
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~FakeChatServer() {
    server_.stop();
    thread_.join();
  }
  std::string endpoint() const { return "http://127.0.0.1:" + std::to_string(port_) + "/v1"; }

 private:
  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
};

annotate::ChatRequest sample_request() {
  annotate::ChatRequest r;
  r.task = annotate::Task::Behavior;
  r.temperature = 0.7;
  r.sample_index = 3;
  r.messages = {{"system", "You label utterances."}, {"user", "0.0 1.0 0101 hello"}};
  return r;
}

}  // namespace

TEST_CASE("API and media over a real socket") {
  testing::TempDir tmp("http");
  const auto result = run_pipeline(testing::fixture_cohort(), testing::fixture_config(tmp.path()));
  const Snapshot snap(result.snapshot_dir);
  const SnapshotStore store(snap);
  ApiServer server(store, testing::fixture_cohort());
  const int port = server.bind("127.0.0.1", 0);
  REQUIRE(port > 0);
  server.start();

  httplib::Client client("127.0.0.1", port);
  auto groups = client.Get("/api/groups");
  REQUIRE(groups);
  CHECK(groups->status == 200);
  CHECK(json::parse(groups->body).size() == 4);

  auto focus = client.Get("/api/groups/G10/transcript?q=5&t=733");
  REQUIRE(focus);
  CHECK(focus->status == 200);
  CHECK(json::parse(focus->body).at("focus_index") == 2);

  auto missing = client.Get("/api/groups/G77");
  REQUIRE(missing);
  CHECK(missing->status == 404);
  CHECK(json::parse(missing->body).at("error").at("code") == "unknown_group");

  const std::string media = slurp(testing::fixture_cohort() / "G10" / "media.mp4");
  REQUIRE(media.size() > 2048);
  auto whole = client.Get("/media/G10/media.mp4");
  REQUIRE(whole);
  CHECK(whole->status == 200);
  CHECK(whole->body == media);

  auto part = client.Get("/media/G10/media.mp4", {httplib::make_range_header({{1000, 1999}})});
  REQUIRE(part);
  CHECK(part->status == 206);
  CHECK(part->body == media.substr(1000, 1000));
  CHECK(part->get_header_value("Content-Range") == "bytes 1000-1999/" + std::to_string(media.size()));

  auto post = client.Post("/api/groups", "{}", "application/json");
  REQUIRE(post);
  CHECK(post->status != 200);

  server.stop();
}

TEST_CASE("missing media directory is rejected") {
  testing::TempDir tmp("nomedia");
  SnapshotBuilder b;
  b.add_json("cohort/groups.json", {{"groups", json::array()}});
  const Snapshot snap(b.commit(tmp.path()));
  const SnapshotStore store(snap);
  CHECK_THROWS_AS(ApiServer(store, tmp / "absent"), ValidationError);
  CHECK_NOTHROW(ApiServer(store, std::nullopt));
}

TEST_CASE("HTTP chat backend speaks the chat-completion protocol") {
  json seen;
  std::string auth;
  FakeChatServer fake([&](const httplib::Request& req, httplib::Response& res) {
    seen = json::parse(req.body);
    auth = req.get_header_value("Authorization");
    res.set_content(json{{"choices", {{{"message", {{"role", "assistant"}, {"content", "labelled"}}}}}}}.dump(),
                    "application/json");
  });
  annotate::HttpChatBackend backend({fake.endpoint(), "test-model", "secret", 100, std::chrono::seconds(5)});
  CHECK(backend.complete(sample_request()) == "labelled");
  CHECK(seen.at("model") == "test-model");
  CHECK(seen.at("temperature") == 0.7);
  CHECK(seen.at("seed") == 103);
  REQUIRE(seen.at("messages").size() == 2);
  CHECK(seen.at("messages")[0].at("role") == "system");
  CHECK(seen.at("messages")[1].at("content") == "0.0 1.0 0101 hello");
  CHECK(auth == "Bearer secret");
  CHECK(backend.fingerprint().find("test-model") != std::string::npos);
  CHECK(backend.fingerprint().find("secret") == std::string::npos);
}

TEST_CASE("HTTP chat backend failures surface as backend errors") {
  SUBCASE("server error") {
    FakeChatServer fake([](const httplib::Request&, httplib::Response& res) {
      res.status = 503;
      res.set_content("overloaded", "text/plain");
    });
    annotate::HttpChatBackend backend({fake.endpoint(), "m", std::nullopt, std::nullopt, std::chrono::seconds(5)});
    CHECK_THROWS_WITH_AS(backend.complete(sample_request()), doctest::Contains("503"), BackendError);
  }
  SUBCASE("malformed body") {
    FakeChatServer fake([](const httplib::Request&, httplib::Response& res) { res.set_content("{\"choices\": []}", "application/json"); });
    annotate::HttpChatBackend backend({fake.endpoint(), "m", std::nullopt, std::nullopt, std::chrono::seconds(5)});
    CHECK_THROWS_AS(backend.complete(sample_request()), BackendError);
  }
  SUBCASE("connection refused") {
    int port = 0;
    {
      httplib::Server probe;
      port = probe.bind_to_any_port("127.0.0.1");
    }
    annotate::HttpChatBackend backend(
        {"http://127.0.0.1:" + std::to_string(port), "m", std::nullopt, std::nullopt, std::chrono::seconds(2)});
    CHECK_THROWS_AS(backend.complete(sample_request()), BackendError);
  }
  CHECK_THROWS_AS(annotate::HttpChatBackend({"no-scheme", "m", std::nullopt, std::nullopt}), ValidationError);
  CHECK_THROWS_AS(annotate::HttpChatBackend({"http://x", "", std::nullopt, std::nullopt}), ValidationError);
}
