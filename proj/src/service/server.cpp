#include "collabscope/service/server.hpp"

#include <httplib.h>

#include "collabscope/util/error.hpp"

namespace collabscope::service {

ApiServer::ApiServer(const SnapshotStore& store, std::optional<std::filesystem::path> media_dir)
    : server_(std::make_unique<httplib::Server>()) {
  server_->Get(R"(/api(/.*)?)", [&store](const httplib::Request& req, httplib::Response& res) {
    QueryParams query;
    for (const auto& [k, v] : req.params) query.emplace(k, v);  // first value wins
    const auto r = handle_request(store, req.path, query);
    res.status = r.status;
    res.set_content(r.body, r.content_type);
  });
  if (media_dir) {
    if (!server_->set_mount_point("/media", media_dir->string())) {
      throw ValidationError("media directory does not exist: " + media_dir->string());
    }
  }
}

ApiServer::~ApiServer() { stop(); }

int ApiServer::bind(const std::string& host, int port) {
  const int bound = port == 0 ? server_->bind_to_any_port(host) : (server_->bind_to_port(host, port) ? port : -1);
  if (bound < 0) throw ValidationError("cannot bind " + host + ":" + std::to_string(port));
  return bound;
}

void ApiServer::start() {
  thread_ = std::thread([this] { server_->listen_after_bind(); });
  server_->wait_until_ready();
}

void ApiServer::run() { server_->listen_after_bind(); }

void ApiServer::stop() {
  server_->stop();
  if (thread_.joinable()) thread_.join();
}

}  // namespace collabscope::service
