#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <thread>

#include "collabscope/service/api.hpp"

namespace httplib {
class Server;
}

namespace collabscope::service {

/// Read-only HTTP front end: GET /api/... through handle_request and, when a
/// media directory is given, static byte-range files under /media/.
class ApiServer {
 public:
  ApiServer(const SnapshotStore& store, std::optional<std::filesystem::path> media_dir);
  ~ApiServer();
  ApiServer(const ApiServer&) = delete;
  ApiServer& operator=(const ApiServer&) = delete;

  /// Binds the socket; port 0 picks a free port. Returns the bound port.
  int bind(const std::string& host, int port);
  /// Serves on a background thread until stop().
  void start();
  /// Serves on the calling thread until stop() is called elsewhere.
  void run();
  void stop();

 private:
  std::unique_ptr<httplib::Server> server_;
  std::thread thread_;
};

}  // namespace collabscope::service
