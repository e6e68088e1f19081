#include "collabscope/annotate/http_backend.hpp"

#include <httplib.h>

#include <json.hpp>

namespace collabscope::annotate {

HttpChatBackend::HttpChatBackend(HttpBackendConfig config) : config_(std::move(config)) {
  const auto scheme_end = config_.endpoint.find("://");
  if (scheme_end == std::string::npos) throw ValidationError("backend endpoint must include a scheme: " + config_.endpoint);
  const auto path_start = config_.endpoint.find('/', scheme_end + 3);
  origin_ = config_.endpoint.substr(0, path_start);
  std::string base = path_start == std::string::npos ? "" : config_.endpoint.substr(path_start);
  while (!base.empty() && base.back() == '/') base.pop_back();
  path_ = base + "/chat/completions";
  if (config_.model.empty()) throw ValidationError("backend model name is empty");
}

std::string HttpChatBackend::fingerprint() const {
  std::string fp = "http/1 " + config_.endpoint + " model=" + config_.model;
  if (config_.seed) fp += " seed=" + std::to_string(*config_.seed);
  return fp;
}

std::string HttpChatBackend::complete(const ChatRequest& request) {
  nlohmann::json body = {{"model", config_.model}, {"temperature", request.temperature}, {"messages", nlohmann::json::array()}};
  for (const auto& m : request.messages) body["messages"].push_back({{"role", m.role}, {"content", m.content}});
  if (config_.seed) body["seed"] = *config_.seed + static_cast<std::uint64_t>(request.sample_index);

  httplib::Client client(origin_);
  client.set_connection_timeout(config_.timeout);
  client.set_read_timeout(config_.timeout);
  client.set_write_timeout(config_.timeout);
  httplib::Headers headers;
  if (config_.api_key) headers.emplace("Authorization", "Bearer " + *config_.api_key);

  auto res = client.Post(path_, headers, body.dump(), "application/json");
  if (!res) throw BackendError("chat request to " + origin_ + " failed: " + httplib::to_string(res.error()));
  if (res->status < 200 || res->status >= 300) {
    throw BackendError("chat endpoint returned HTTP " + std::to_string(res->status) + ": " + res->body.substr(0, 200));
  }
  const auto reply = nlohmann::json::parse(res->body, nullptr, false);
  try {
    if (reply.is_discarded()) throw BackendError("chat endpoint returned a non-JSON body");
    return reply.at("choices").at(0).at("message").at("content").get<std::string>();
  } catch (const nlohmann::json::exception&) {
    throw BackendError("chat endpoint reply lacks choices[0].message.content");
  }
}

}  // namespace collabscope::annotate
