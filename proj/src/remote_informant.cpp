#include <cstdlib>

#include "httplib.h"
#include "varinf/error.hpp"
#include "varinf/informant.hpp"

namespace varinf {
namespace {

// Splits "https://host:port/v1" into "https://host:port" and "/v1".
std::pair<std::string, std::string> split_base_url(const std::string& url) {
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) throw UsageError("base URL needs a scheme: " + url);
  const auto path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) return {url, ""};
  std::string prefix = url.substr(path_start);
  while (!prefix.empty() && prefix.back() == '/') prefix.pop_back();
  return {url.substr(0, path_start), prefix};
}

bool transient_status(int status) { return status == 408 || status == 409 || status == 429 || status >= 500; }

}  // namespace

RemoteLlmInformant::RemoteLlmInformant(RemoteConfig config) : config_(std::move(config)) {
  const char* key = std::getenv(config_.api_key_env.c_str());
  if (key == nullptr || *key == '\0') {
    throw UsageError("environment variable " + config_.api_key_env + " is not set");
  }
  api_key_ = key;
  std::tie(scheme_host_port_, path_prefix_) = split_base_url(config_.base_url);
#ifndef CPPHTTPLIB_OPENSSL_SUPPORT
  if (scheme_host_port_.rfind("https://", 0) == 0) throw UsageError("built without TLS support");
#endif
}

nlohmann::json RemoteLlmInformant::request_body(const RemoteConfig& config, std::string_view prompt) {
  nlohmann::json body;
  body["model"] = config.model;
  body["messages"] = nlohmann::json::array({{{"role", "user"}, {"content", std::string(prompt)}}});
  body["temperature"] = config.temperature;
  return body;
}

std::string RemoteLlmInformant::answer(const Question&, std::string_view prompt) {
  httplib::Client client(scheme_host_port_);
  client.set_connection_timeout(config_.timeout_seconds, 0);
  client.set_read_timeout(config_.timeout_seconds, 0);
  client.set_write_timeout(config_.timeout_seconds, 0);
  client.set_bearer_token_auth(api_key_);

  const auto body = request_body(config_, prompt).dump();
  auto res = client.Post(path_prefix_ + "/chat/completions", body, "application/json");
  if (!res) throw InformantError("request failed: " + httplib::to_string(res.error()), true);
  if (res->status != 200) {
    throw InformantError("HTTP " + std::to_string(res->status) + ": " + res->body.substr(0, 200),
                         transient_status(res->status));
  }
  try {
    auto reply = nlohmann::json::parse(res->body);
    return reply.at("choices").at(0).at("message").at("content").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw InformantError(std::string("unexpected response body: ") + e.what(), false);
  }
}

InformantDescriptor RemoteLlmInformant::descriptor() const {
  nlohmann::ordered_json params;
  params["model"] = config_.model;
  params["base_url"] = config_.base_url;
  params["api_key_env"] = config_.api_key_env;
  params["temperature"] = config_.temperature;
  params["timeout_seconds"] = config_.timeout_seconds;
  return {"remote-llm", params, true, false};
}

}  // namespace varinf
