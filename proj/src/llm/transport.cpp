#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>

#include "spar/llm/transport.hpp"

#include <json.hpp>

#include "spar/errors.hpp"
#include "spar/text.hpp"

namespace spar::llm {

void ChatRequest::validate() const {
  if (trim(prompt).empty()) throw ValidationError("chat prompt is empty");
  if (temperature < 0.0) throw ValidationError("negative temperature");
  if (max_tokens <= 0) throw ValidationError("max_tokens must be positive");
}

namespace {

// Splits "https://host/path" into (scheme://host, /path).
std::pair<std::string, std::string> split_endpoint(const std::string& endpoint) {
  auto scheme_end = endpoint.find("://");
  std::size_t host_start = scheme_end == std::string::npos ? 0 : scheme_end + 3;
  auto path_start = endpoint.find('/', host_start);
  if (path_start == std::string::npos) return {endpoint, "/"};
  return {endpoint.substr(0, path_start), endpoint.substr(path_start)};
}

}  // namespace

HttpChatTransport::HttpChatTransport(Options options) : options_(std::move(options)) {
  if (options_.endpoint.empty()) {
    throw ConfigInvalidError("llm_endpoint", "live mode needs an endpoint URL");
  }
}

std::string HttpChatTransport::complete(const ChatRequest& request) {
  auto [base, path] = split_endpoint(options_.endpoint);
  httplib::Client client(base);
  client.set_connection_timeout(options_.timeout_seconds);
  client.set_read_timeout(options_.timeout_seconds);
  if (!options_.api_key.empty()) {
    client.set_default_headers({{"Authorization", "Bearer " + options_.api_key}});
  }

  nlohmann::json payload = {
      {"model", request.model},
      {"messages", {{{"role", "user"}, {"content", request.prompt}}}},
      {"temperature", request.temperature},
      {"max_tokens", request.max_tokens},
  };

  auto result = client.Post(path, payload.dump(), "application/json");
  if (!result) {
    auto err = result.error();
    if (err == httplib::Error::ConnectionTimeout || err == httplib::Error::Read) {
      throw TimeoutError("chat endpoint timed out");
    }
    throw TransportError("chat endpoint unreachable: " + httplib::to_string(err));
  }
  if (result->status == 429) {
    double retry_after = 1.0;
    if (result->has_header("Retry-After")) {
      try {
        retry_after = std::stod(result->get_header_value("Retry-After"));
      } catch (const std::exception&) {
      }
    }
    throw RateLimitedError("chat endpoint rate limited", retry_after);
  }
  if (result->status != 200) {
    throw TransportError("chat endpoint returned HTTP " + std::to_string(result->status));
  }

  auto doc = nlohmann::json::parse(result->body, nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded()) throw TransportError("chat endpoint returned malformed JSON");
  try {
    return doc.at("choices").at(0).at("message").at("content").get<std::string>();
  } catch (const nlohmann::json::exception&) {
    throw TransportError("chat response missing choices[0].message.content");
  }
}

}  // namespace spar::llm
