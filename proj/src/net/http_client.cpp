#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>

#include "spar/net/http_client.hpp"

#include "spar/errors.hpp"

namespace spar::net {

HttplibHttpClient::HttplibHttpClient(int timeout_seconds)
    : timeout_seconds_(timeout_seconds) {}

HttpResponse HttplibHttpClient::get(const std::string& url,
                                    const std::map<std::string, std::string>& headers) {
  auto scheme_end = url.find("://");
  std::size_t host_start = scheme_end == std::string::npos ? 0 : scheme_end + 3;
  auto path_start = url.find('/', host_start);
  std::string base = path_start == std::string::npos ? url : url.substr(0, path_start);
  std::string path = path_start == std::string::npos ? "/" : url.substr(path_start);

  httplib::Client client(base);
  client.set_connection_timeout(timeout_seconds_);
  client.set_read_timeout(timeout_seconds_);
  client.set_follow_location(true);

  httplib::Headers request_headers;
  for (const auto& [k, v] : headers) request_headers.emplace(k, v);

  auto result = client.Get(path, request_headers);
  if (!result) {
    auto err = result.error();
    if (err == httplib::Error::ConnectionTimeout || err == httplib::Error::Read) {
      throw TimeoutError("GET " + url + " timed out");
    }
    throw TransportError("GET " + url + " failed: " + httplib::to_string(err));
  }
  if (result->status == 429) {
    double retry_after = 1.0;
    if (result->has_header("Retry-After")) {
      try {
        retry_after = std::stod(result->get_header_value("Retry-After"));
      } catch (const std::exception&) {
      }
    }
    throw RateLimitedError("GET " + url + " rate limited", retry_after);
  }

  HttpResponse response;
  response.status = result->status;
  response.body = result->body;
  for (const auto& [k, v] : result->headers) response.headers[k] = v;
  return response;
}

std::string url_encode(const std::string& value) {
  static const char* hex = "0123456789ABCDEF";
  std::string out;
  out.reserve(value.size() * 3 / 2);
  for (unsigned char c : value) {
    if (std::isalnum(c) || c == '-' || c == '_' || c == '.' || c == '~') {
      out.push_back(static_cast<char>(c));
    } else {
      out.push_back('%');
      out.push_back(hex[c >> 4]);
      out.push_back(hex[c & 0xF]);
    }
  }
  return out;
}

}  // namespace spar::net
