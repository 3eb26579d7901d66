#pragma once

#include <map>
#include <memory>
#include <string>

namespace spar::net {

struct HttpResponse {
  int status = 0;
  std::string body;
  std::map<std::string, std::string> headers;
};

/// GET-only client interface; adapters never need anything else. Throws
/// TransportError / TimeoutError / RateLimitedError on failure, returns the
/// response (any status) otherwise.
class HttpClient {
 public:
  virtual ~HttpClient() = default;
  virtual HttpResponse get(const std::string& url,
                           const std::map<std::string, std::string>& headers = {}) = 0;
};

class HttplibHttpClient : public HttpClient {
 public:
  explicit HttplibHttpClient(int timeout_seconds = 30);
  HttpResponse get(const std::string& url,
                   const std::map<std::string, std::string>& headers) override;

 private:
  int timeout_seconds_;
};

/// Percent-encodes a query-parameter value (RFC 3986 unreserved set kept).
std::string url_encode(const std::string& value);

}  // namespace spar::net
