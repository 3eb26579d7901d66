#pragma once

#include <chrono>
#include <deque>
#include <memory>
#include <mutex>

namespace spar::net {

/// Time source, injectable so limiter behavior is testable without waiting.
class Clock {
 public:
  virtual ~Clock() = default;
  virtual std::chrono::steady_clock::time_point now() = 0;
  virtual void sleep_until(std::chrono::steady_clock::time_point t) = 0;
};

class SystemClock : public Clock {
 public:
  std::chrono::steady_clock::time_point now() override;
  void sleep_until(std::chrono::steady_clock::time_point t) override;
};

/// Sliding-window limiter: at most `max_requests` acquisitions per `window`.
/// acquire() blocks (via the clock) until a slot frees up.
class RateLimiter {
 public:
  RateLimiter(int max_requests, std::chrono::milliseconds window,
              std::shared_ptr<Clock> clock = std::make_shared<SystemClock>());

  void acquire();

 private:
  int max_requests_;
  std::chrono::milliseconds window_;
  std::shared_ptr<Clock> clock_;
  std::mutex mutex_;
  std::deque<std::chrono::steady_clock::time_point> issued_;
};

}  // namespace spar::net

#include "spar/net/http_client.hpp"

namespace spar::net {

/// Applies a per-host rate ceiling to outgoing requests. Sits *under* the
/// response cache so cache hits never consume rate budget.
class HostRateLimitedClient : public HttpClient {
 public:
  explicit HostRateLimitedClient(std::shared_ptr<HttpClient> inner);

  /// Requests whose URL contains `host_substring` go through `limiter`.
  void set_limit(const std::string& host_substring, std::shared_ptr<RateLimiter> limiter);

  HttpResponse get(const std::string& url,
                   const std::map<std::string, std::string>& headers) override;

 private:
  std::shared_ptr<HttpClient> inner_;
  std::vector<std::pair<std::string, std::shared_ptr<RateLimiter>>> limits_;
};

}  // namespace spar::net
