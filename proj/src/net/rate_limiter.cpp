#include "spar/net/rate_limiter.hpp"

#include <thread>

#include "spar/errors.hpp"

namespace spar::net {

std::chrono::steady_clock::time_point SystemClock::now() {
  return std::chrono::steady_clock::now();
}

void SystemClock::sleep_until(std::chrono::steady_clock::time_point t) {
  std::this_thread::sleep_until(t);
}

RateLimiter::RateLimiter(int max_requests, std::chrono::milliseconds window,
                         std::shared_ptr<Clock> clock)
    : max_requests_(max_requests), window_(window), clock_(std::move(clock)) {
  if (max_requests_ < 1) throw ConfigInvalidError("rate_limit", "ceiling must be >= 1");
}

void RateLimiter::acquire() {
  std::lock_guard lock(mutex_);
  for (;;) {
    auto now = clock_->now();
    while (!issued_.empty() && issued_.front() + window_ <= now) issued_.pop_front();
    if (static_cast<int>(issued_.size()) < max_requests_) {
      issued_.push_back(now);
      return;
    }
    clock_->sleep_until(issued_.front() + window_);
  }
}

HostRateLimitedClient::HostRateLimitedClient(std::shared_ptr<HttpClient> inner)
    : inner_(std::move(inner)) {}

void HostRateLimitedClient::set_limit(const std::string& host_substring,
                                      std::shared_ptr<RateLimiter> limiter) {
  limits_.emplace_back(host_substring, std::move(limiter));
}

HttpResponse HostRateLimitedClient::get(const std::string& url,
                                        const std::map<std::string, std::string>& headers) {
  for (const auto& [host, limiter] : limits_) {
    if (url.find(host) != std::string::npos) {
      limiter->acquire();
      break;
    }
  }
  return inner_->get(url, headers);
}

}  // namespace spar::net
