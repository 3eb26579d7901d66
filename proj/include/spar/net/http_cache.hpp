#pragma once

#include <filesystem>
#include <memory>
#include <mutex>
#include <string>

#include "spar/net/http_client.hpp"

namespace spar::net {

/// On-disk response cache keyed by full request URL: one body file per
/// request hash plus a manifest mapping hash to URL. Entries never expire;
/// benchmark runs must see identical responses forever. `bypass` skips
/// reads but still stores fresh responses.
class CachedHttpClient : public HttpClient {
 public:
  CachedHttpClient(std::shared_ptr<HttpClient> inner, std::filesystem::path dir,
                   bool bypass = false);

  HttpResponse get(const std::string& url,
                   const std::map<std::string, std::string>& headers) override;

  static std::string url_hash(const std::string& url);

  /// Number of entries listed in the manifest.
  static std::size_t entry_count(const std::filesystem::path& dir);
  static void clear(const std::filesystem::path& dir);

 private:
  void store(const std::string& url, const HttpResponse& response);

  std::shared_ptr<HttpClient> inner_;
  std::filesystem::path dir_;
  bool bypass_;
  std::mutex write_mutex_;
};

}  // namespace spar::net
