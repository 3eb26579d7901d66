#include "spar/net/http_cache.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "spar/errors.hpp"

namespace spar::net {

namespace {

uint64_t fnv1a(const std::string& data) {
  uint64_t hash = 1469598103934665603ull;
  for (unsigned char c : data) {
    hash ^= c;
    hash *= 1099511628211ull;
  }
  return hash;
}

std::filesystem::path manifest_path(const std::filesystem::path& dir) {
  return dir / "manifest.json";
}

}  // namespace

CachedHttpClient::CachedHttpClient(std::shared_ptr<HttpClient> inner,
                                   std::filesystem::path dir, bool bypass)
    : inner_(std::move(inner)), dir_(std::move(dir)), bypass_(bypass) {
  std::filesystem::create_directories(dir_);
}

std::string CachedHttpClient::url_hash(const std::string& url) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(fnv1a(url)));
  return buf;
}

HttpResponse CachedHttpClient::get(const std::string& url,
                                   const std::map<std::string, std::string>& headers) {
  auto body_file = dir_ / (url_hash(url) + ".body");
  if (!bypass_ && std::filesystem::exists(body_file)) {
    std::ifstream in(body_file, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    HttpResponse response;
    response.status = 200;
    response.body = buffer.str();
    return response;
  }

  HttpResponse response = inner_->get(url, headers);
  if (response.status == 200) store(url, response);
  return response;
}

void CachedHttpClient::store(const std::string& url, const HttpResponse& response) {
  std::lock_guard lock(write_mutex_);
  std::string hash = url_hash(url);
  {
    std::ofstream out(dir_ / (hash + ".body"), std::ios::binary);
    out << response.body;
  }
  nlohmann::json manifest = nlohmann::json::object();
  if (std::filesystem::exists(manifest_path(dir_))) {
    std::ifstream in(manifest_path(dir_));
    manifest = nlohmann::json::parse(in, nullptr, /*allow_exceptions=*/false);
    if (manifest.is_discarded()) manifest = nlohmann::json::object();
  }
  manifest[hash] = url;
  std::ofstream out(manifest_path(dir_));
  out << manifest.dump(2) << "\n";
}

std::size_t CachedHttpClient::entry_count(const std::filesystem::path& dir) {
  if (!std::filesystem::exists(manifest_path(dir))) return 0;
  std::ifstream in(manifest_path(dir));
  auto manifest = nlohmann::json::parse(in, nullptr, /*allow_exceptions=*/false);
  if (manifest.is_discarded()) return 0;
  return manifest.size();
}

void CachedHttpClient::clear(const std::filesystem::path& dir) {
  if (!std::filesystem::exists(dir)) return;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.path().extension() == ".body" || entry.path().filename() == "manifest.json") {
      std::filesystem::remove(entry.path());
    }
  }
}

}  // namespace spar::net
