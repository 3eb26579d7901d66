#pragma once

#include <functional>
#include <map>

#include "spar/sources/adapter.hpp"

namespace spar::sources {

/// A single web search hit; only title and URL are reliably recoverable.
struct WebResult {
  std::string title;
  std::string url;
  std::string snippet;
  std::optional<int> year;
};

/// Pluggable web-search backend for the Google source. No official API is
/// assumed; deployments supply their own provider.
class WebSearchProvider {
 public:
  virtual ~WebSearchProvider() = default;
  virtual std::vector<WebResult> search(const std::string& query, int limit) = 0;
};

/// Default provider: returns nothing. Keeps the Google source wired without
/// scraping anybody.
class NullWebSearchProvider : public WebSearchProvider {
 public:
  std::vector<WebResult> search(const std::string&, int) override { return {}; }
};

/// Canned results keyed by query substring; for tests and offline demos.
class FixtureWebSearchProvider : public WebSearchProvider {
 public:
  void add(const std::string& query_substring, WebResult result);
  std::vector<WebResult> search(const std::string& query, int limit) override;

 private:
  std::vector<std::pair<std::string, WebResult>> fixtures_;
};

/// Google source adapter: submits the full query string to the provider and
/// maps hits onto records (title + URL, empty abstract).
class GoogleAdapter : public SourceAdapter {
 public:
  explicit GoogleAdapter(std::shared_ptr<WebSearchProvider> provider);

  SourceKind kind() const override { return SourceKind::Google; }

  SearchPage search(const std::string& query, const TemporalConstraint& temporal,
                    int limit) override;

 private:
  std::shared_ptr<WebSearchProvider> provider_;
};

}  // namespace spar::sources
