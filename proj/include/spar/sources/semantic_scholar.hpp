#pragma once

#include "spar/sources/adapter.hpp"

namespace spar::sources {

/// Semantic Scholar Graph API: paper search plus the references endpoint.
/// An API key (optional) raises the rate ceiling.
class SemanticScholarAdapter : public SourceAdapter {
 public:
  explicit SemanticScholarAdapter(std::shared_ptr<net::HttpClient> http,
                                  std::string api_key = "",
                                  std::string base_url = "https://api.semanticscholar.org");

  SourceKind kind() const override { return SourceKind::SemanticScholar; }

  SearchPage search(const std::string& query, const TemporalConstraint& temporal,
                    int limit) override;

  std::vector<PaperRecord> references(const PaperRecord& paper) override;

 private:
  std::map<std::string, std::string> headers() const;
  std::shared_ptr<net::HttpClient> http_;
  std::string api_key_;
  std::string base_url_;
};

}  // namespace spar::sources
