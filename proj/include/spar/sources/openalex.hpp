#pragma once

#include <map>

#include "spar/sources/adapter.hpp"

namespace spar::sources {

/// OpenAlex works endpoint. Abstracts arrive as inverted indexes and are
/// reconstructed; temporal bounds map to publication-date filters.
class OpenAlexAdapter : public SourceAdapter {
 public:
  explicit OpenAlexAdapter(std::shared_ptr<net::HttpClient> http,
                           std::string base_url = "https://api.openalex.org");

  SourceKind kind() const override { return SourceKind::OpenAlex; }

  SearchPage search(const std::string& query, const TemporalConstraint& temporal,
                    int limit) override;

  std::vector<PaperRecord> references(const PaperRecord& paper) override;

  /// "Attention" at positions {0}, "is" at {1}... back to running text.
  static std::string rebuild_abstract(
      const std::map<std::string, std::vector<int>>& inverted);

 private:
  std::shared_ptr<net::HttpClient> http_;
  std::string base_url_;
};

}  // namespace spar::sources
