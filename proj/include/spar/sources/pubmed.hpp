#pragma once

#include "spar/sources/adapter.hpp"

namespace spar::sources {

/// PubMed E-utilities: esearch for ids, efetch for article metadata.
/// Temporal bounds map to mindate/maxdate on publication date.
class PubMedAdapter : public SourceAdapter {
 public:
  explicit PubMedAdapter(std::shared_ptr<net::HttpClient> http, std::string api_key = "",
                         std::string base_url = "https://eutils.ncbi.nlm.nih.gov");

  SourceKind kind() const override { return SourceKind::PubMed; }

  SearchPage search(const std::string& query, const TemporalConstraint& temporal,
                    int limit) override;

 private:
  std::shared_ptr<net::HttpClient> http_;
  std::string api_key_;
  std::string base_url_;
};

}  // namespace spar::sources
