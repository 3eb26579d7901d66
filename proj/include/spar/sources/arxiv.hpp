#pragma once

#include "spar/sources/adapter.hpp"

namespace spar::sources {

/// arXiv query API (Atom feed). The full query string is submitted as-is;
/// temporal bounds are applied as a year post-filter.
class ArxivAdapter : public SourceAdapter {
 public:
  explicit ArxivAdapter(std::shared_ptr<net::HttpClient> http,
                        std::string base_url = "http://export.arxiv.org");

  SourceKind kind() const override { return SourceKind::ArXiv; }

  SearchPage search(const std::string& query, const TemporalConstraint& temporal,
                    int limit) override;

 private:
  std::shared_ptr<net::HttpClient> http_;
  std::string base_url_;
};

}  // namespace spar::sources
