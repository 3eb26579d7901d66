#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "spar/llm/gateway.hpp"
#include "spar/sources/adapter.hpp"

namespace spar::sources {

/// Source-adaptive retrieval front end: keyword extraction for structured
/// sources, full-string submission for web search, reference fetching with
/// adapter fallback, and cross-source merging.
class SourceHub {
 public:
  struct Options {
    int per_source_limit = 20;
    int keyword_max_tokens = 256;
    std::string model;
    double keyword_temperature = 0.0;
  };

  SourceHub(std::vector<std::shared_ptr<SourceAdapter>> adapters,
            std::shared_ptr<llm::LlmGateway> gateway, Options options);

  /// Keyword extraction via the gateway. Only structured keyword sources
  /// (SemanticScholar, OpenAlex, PubMed) are valid here.
  std::vector<std::string> extract_keywords(const std::string& query, SourceKind source);

  /// Runs one query against one source: full string for Google/ArXiv,
  /// joined keywords for the rest. Temporal bounds are delegated to the
  /// adapter (native filter or post-filter).
  SearchPage search(SourceKind source, const std::string& query,
                    const TemporalConstraint& temporal, int limit);

  /// References of a depth-0 paper; tries SemanticScholar first, then
  /// OpenAlex. Rate-limit failures degrade to a partial list plus warning.
  std::vector<PaperRecord> fetch_references(const PaperRecord& paper);

  /// Cross-source merge: first occurrence per dedup key wins; missing fields
  /// of the winner are backfilled from its duplicates; first-seen order.
  static std::vector<PaperRecord> merge_dedup(const std::vector<PaperRecord>& records);
  static std::vector<PaperRecord> merge_dedup(const std::vector<SearchPage>& pages);

  /// Space-joined for SemanticScholar/OpenAlex, AND-joined for PubMed.
  static std::string join_keywords(const std::vector<std::string>& keywords,
                                   SourceKind source);

  bool has_adapter(SourceKind source) const;

  /// Accumulated soft-failure notes since the last drain.
  std::vector<std::string> drain_warnings();

 private:
  SourceAdapter& adapter(SourceKind source);
  void warn(const std::string& message);

  std::map<SourceKind, std::shared_ptr<SourceAdapter>> adapters_;
  std::shared_ptr<llm::LlmGateway> gateway_;
  Options options_;
  std::vector<std::string> warnings_;
  std::mutex warnings_mutex_;
};

}  // namespace spar::sources
