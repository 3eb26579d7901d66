#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "spar/net/http_client.hpp"
#include "spar/types.hpp"

namespace spar::sources {

/// One page of results from one source for one executed query.
struct SearchPage {
  std::vector<PaperRecord> records;  // all depth 0, all from `source`
  SourceKind source = SourceKind::Google;
  std::string query_used;
  std::optional<int64_t> total_available;

  void validate() const;
};

/// A connector for one academic source. `search` returns direct hits
/// (depth 0); `references` resolves a paper's outgoing reference list, or an
/// empty vector when the source cannot resolve the paper.
class SourceAdapter {
 public:
  virtual ~SourceAdapter() = default;

  virtual SourceKind kind() const = 0;

  virtual SearchPage search(const std::string& query, const TemporalConstraint& temporal,
                            int limit) = 0;

  virtual std::vector<PaperRecord> references(const PaperRecord& paper) {
    (void)paper;
    return {};
  }
};

/// Year post-filter for sources without native date parameters.
bool within_bounds(const std::optional<int>& year, const TemporalConstraint& temporal);

}  // namespace spar::sources
