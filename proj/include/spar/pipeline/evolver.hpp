#pragma once

#include <memory>
#include <vector>

#include "spar/llm/gateway.hpp"
#include "spar/types.hpp"

namespace spar {

/// Query Evolver stage: trajectory-conditioned follow-up queries from cached
/// papers, filtered for novelty before re-queuing.
class QueryEvolver {
 public:
  struct Options {
    std::string model;
    double temperature = 0.7;  // diversity matters here, unlike judging
    int max_tokens = 512;
    int queries_per_paper = 3;
    double jaccard_threshold = 0.8;
  };

  QueryEvolver(std::shared_ptr<llm::LlmGateway> gateway, Options options);

  /// New queries conditioned on the search trajectory and one cached paper.
  /// Best-effort: gateway or parse trouble yields an empty list, and any
  /// returned string equal to an already-searched one is dropped.
  std::vector<std::string> evolve(const UserQuery& initial,
                                  const std::vector<std::string>& searched,
                                  const PaperRecord& paper, int n = 0);

  /// Novelty filter plus seeded random subset: exact duplicates against
  /// searched and pending go first, then candidates whose token-set Jaccard
  /// similarity with any searched query reaches the threshold, then a
  /// uniform subset of the survivors is drawn. Deterministic per seed.
  std::vector<std::string> select_and_filter(const std::vector<std::string>& candidates,
                                             const std::vector<std::string>& searched,
                                             const std::vector<std::string>& pending,
                                             int subset_size, uint64_t seed) const;

  const Options& options() const { return options_; }

 private:
  std::shared_ptr<llm::LlmGateway> gateway_;
  Options options_;
};

}  // namespace spar
