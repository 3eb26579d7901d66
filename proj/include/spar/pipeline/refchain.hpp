#pragma once

#include <functional>
#include <memory>
#include <set>

#include "spar/pipeline/judgement.hpp"
#include "spar/sources/hub.hpp"
#include "spar/types.hpp"

namespace spar {

/// Single-layer citation expansion: fetch references of depth-0 pool
/// members, judge them against the initial query, and merge qualifying ones
/// back into the pool. Depth-1 members are never expanded.
class RefChain {
 public:
  struct Options {
    double threshold = 0.5;
    bool inclusive_threshold = false;
    int fanout_cap = 50;  // references judged per pool member
  };

  RefChain(std::shared_ptr<sources::SourceHub> hub, std::shared_ptr<Judgement> judgement,
           Options options);

  struct Stats {
    int members_expanded = 0;
    int references_fetched = 0;
    int references_admitted = 0;
  };

  /// `expanded_keys` tracks which members have already been expanded this
  /// run, so references are fetched at most once per member. `judge_memo`
  /// keeps scores by dedup key so nothing is judged twice for the same
  /// query. Source failures degrade to partial expansion.
  std::vector<JudgedPaper> expand(const UserQuery& query,
                                  const std::vector<JudgedPaper>& pool,
                                  std::set<std::string>& expanded_keys,
                                  std::map<std::string, RelevanceJudgement>& judge_memo,
                                  Stats* stats = nullptr);

 private:
  std::shared_ptr<sources::SourceHub> hub_;
  std::shared_ptr<Judgement> judgement_;
  Options options_;
};

}  // namespace spar
