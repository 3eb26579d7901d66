#include "spar/pipeline/refchain.hpp"

#include <algorithm>

#include "spar/text.hpp"

namespace spar {

RefChain::RefChain(std::shared_ptr<sources::SourceHub> hub,
                   std::shared_ptr<Judgement> judgement, Options options)
    : hub_(std::move(hub)), judgement_(std::move(judgement)), options_(options) {}

std::vector<JudgedPaper> RefChain::expand(
    const UserQuery& query, const std::vector<JudgedPaper>& pool,
    std::set<std::string>& expanded_keys,
    std::map<std::string, RelevanceJudgement>& judge_memo, Stats* stats) {
  std::vector<JudgedPaper> updated = pool;
  std::set<std::string> pool_keys;
  for (const auto& member : pool) pool_keys.insert(dedup_key(member.paper));

  for (const auto& member : pool) {
    if (member.paper.refchain_depth != 0) continue;  // one layer, never deeper
    std::string member_key = dedup_key(member.paper);
    if (!expanded_keys.insert(member_key).second) continue;  // already expanded

    std::vector<PaperRecord> references = hub_->fetch_references(member.paper);
    if (stats) {
      ++stats->members_expanded;
      stats->references_fetched += static_cast<int>(references.size());
    }
    if (references.empty()) continue;

    // Judge the most-cited references first when counts exist; stable sort
    // keeps source order for the rest.
    std::stable_sort(references.begin(), references.end(),
                     [](const PaperRecord& a, const PaperRecord& b) {
                       return a.citation_count.value_or(-1) > b.citation_count.value_or(-1);
                     });
    if (static_cast<int>(references.size()) > options_.fanout_cap) {
      references.resize(options_.fanout_cap);
    }

    for (const auto& reference : references) {
      std::string key = dedup_key(reference);
      if (pool_keys.count(key)) continue;  // already admitted

      RelevanceJudgement judgement;
      auto memo = judge_memo.find(key);
      if (memo != judge_memo.end()) {
        judgement = memo->second;
      } else {
        judgement = judgement_->judge(query, reference);
        judge_memo.emplace(key, judgement);
      }

      bool admitted = options_.inclusive_threshold
                          ? judgement.score >= options_.threshold
                          : judgement.score > options_.threshold;
      if (!admitted) continue;

      updated.push_back({reference, judgement});
      pool_keys.insert(key);
      if (stats) ++stats->references_admitted;
    }
  }
  return updated;
}

}  // namespace spar
