#pragma once

#include <atomic>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "spar/llm/transport.hpp"
#include "support/corpus.hpp"

namespace spar::testing {

/// Deterministic stand-in for a chat model. Recognizes each prompt family by
/// its fixed wording and answers from corpus tables: judge scores come from
/// SyntheticPaper::relevance, evolution and rerank come from maps keyed by
/// normalized title, interpretation blocks from query-substring rules.
class ScriptedTransport : public spar::llm::ChatTransport {
 public:
  explicit ScriptedTransport(std::shared_ptr<const SyntheticCorpus> corpus);

  std::string complete(const spar::llm::ChatRequest& request) override;

  /// Interpretation block served when the prompt's user query contains the
  /// substring (first match wins; insertion order preserved).
  void add_interpretation(const std::string& query_substring, std::string block);

  /// Evolution queries returned for a given paper title.
  void add_evolution(const std::string& title, std::vector<std::string> queries);

  /// Rerank score (0-10 scale, as the prompt example uses) for a title.
  /// Titles without an entry fall back to descending placement.
  void add_rerank_score(const std::string& title, double score);

  int64_t calls() const { return calls_.load(); }

  /// Scripted keyword extraction: content words of the query, order kept.
  static std::vector<std::string> keywords_for(const std::string& query);

 private:
  std::string judge_response(const std::string& prompt) const;
  std::string keyword_response(const std::string& prompt) const;
  std::string evolution_response(const std::string& prompt) const;
  std::string rerank_response(const std::string& prompt) const;
  std::string interpretation_response(const std::string& prompt) const;

  std::shared_ptr<const SyntheticCorpus> corpus_;
  std::vector<std::pair<std::string, std::string>> interpretations_;
  std::map<std::string, std::vector<std::string>> evolution_;  // normalized title key
  std::map<std::string, double> rerank_scores_;                // normalized title key
  std::atomic<int64_t> calls_{0};
};

/// Interpretation block in the labeled output format, for scripting.
std::string interpretation_block(const std::string& intent, const std::string& domain,
                                 const std::string& sources, bool needs_expansion,
                                 const std::vector<std::string>& expanded,
                                 const std::string& time_requirement,
                                 const std::string& source_reason = "scripted");

}  // namespace spar::testing
