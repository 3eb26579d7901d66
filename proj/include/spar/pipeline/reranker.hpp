#pragma once

#include <memory>
#include <vector>

#include "spar/llm/gateway.hpp"
#include "spar/types.hpp"

namespace spar {

/// Reranker stage: reorders the top of the cache by authority and
/// timeliness, re-scoring through the rerank prompt.
class Reranker {
 public:
  struct Options {
    std::string model;
    double temperature = 0.0;
    int max_tokens = 2048;
    int window = 10;  // documents sent to the prompt; the rest keep their order
  };

  Reranker(std::shared_ptr<llm::LlmGateway> gateway, Options options);

  struct ScoredPaper {
    PaperRecord paper;
    double score = 0.0;
  };

  struct Outcome {
    std::vector<ScoredPaper> ranked;
    bool fallback = false;  // completion unusable; input order preserved
    std::vector<std::string> warnings;
  };

  /// Permutes the top-`window` papers by descending new score; papers past
  /// the window follow in their original order. `time_required` selects the
  /// prompt variant. Any malformed or incomplete completion (after one
  /// retry) falls back to the input order with the original scores.
  Outcome rerank(const UserQuery& query, const std::vector<JudgedPaper>& papers,
                 bool time_required);

  /// Maps a raw prompt score onto [0,1]: values above 1 are read as a 0-10
  /// scale and divided by 10; anything still outside is clamped.
  static double normalize_score(double raw, bool* clamped = nullptr);

  /// The numbered document list rendered into the prompt.
  static std::string format_doc_list(const std::vector<JudgedPaper>& papers);

 private:
  std::shared_ptr<llm::LlmGateway> gateway_;
  Options options_;
};

}  // namespace spar
