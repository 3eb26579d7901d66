#pragma once

#include <memory>

#include "spar/llm/gateway.hpp"
#include "spar/types.hpp"

namespace spar {

/// Judgement stage: score a paper's relevance to the initial query and
/// filter scored papers into the Related Pool.
class Judgement {
 public:
  struct Options {
    PromptVariant variant = PromptVariant::Brief;
    std::string model = "Qwen3-32B";
    double temperature = 0.0;
    int max_tokens = 1024;
  };

  Judgement(std::shared_ptr<llm::LlmGateway> gateway, Options options);

  /// Never aborts a run: transport trouble and unparseable output both
  /// degrade to a zero score with the parse_failed flag set. Replay misses
  /// still propagate; a missing recording is a broken fixture, not noise.
  RelevanceJudgement judge(const UserQuery& query, const PaperRecord& paper);

  /// Pairs scoring strictly above the threshold, order preserved. The
  /// inclusive flag switches to >= for sensitivity studies.
  static std::vector<JudgedPaper> filter_related(const std::vector<JudgedPaper>& judged,
                                                 double threshold,
                                                 bool inclusive = false);

  const Options& options() const { return options_; }

 private:
  std::shared_ptr<llm::LlmGateway> gateway_;
  Options options_;
};

}  // namespace spar
