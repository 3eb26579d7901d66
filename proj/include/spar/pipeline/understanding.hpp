#pragma once

#include <memory>

#include "spar/llm/gateway.hpp"
#include "spar/types.hpp"

namespace spar {

/// Query Understanding stage: interpret the user query, decide sources and
/// expansion, and seed the query list.
class QueryUnderstanding {
 public:
  struct Options {
    std::string model;
    double temperature = 0.0;
    int max_tokens = 1024;
    int max_refinements = 8;
  };

  QueryUnderstanding(std::shared_ptr<llm::LlmGateway> gateway, Options options);

  /// Full interpretation with the post-processing the pipeline relies on:
  /// source fallback, refinement cap and dedup, temporal-bound repair.
  QueryInterpretation interpret(const UserQuery& query);

  /// The initial query list: the original text first, then refinements,
  /// deduplicated preserving first occurrence.
  static std::vector<std::string> build_query_list(const QueryInterpretation& interp,
                                                   const UserQuery& query);

  /// Interpretation used when the understanding stage is toggled off: the
  /// original query against every structured source.
  static QueryInterpretation passthrough(const UserQuery& query);

 private:
  std::shared_ptr<llm::LlmGateway> gateway_;
  Options options_;
};

}  // namespace spar
