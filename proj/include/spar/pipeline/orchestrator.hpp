#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "spar/llm/gateway.hpp"
#include "spar/pipeline/evolver.hpp"
#include "spar/pipeline/judgement.hpp"
#include "spar/pipeline/refchain.hpp"
#include "spar/pipeline/reranker.hpp"
#include "spar/pipeline/understanding.hpp"
#include "spar/sources/hub.hpp"
#include "spar/types.hpp"

namespace spar {

/// Stage switches for ablation studies.
struct Toggles {
  bool qinterp = true;
  bool refchain = true;
  bool evolution = true;
  bool rerank = true;
};

struct RunConfig {
  int cache_target = 50;  // K
  int max_iterations = 3;
  double threshold = 0.5;
  bool inclusive_threshold = false;
  int subset_size = 5;
  uint64_t seed = 0;
  int per_source_limit = 20;
  Toggles toggles;

  PromptVariant judge_variant = PromptVariant::Brief;
  std::string judge_model = "Qwen3-32B";
  std::string model = "Qwen3-32B";  // interpretation/evolution/rerank calls
  llm::LlmMode llm_mode = llm::LlmMode::Replay;

  int refchain_fanout_cap = 50;
  int evolution_paper_cap = 10;  // cache members evolved per iteration
  double jaccard_threshold = 0.8;
  int max_refinements = 8;
  int max_tokens = 1024;
  double evolve_temperature = 0.7;

  std::vector<SourceKind> source_allowlist;  // empty means "whatever is selected"

  void validate() const;
};

struct RunReport {
  SearchState state;  // final pipeline state, including the trajectory sets
  std::vector<Reranker::ScoredPaper> final_papers;
  std::vector<std::vector<std::string>> searched_per_iteration;
  std::vector<std::string> warnings;
  bool rerank_fallback = false;

  int64_t searches = 0;
  int64_t llm_calls = 0;
  int64_t papers_judged = 0;
  int64_t references_fetched = 0;
  double wall_seconds = 0.0;  // excluded from the artifact; replay-variant

  /// Deterministic line-delimited trajectory, one JSON event per line.
  std::vector<std::string> artifact_lines;

  void write_artifact(const std::filesystem::path& path) const;
  std::string artifact_text() const;
};

/// Drives the full loop: interpret, then per iteration search -> judge ->
/// expand -> select top-K -> evolve, until the cache target, the iteration
/// bound, or an empty query list stops it; then rerank.
class Orchestrator {
 public:
  Orchestrator(std::shared_ptr<sources::SourceHub> hub,
               std::shared_ptr<llm::LlmGateway> gateway, RunConfig config);

  RunReport run(const UserQuery& query);

  const RunConfig& config() const { return config_; }

 private:
  std::shared_ptr<sources::SourceHub> hub_;
  std::shared_ptr<llm::LlmGateway> gateway_;
  RunConfig config_;
};

/// Top K pool entries by score, ties broken by citation count, then year,
/// then dedup key. Total order, so selection is stable across runs.
std::vector<JudgedPaper> select_top_k(const std::vector<JudgedPaper>& pool, int k);

}  // namespace spar
