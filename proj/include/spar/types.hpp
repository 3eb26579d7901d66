#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "spar/date.hpp"

namespace spar {

/// The fixed set of academic sources the pipeline can query.
enum class SourceKind { Google, ArXiv, OpenAlex, SemanticScholar, PubMed };

inline constexpr SourceKind kAllSources[] = {
    SourceKind::Google, SourceKind::ArXiv, SourceKind::OpenAlex,
    SourceKind::SemanticScholar, SourceKind::PubMed};

std::string to_string(SourceKind kind);

/// Case-insensitive mapping of names like "pubmed" or "Semantic Scholar".
/// Returns nullopt for anything outside the fixed set.
std::optional<SourceKind> parse_source(const std::string& name);

/// Coarse query intent used to steer refinement and source choice.
enum class Intent { Survey, RecentAdvances, MethodComparison, Other };

std::string to_string(Intent intent);

/// Maps a free-text intent description onto the nearest Intent member.
Intent classify_intent(const std::string& text);

/// The user's search request. `search_time` is the benchmark cutoff date,
/// when evaluating against labels collected at a point in time.
struct UserQuery {
  std::string text;
  std::optional<Date> search_time;

  void validate() const;  // text nonempty after trimming
};

/// Date bounds detected in the query ("since 2020" and the like).
struct TemporalConstraint {
  std::optional<Date> lower;
  std::optional<Date> upper;
  bool required = false;

  void validate() const;  // lower <= upper when both present

  /// Human-readable form of the bounds, e.g. "2020-2025" or "since 2020".
  /// Empty when no bound is present.
  std::string bound_text() const;

  /// True when every year present in the bounds appears in `text`.
  bool satisfied_by(const std::string& text) const;
};

/// Structured output of the query-understanding stage.
struct QueryInterpretation {
  Intent intent = Intent::Other;
  std::string intent_text;  // the model's original wording
  std::string domain;
  TemporalConstraint temporal;
  std::vector<SourceKind> sources;  // ordered, distinct, nonempty
  bool needs_expansion = false;
  std::string expansion_reason;
  std::vector<std::string> refined_queries;  // ordered, pairwise distinct
  std::string source_reason;

  void validate() const;
};

/// One retrieved document. `refchain_depth` is 0 for direct hits and 1 for
/// papers found by following a direct hit's references; nothing deeper exists.
struct PaperRecord {
  std::string canonical_id;  // DOI, source identifier, or URL
  std::string title;
  std::string abstract_text;  // may be empty
  std::vector<std::string> authors;
  std::optional<int> year;
  std::optional<std::string> venue;
  std::optional<int64_t> citation_count;
  SourceKind source = SourceKind::Google;
  int refchain_depth = 0;
  std::string retrieved_by;  // the query (or parent id) that produced it
  std::optional<std::vector<std::string>> reference_ids;

  void validate() const;
};

enum class PromptVariant { Brief, Complex };

std::string to_string(PromptVariant variant);

/// Relevance score plus the judge's stated reasoning.
struct RelevanceJudgement {
  double score = 0.0;  // in [0, 1]
  std::string reasoning;
  PromptVariant prompt_variant = PromptVariant::Brief;
  std::string judge_model;
  bool parse_failed = false;  // set when the judge output could not be parsed

  void validate() const;
};

struct JudgedPaper {
  PaperRecord paper;
  RelevanceJudgement judgement;
};

/// Live state of one retrieval run: the pending query list, the history of
/// executed queries, the Related Pool, and the top-K Paper Cache.
struct SearchState {
  UserQuery initial_query;
  QueryInterpretation interpretation;
  std::vector<std::string> pending_queries;
  std::vector<std::string> searched_queries;  // insertion-ordered, unique
  std::vector<JudgedPaper> related_pool;      // unique by dedup key
  std::vector<JudgedPaper> paper_cache;       // at most K entries
  int iteration = 0;

  bool already_searched(const std::string& query) const;
};

struct MetricCounts {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
};

/// A gold answer: the fields a benchmark file may carry for one document.
struct GoldStub {
  std::string canonical_id;  // may be empty when only a title is known
  std::string title;
  std::optional<std::string> abstract_text;
  std::vector<std::string> authors;
  std::optional<int> year;
  std::optional<int64_t> citation_count;
  std::optional<SourceKind> source;
};

/// One benchmark query plus its expert-labeled relevant documents.
struct BenchmarkCase {
  std::string question;
  std::optional<Date> search_time;
  std::vector<GoldStub> answers;

  void validate() const;
};

}  // namespace spar
