#pragma once

#include <string>
#include <vector>

#include "spar/types.hpp"

namespace spar::llm {

struct ScoredResponse {
  double score = 0.0;
  std::string reasoning;
};

/// Pulls the first "Score:" line's numeric value and the "Reasoning:" text;
/// the two fields may appear in either order. Values within rounding slack
/// of [0,1] are clamped; anything further out is an error.
ScoredResponse parse_score(const std::string& text);

/// First well-formed JSON array of strings in the text, tolerating
/// surrounding prose and code fences. Order preserved.
std::vector<std::string> parse_string_array(const std::string& text);

/// Comma-split, trimmed, nonempty tokens between the first "[Start]" and the
/// following "[End]".
std::vector<std::string> parse_keywords(const std::string& text);

struct RerankEntry {
  int index = 0;  // 1-based position in the document list sent
  double score = 0.0;
  std::string justification;
};

/// Entries from "Document [index]: [score] - [justification]" lines, in
/// order of appearance. Indices must be unique and within [1, n]. Scores are
/// returned as written; scale normalization is the reranker's job.
std::vector<RerankEntry> parse_rerank(const std::string& text, int n);

/// Parses the labeled interpretation block ("Query Intent", "Suitable
/// Sources", "Needs Expansion", ...). In lenient mode, source names outside
/// the fixed set are skipped instead of raising UnknownSourceError.
QueryInterpretation parse_interpretation(const std::string& text, bool lenient = false);

}  // namespace spar::llm
