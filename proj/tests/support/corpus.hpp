#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "spar/types.hpp"

namespace spar::testing {

/// One paper in the synthetic literature. Which sources carry it, which
/// query terms retrieve it, and how the scripted judge scores it are all
/// fixed up front so whole-pipeline runs are deterministic.
struct SyntheticPaper {
  std::string key;  // stable short id, e.g. "p01"
  std::string doi;  // empty = no DOI anywhere
  std::string title;
  std::string abstract_text;
  std::vector<std::string> authors;
  int year = 2020;
  std::string venue;
  int64_t citations = 0;
  std::vector<std::string> references;  // keys of referenced papers
  std::vector<std::string> terms;       // lowercase retrieval terms
  double relevance = 0.0;               // scripted judge score

  bool in_openalex = false;
  bool in_s2 = false;
  bool in_arxiv = false;
  bool in_pubmed = false;
  bool openalex_has_abstract = true;   // per-source metadata degradation
  std::string openalex_title;          // punctuation variant; empty = same title
};

struct SyntheticCorpus {
  std::vector<SyntheticPaper> papers;

  const SyntheticPaper* by_key(const std::string& key) const;
  const SyntheticPaper* by_title(const std::string& title) const;

  /// Papers whose terms occur in the lowercased query, in corpus order.
  std::vector<const SyntheticPaper*> match(const std::string& query) const;

  std::string openalex_id(const SyntheticPaper& paper) const;    // https://openalex.org/W...
  std::string s2_id(const SyntheticPaper& paper) const;          // opaque hash-like id
  std::string arxiv_id(const SyntheticPaper& paper) const;       // 24xx.0nnnn
  std::string pmid(const SyntheticPaper& paper) const;           // numeric string
  std::size_t index_of(const SyntheticPaper& paper) const;
};

/// The 30-paper fixture used by the end-to-end suites: a machine-learning
/// generalization literature with cross-source duplicates, a gold paper
/// reachable only through references, and enough spread in scores, years,
/// and citation counts to exercise every tie-break.
std::shared_ptr<SyntheticCorpus> make_corpus_30();

}  // namespace spar::testing
