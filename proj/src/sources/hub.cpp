#include "spar/sources/hub.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "spar/errors.hpp"
#include "spar/llm/parsers.hpp"
#include "spar/text.hpp"

namespace spar::sources {

namespace {

bool is_keyword_source(SourceKind source) {
  return source == SourceKind::SemanticScholar || source == SourceKind::OpenAlex ||
         source == SourceKind::PubMed;
}

// The keyword-extraction prompt spells sources the way its guidelines do.
std::string prompt_source_name(SourceKind source) {
  switch (source) {
    case SourceKind::SemanticScholar: return "Semantic Scholar";
    case SourceKind::OpenAlex: return "OpenAlex";
    case SourceKind::PubMed: return "PubMed";
    default: return to_string(source);
  }
}

void backfill(PaperRecord& winner, const PaperRecord& duplicate) {
  if (winner.abstract_text.empty()) winner.abstract_text = duplicate.abstract_text;
  if (winner.authors.empty()) winner.authors = duplicate.authors;
  if (!winner.year) winner.year = duplicate.year;
  if (!winner.venue) winner.venue = duplicate.venue;
  if (!winner.citation_count) winner.citation_count = duplicate.citation_count;
  if (!winner.reference_ids) winner.reference_ids = duplicate.reference_ids;
}

}  // namespace

SourceHub::SourceHub(std::vector<std::shared_ptr<SourceAdapter>> adapters,
                     std::shared_ptr<llm::LlmGateway> gateway, Options options)
    : gateway_(std::move(gateway)), options_(std::move(options)) {
  for (auto& adapter : adapters) {
    adapters_[adapter->kind()] = std::move(adapter);
  }
}

bool SourceHub::has_adapter(SourceKind source) const { return adapters_.count(source) > 0; }

SourceAdapter& SourceHub::adapter(SourceKind source) {
  auto it = adapters_.find(source);
  if (it == adapters_.end()) {
    throw WrongSourceKindError("no adapter registered for " + to_string(source));
  }
  return *it->second;
}

std::vector<std::string> SourceHub::extract_keywords(const std::string& query,
                                                     SourceKind source) {
  if (!is_keyword_source(source)) {
    throw WrongSourceKindError(to_string(source) +
                               " takes the full query string, not keywords");
  }
  llm::GenerationParams params;
  params.temperature = options_.keyword_temperature;
  params.max_tokens = options_.keyword_max_tokens;
  params.model = options_.model;
  std::string response = gateway_->complete(
      llm::TemplateId::KeywordExtraction,
      {{"source", prompt_source_name(source)}, {"user_query", query}}, params);
  return llm::parse_keywords(response);
}

std::string SourceHub::join_keywords(const std::vector<std::string>& keywords,
                                     SourceKind source) {
  std::string separator = source == SourceKind::PubMed ? " AND " : " ";
  std::string joined;
  for (const auto& keyword : keywords) {
    if (!joined.empty()) joined += separator;
    joined += keyword;
  }
  return joined;
}

SearchPage SourceHub::search(SourceKind source, const std::string& query,
                             const TemporalConstraint& temporal, int limit) {
  if (limit < 1) throw ConfigInvalidError("limit", "must be >= 1");
  if (limit > options_.per_source_limit) {
    throw ConfigInvalidError("limit", "exceeds per-source cap of " +
                                          std::to_string(options_.per_source_limit));
  }

  std::string submitted = query;
  if (is_keyword_source(source)) {
    submitted = join_keywords(extract_keywords(query, source), source);
  }

  SearchPage page = adapter(source).search(submitted, temporal, limit);
  page.query_used = query;  // the pipeline tracks the q_i, not the joined terms
  for (auto& record : page.records) record.retrieved_by = query;
  page.validate();
  return page;
}

std::vector<PaperRecord> SourceHub::fetch_references(const PaperRecord& paper) {
  if (paper.refchain_depth != 0) {
    throw ValidationError("references are only expanded for depth-0 papers");
  }

  std::vector<PaperRecord> refs;
  for (SourceKind kind : {SourceKind::SemanticScholar, SourceKind::OpenAlex}) {
    auto it = adapters_.find(kind);
    if (it == adapters_.end()) continue;
    try {
      refs = it->second->references(paper);
    } catch (const RateLimitedError& e) {
      warn("reference fetch rate limited for " + paper.canonical_id + ": " + e.what());
      break;  // partial (possibly empty) result rather than an aborted run
    } catch (const TransportError& e) {
      warn("reference fetch failed on " + to_string(kind) + " for " + paper.canonical_id +
           ": " + e.what());
      continue;
    }
    if (!refs.empty()) break;
  }

  for (auto& record : refs) {
    record.refchain_depth = 1;
    record.retrieved_by = paper.canonical_id;
    record.validate();
  }
  return refs;
}

std::vector<PaperRecord> SourceHub::merge_dedup(const std::vector<PaperRecord>& records) {
  std::vector<PaperRecord> merged;
  std::map<std::string, std::size_t> by_key;
  for (const auto& record : records) {
    std::string key = dedup_key(record);
    auto [it, inserted] = by_key.emplace(key, merged.size());
    if (inserted) {
      merged.push_back(record);
    } else {
      backfill(merged[it->second], record);
    }
  }
  return merged;
}

std::vector<PaperRecord> SourceHub::merge_dedup(const std::vector<SearchPage>& pages) {
  std::vector<PaperRecord> flat;
  for (const auto& page : pages) {
    flat.insert(flat.end(), page.records.begin(), page.records.end());
  }
  return merge_dedup(flat);
}

void SourceHub::warn(const std::string& message) {
  std::lock_guard lock(warnings_mutex_);
  warnings_.push_back(message);
}

std::vector<std::string> SourceHub::drain_warnings() {
  std::lock_guard lock(warnings_mutex_);
  std::vector<std::string> out;
  out.swap(warnings_);
  return out;
}

}  // namespace spar::sources
