#include "spar/pipeline/reranker.hpp"

#include <algorithm>
#include <cstdio>

#include "spar/errors.hpp"
#include "spar/llm/parsers.hpp"

namespace spar {

Reranker::Reranker(std::shared_ptr<llm::LlmGateway> gateway, Options options)
    : gateway_(std::move(gateway)), options_(std::move(options)) {}

double Reranker::normalize_score(double raw, bool* clamped) {
  if (clamped) *clamped = false;
  double score = raw;
  if (score > 1.0) score /= 10.0;  // the prompt's own example uses a 0-10 scale
  if (score > 1.0) {
    score = 1.0;
    if (clamped) *clamped = true;
  }
  if (score < 0.0) {
    score = 0.0;
    if (clamped) *clamped = true;
  }
  return score;
}

std::string Reranker::format_doc_list(const std::vector<JudgedPaper>& papers) {
  std::string out;
  for (std::size_t i = 0; i < papers.size(); ++i) {
    const auto& paper = papers[i].paper;
    std::string authors;
    for (const auto& author : paper.authors) {
      if (!authors.empty()) authors += ", ";
      authors += author;
    }
    char score_buf[16];
    std::snprintf(score_buf, sizeof(score_buf), "%.2f", papers[i].judgement.score);
    if (!out.empty()) out += "\n";
    out += "Document " + std::to_string(i + 1) + ": Title: " + paper.title +
           " | Year: " + (paper.year ? std::to_string(*paper.year) : "unknown") +
           " | Venue: " + paper.venue.value_or("unknown") +
           " | Authors: " + (authors.empty() ? "unknown" : authors) +
           " | Relevance: " + score_buf;
  }
  return out;
}

Reranker::Outcome Reranker::rerank(const UserQuery& query,
                                   const std::vector<JudgedPaper>& papers,
                                   bool time_required) {
  Outcome outcome;
  if (papers.empty()) return outcome;

  const int window = std::min<int>(options_.window, static_cast<int>(papers.size()));
  std::vector<JudgedPaper> windowed(papers.begin(), papers.begin() + window);

  auto fall_back = [&](const std::string& why) {
    outcome.ranked.clear();
    for (const auto& entry : papers) {
      outcome.ranked.push_back({entry.paper, entry.judgement.score});
    }
    outcome.fallback = true;
    outcome.warnings.push_back("rerank fell back to input order: " + why);
    return outcome;
  };

  if (window == 1) {
    // Nothing to reorder; skip the model call.
    for (const auto& entry : papers) {
      outcome.ranked.push_back({entry.paper, entry.judgement.score});
    }
    return outcome;
  }

  llm::Bindings bindings = {
      {"N", std::to_string(window)},
      {"Query", query.text},
      {"Doc List Here", format_doc_list(windowed)},
  };
  llm::GenerationParams params;
  params.temperature = options_.temperature;
  params.max_tokens = options_.max_tokens;
  params.model = options_.model;
  llm::TemplateId id =
      time_required ? llm::TemplateId::RerankWithTime : llm::TemplateId::RerankNoTime;

  std::vector<llm::RerankEntry> entries;
  std::string failure;
  for (int attempt = 0; attempt < 2 && entries.empty(); ++attempt) {
    std::string response;
    try {
      response = gateway_->complete(id, bindings, params);
    } catch (const CassetteMissError&) {
      throw;
    } catch (const Error& e) {
      failure = e.what();
      continue;
    }
    try {
      auto parsed = llm::parse_rerank(response, window);
      if (static_cast<int>(parsed.size()) != window) {
        failure = "completion covered " + std::to_string(parsed.size()) + " of " +
                  std::to_string(window) + " documents";
        continue;
      }
      entries = std::move(parsed);
    } catch (const ParseError& e) {
      failure = e.what();
    }
  }
  if (entries.empty()) return fall_back(failure);

  std::vector<ScoredPaper> rescored(window);
  bool any_clamped = false;
  for (const auto& entry : entries) {
    bool clamped = false;
    rescored[entry.index - 1] = {windowed[entry.index - 1].paper,
                                 normalize_score(entry.score, &clamped)};
    any_clamped |= clamped;
  }
  if (any_clamped) {
    outcome.warnings.push_back("rerank scores outside the documented scales were clamped");
  }

  // Descending by new score; stable, so equal scores keep the input order.
  std::stable_sort(rescored.begin(), rescored.end(),
                   [](const ScoredPaper& a, const ScoredPaper& b) {
                     return a.score > b.score;
                   });

  outcome.ranked = std::move(rescored);
  for (std::size_t i = window; i < papers.size(); ++i) {
    outcome.ranked.push_back({papers[i].paper, papers[i].judgement.score});
  }
  return outcome;
}

}  // namespace spar
