#include "spar/pipeline/evolver.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "spar/errors.hpp"
#include "spar/llm/parsers.hpp"
#include "spar/text.hpp"

namespace spar {

QueryEvolver::QueryEvolver(std::shared_ptr<llm::LlmGateway> gateway, Options options)
    : gateway_(std::move(gateway)), options_(std::move(options)) {}

std::vector<std::string> QueryEvolver::evolve(const UserQuery& initial,
                                              const std::vector<std::string>& searched,
                                              const PaperRecord& paper, int n) {
  if (trim(paper.title).empty()) throw ValidationError("cannot evolve from an untitled paper");
  if (n <= 0) n = options_.queries_per_paper;

  std::string history;
  for (const auto& query : searched) {
    history += "\n- " + query;
  }
  if (history.empty()) history = "\n- (none)";

  llm::Bindings bindings = {
      {"user_query", initial.text},
      {"searched_queries", history},
      {"doc_title", paper.title},
      {"doc_abstract", paper.abstract_text},
      {"doc_field", paper.venue.value_or("")},
      {"N", std::to_string(n)},
  };
  llm::GenerationParams params;
  params.temperature = options_.temperature;
  params.max_tokens = options_.max_tokens;
  params.model = options_.model;

  std::string response;
  try {
    response = gateway_->complete(llm::TemplateId::QueryEvolution, bindings, params);
  } catch (const CassetteMissError&) {
    throw;
  } catch (const Error&) {
    return {};  // evolution is best-effort
  }

  std::vector<std::string> queries;
  try {
    queries = llm::parse_string_array(response);
  } catch (const ParseError&) {
    return {};
  }

  std::vector<std::string> fresh;
  for (auto& query : queries) {
    std::string trimmed = trim(query);
    if (trimmed.empty()) continue;
    if (std::find(searched.begin(), searched.end(), trimmed) != searched.end()) continue;
    fresh.push_back(std::move(trimmed));
  }
  return fresh;
}

std::vector<std::string> QueryEvolver::select_and_filter(
    const std::vector<std::string>& candidates, const std::vector<std::string>& searched,
    const std::vector<std::string>& pending, int subset_size, uint64_t seed) const {
  std::set<std::string> used(searched.begin(), searched.end());
  used.insert(pending.begin(), pending.end());

  std::vector<std::string> survivors;
  std::set<std::string> seen;
  for (const auto& candidate : candidates) {
    if (used.count(candidate)) continue;
    if (!seen.insert(candidate).second) continue;  // internal duplicate
    bool overlaps = false;
    for (const auto& old_query : searched) {
      if (jaccard_similarity(candidate, old_query) >= options_.jaccard_threshold) {
        overlaps = true;
        break;
      }
    }
    if (!overlaps) survivors.push_back(candidate);
  }

  int take = std::min<int>(subset_size, static_cast<int>(survivors.size()));
  if (take <= 0) return {};

  // Partial Fisher-Yates. mt19937_64 plus a modulo draw is fully specified,
  // so the subset is reproducible across platforms and standard libraries.
  std::mt19937_64 rng(seed);
  std::vector<std::string> draw = survivors;
  for (std::size_t i = 0; i < static_cast<std::size_t>(take); ++i) {
    std::size_t j = i + static_cast<std::size_t>(rng() % (draw.size() - i));
    std::swap(draw[i], draw[j]);
  }
  draw.resize(take);
  return draw;
}

}  // namespace spar
