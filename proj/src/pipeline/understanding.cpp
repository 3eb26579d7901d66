#include "spar/pipeline/understanding.hpp"

#include <algorithm>

#include "spar/errors.hpp"
#include "spar/llm/parsers.hpp"
#include "spar/text.hpp"

namespace spar {

QueryUnderstanding::QueryUnderstanding(std::shared_ptr<llm::LlmGateway> gateway,
                                       Options options)
    : gateway_(std::move(gateway)), options_(std::move(options)) {}

QueryInterpretation QueryUnderstanding::interpret(const UserQuery& query) {
  query.validate();

  llm::GenerationParams params;
  params.temperature = options_.temperature;
  params.max_tokens = options_.max_tokens;
  params.model = options_.model;
  llm::Bindings bindings = {
      {"user_query", query.text},
      {"search_time", query.search_time ? query.search_time->to_string() : "not specified"},
  };
  std::string response =
      gateway_->complete(llm::TemplateId::QueryInterpretation, bindings, params);

  QueryInterpretation interp;
  try {
    interp = llm::parse_interpretation(response);
  } catch (const UnknownSourceError&) {
    // The model named sources outside the fixed set; keep whatever valid
    // ones it also produced and let the fallback cover the rest.
    interp = llm::parse_interpretation(response, /*lenient=*/true);
  } catch (const ParseError& e) {
    throw InterpretationParseError(std::string("interpretation block unusable: ") +
                                   e.what());
  }

  if (interp.sources.empty()) {
    interp.sources = {SourceKind::SemanticScholar, SourceKind::OpenAlex};
  }

  if (!interp.needs_expansion) {
    interp.refined_queries = {query.text};
  } else {
    // Cap, dedup, and keep the model's order.
    std::vector<std::string> kept;
    for (const auto& refined : interp.refined_queries) {
      if (std::find(kept.begin(), kept.end(), refined) == kept.end()) {
        kept.push_back(refined);
      }
      if (static_cast<int>(kept.size()) >= options_.max_refinements) break;
    }
    if (kept.empty()) {
      interp.needs_expansion = false;
      kept = {query.text};
    }
    interp.refined_queries = std::move(kept);
  }

  if (interp.temporal.required) {
    // Refinements that lost the date bounds get them appended.
    std::string bound = interp.temporal.bound_text();
    for (auto& refined : interp.refined_queries) {
      if (!interp.temporal.satisfied_by(refined) && !bound.empty()) {
        refined += " (" + bound + ")";
      }
    }
  }

  interp.validate();
  return interp;
}

std::vector<std::string> QueryUnderstanding::build_query_list(
    const QueryInterpretation& interp, const UserQuery& query) {
  std::vector<std::string> queries = {query.text};
  for (const auto& refined : interp.refined_queries) {
    if (std::find(queries.begin(), queries.end(), refined) == queries.end()) {
      queries.push_back(refined);
    }
  }
  return queries;
}

QueryInterpretation QueryUnderstanding::passthrough(const UserQuery& query) {
  QueryInterpretation interp;
  interp.intent = Intent::Other;
  interp.intent_text = "passthrough";
  interp.sources = {SourceKind::ArXiv, SourceKind::OpenAlex, SourceKind::SemanticScholar,
                    SourceKind::PubMed};
  interp.needs_expansion = false;
  interp.refined_queries = {query.text};
  return interp;
}

}  // namespace spar
