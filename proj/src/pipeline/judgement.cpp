#include "spar/pipeline/judgement.hpp"

#include "spar/errors.hpp"
#include "spar/llm/parsers.hpp"
#include "spar/text.hpp"

namespace spar {

Judgement::Judgement(std::shared_ptr<llm::LlmGateway> gateway, Options options)
    : gateway_(std::move(gateway)), options_(std::move(options)) {}

RelevanceJudgement Judgement::judge(const UserQuery& query, const PaperRecord& paper) {
  if (trim(paper.title).empty()) throw ValidationError("cannot judge an untitled paper");

  llm::Bindings bindings;
  llm::TemplateId id;
  if (options_.variant == PromptVariant::Brief) {
    id = llm::TemplateId::RelevanceBrief;
    bindings = {{"UserQuery", query.text},
                {"title", paper.title},
                {"abstract", paper.abstract_text}};
  } else {
    id = llm::TemplateId::RelevanceComplex;
    bindings = {{"query", query.text},
                {"doc", "Title: " + paper.title + "\nAbstract: " + paper.abstract_text}};
  }

  llm::GenerationParams params;
  params.temperature = options_.temperature;
  params.max_tokens = options_.max_tokens;
  params.model = options_.model;

  RelevanceJudgement judgement;
  judgement.prompt_variant = options_.variant;
  judgement.judge_model = options_.model;

  // Two attempts at a parseable completion, then degrade. The gateway
  // already retries transport-level failures internally.
  for (int attempt = 0; attempt < 2; ++attempt) {
    std::string response;
    try {
      response = gateway_->complete(id, bindings, params);
    } catch (const CassetteMissError&) {
      throw;
    } catch (const TransportError&) {
      continue;
    } catch (const RateLimitedError&) {
      continue;
    }
    try {
      auto scored = llm::parse_score(response);
      judgement.score = scored.score;
      judgement.reasoning = scored.reasoning;
      judgement.validate();
      return judgement;
    } catch (const ParseError&) {
      continue;
    }
  }

  judgement.score = 0.0;
  judgement.reasoning = "";
  judgement.parse_failed = true;
  return judgement;
}

std::vector<JudgedPaper> Judgement::filter_related(const std::vector<JudgedPaper>& judged,
                                                   double threshold, bool inclusive) {
  std::vector<JudgedPaper> related;
  for (const auto& entry : judged) {
    bool keep = inclusive ? entry.judgement.score >= threshold
                          : entry.judgement.score > threshold;
    if (keep) related.push_back(entry);
  }
  return related;
}

}  // namespace spar
