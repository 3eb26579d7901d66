#pragma once

#include <map>
#include <string>
#include <vector>

namespace spar::llm {

enum class TemplateId {
  QueryInterpretation,
  QueryRefinement,
  KeywordExtraction,
  RelevanceBrief,
  RelevanceComplex,
  QueryEvolution,
  RerankWithTime,
  RerankNoTime,
};

/// Placeholder values, keyed by placeholder name.
using Bindings = std::map<std::string, std::string>;

/// A prompt body with `{name}` placeholders. Bodies are fixed text; the
/// declared placeholder list is validated against the body at startup.
struct PromptTemplate {
  TemplateId id;
  std::string name;
  std::vector<std::string> placeholders;
  std::string body;
};

std::string to_string(TemplateId id);

/// Throws UnknownTemplateError for names outside the fixed set.
TemplateId template_from_name(const std::string& name);

const PromptTemplate& get_template(TemplateId id);

/// Substitutes every placeholder in a single left-to-right pass; substituted
/// values are never rescanned. Throws MissingBindingError when a placeholder
/// has no binding.
std::string render(TemplateId id, const Bindings& bindings);

}  // namespace spar::llm
