#include "spar/llm/template.hpp"

#include <array>
#include <cassert>
#include <stdexcept>

#include "spar/errors.hpp"

namespace spar::llm {

namespace {

constexpr const char* kQueryInterpretationBody =
    R"PROMPT(You are an academic search planning assistant. Analyze the user's query and produce a structured interpretation for scholarly paper retrieval.

Determine:
1. The query intent (survey, recent advances, method comparison, or other).
2. The research domain the query belongs to.
3. Which academic sources fit best, chosen only from: Google, ArXiv, OpenAlex, Semantic Scholar, PubMed.
4. Whether the query needs multi-query refinement (broad scope, missing technical terms, or ambiguous phrasing). If it does, write refined queries that cover different perspectives: methods, applications, historical developments, and future challenges. Use domain-specific terminology. When the query carries temporal constraints, incorporate the date bounds into every refined query.
5. Any temporal requirement expressed in the query (answer NO when there is none).

User Query: {user_query}
Search Time: {search_time}

Respond with exactly these labeled fields:
Query Intent: <intent description>
Domain: <research domain>
Suitable Sources: <comma-separated sources>
Needs Expansion: <true or false>
Expansion Reason: <why refinement is or is not needed>
Expanded Queries:
- <refined query 1>
- <refined query 2>
Time Requirement Description: <bounds like "2020-2025", or NO>
Source Reason: <why the sources fit>)PROMPT";

constexpr const char* kQueryRefinementBody =
    R"PROMPT(Generate a search query suitable for Google based on the given academic paper-related query. Please adhere to the following instructions:

1. Understand the Query: Carefully read and comprehend the given academic query.
2. Identify Key Elements: Extract the main research domain, specific methods, or core concepts.
3. Formulate the Search Query: Construct a concise and effective query that captures these components and is suitable for academic search engines.
4. Avoid Site Constraints: Do not include any site-specific filters (e.g., site:xxx).
5. Output Format: Only generate the refined query using the format below.

[User’s Query]: {UserQuery}
[Generated Search Query]: <your query here>)PROMPT";

constexpr const char* kKeywordExtractionBody =
    R"PROMPT(Extract optimal search keywords from the given research question, specifically optimized for the {source} academic database. Your task is to generate concise, comma-separated query terms that will maximize relevant paper retrieval on this platform.

Source-Specific Guidelines:
- Semantic Scholar:
  - Focus on technical terminology and core concepts.
  - Include methodological terms.
  - Consider author-centric keywords if prominent researchers are known.
  - Emphasize computer science and AI terminology where relevant.
- OpenAlex:
  - Prioritize broader academic terms.
  - Include interdisciplinary connections.
  - Balance specificity with coverage.
  - Include field classifications where relevant.
- PubMed:
  - Emphasize medical/biological terminology.
  - Include relevant MeSH (Medical Subject Headings) terms.
  - Consider clinical and biomedical contexts.
  - Include chemical/drug names or biological processes where relevant.

Response Format:
[Start] keyword1, keyword2, keyword3, ... [End]

Examples by Source:
- Semantic Scholar: [Start] transformer architecture, attention mechanism, language model fine-tuning [End]
- OpenAlex: [Start] neural networks, deep learning, artificial intelligence, pattern recognition [End]
- PubMed: [Start] CRISPR-Cas9, gene editing, genetic therapy, chromosomal modification [End]

Now, extract optimized search keywords for {source} from this question: {user_query})PROMPT";

constexpr const char* kRelevanceBriefBody =
    R"PROMPT(You are an expert in academic research. Given a query and a document in the context of a scholarly paper search, evaluate their relevance on a scale from 0 to 1, where 0 means completely irrelevant and 1 means highly relevant. Base your evaluation on the query’s intent, key concepts, and the document’s content. Provide a score and explain your reasoning consistently.

Query: {UserQuery}
Document:
Title: {title}
Abstract: {abstract}

Score: [Your score between 0 and 1]
Reasoning: [Your explanation])PROMPT";

constexpr const char* kRelevanceComplexBody =
    R"PROMPT(You are a rigorous and highly discerning academic search relevance evaluator. Your task is to critically assess the relationship between the user's query and the provided scholarly article. Apply a strict, high-standard academic lens to evaluate conceptual alignment, topical focus, and methodological relevance. Be skeptical of superficial keyword matches or loosely related themes. Only assign a high relevance score (on a 0–1 scale) when there is clear and substantial alignment in research purpose, methods, and contribution. Err on the side of conservatism in scoring—precision and selectivity are paramount.

Input Format
Query: Raw academic search query
Article:
- Title: Academic article title
- Abstract: Abstract text summarizing the paper's content

Hierarchical Evaluation Protocol
1. Critical Relevance Check (Binary Gate)
If the document contains zero of the following, automatically score 0.0:
- Core subject keywords from query
- Matching research domain
- Thematic alignment with query intent

2. Detailed Scoring Criteria (Only if passes Critical Check)

A. Core Topic Alignment (0–0.6)
- 0.5–0.6: Directly addresses primary subject with matching terminology
- 0.3–0.4: Related subfield but different focus area
- 0.1–0.2: Only tangential connection through peripheral terms
- 0.0: Fails Critical Relevance Check

B. Contextual Precision (0–0.3)
- 0.2–0.3: Explicitly addresses query's specific technical aspects
- 0.1: General thematic similarity without concrete details
- 0.0: No meaningful connection to query intent

C. Depth Validation (0–0.1)
- 0.1: Provides experimental validation/novel theoretical framework
- 0.05: Mentions concept without substantive analysis
- 0.0: Superficial treatment of subject

Scoring Matrix (Sum Components A + B + C)
- 0.00–0.19: Completely irrelevant / off-topic
- 0.20–0.39: Minimal relevance — shares domain but different focus
- 0.40–0.59: Partial relevance — addresses some aspects
- 0.60–0.79: Substantial relevance — covers key elements
- 0.80–1.00: Optimal match — comprehensive coverage

Anti-Gaming Rules
- Penalize -0.3 for keyword stuffing without contextual relevance
- Penalize -0.2 for misleading titles/abstracts
- If score < 0.4, round down to nearest 0.1
- If score ≥ 0.7, require positive marks in all 3 criteria

Examples

Example 1 (Low Score)
Query: "Machine learning for early Alzheimer's diagnosis using MRI"
Article: "Statistical analysis of MRI machine calibration errors"
Reasoning: Fails Critical Relevance — no ML or Alzheimer's content
Score: 0.15

Example 2 (High Score)
Query: "Federated learning optimization in IoT networks"
Article: "Adaptive Gradient Compression for Energy-Efficient Federated Learning in Edge Computing Environments"
Reasoning: Directly addresses FL optimization (0.6) + technical specifics (0.25) + experimental validation (0.1)
Score: 0.86

Input Data
Query: {query}
Article: {doc}

Output Format
Reasoning: [Concise technical justification]
Score: [0.00–1.00])PROMPT";

constexpr const char* kQueryEvolutionBody =
    R"PROMPT(You are an academic search expert helping explore a research topic more thoroughly.

### CONTEXT:
- Original Query: {user_query}
- Previously Searched Queries: {searched_queries}
- Relevant Document Title: {doc_title}
- Document Abstract: {doc_abstract}
- Document Field: {doc_field}

### TASK:
Generate {N} NEW search queries that explore different aspects of this research area:

1. A query exploring METHODOLOGICAL alternatives or comparisons
2. A query focusing on APPLICATIONS or implementations
3. A query addressing LIMITATIONS, challenges, or critiques

Each query should be:
- Clearly different from previously searched queries
- Based on insights from the document
- Relevant to the original research question
- Specific enough to retrieve focused results

### IMPORTANT NOTE:
If document information is missing or insufficient (e.g., empty abstract), generate queries based primarily on the original query and your knowledge of the research domain. Focus on exploring complementary aspects of the topic rather than requiring specific document details.

### OUTPUT FORMAT:
Return a JSON array of strings containing only the expanded queries:
[Query 1,Query 2, Query 3])PROMPT";

constexpr const char* kRerankWithTimeBody =
    R"PROMPT(Please rerank the following {N} academic papers in response to the query:{Query}

Consider these factors in your reranking:
1. Authority:
- Publication venue prestige (top conferences/journals rank higher)
- Author prominence (authors with higher h-index or citation counts rank higher)
2. Timeliness:
- The query specifically asks for recent/current papers, so strongly prefer newer papers
3. Maintain reasonable relevance to the original query

For each paper, provide:
1. A new numerical rank (1 being the highest)
2. A brief justification (1-2 sentences)
3. A new relevance score between 0-1 that incorporates both relevance and the factors above

List of papers with original relevance scores (title, year, venue, authors, relevance):

{Doc List Here}

Please provide your reranking with new scores and concise justifications in the following format for each document:
Document [index]: [score] - [justification]

For example:
Document 1: 9.5 - Highly relevant as it directly addresses the query topic with empirical evidence.
Document 2: 7.0 - Somewhat relevant but focuses on a tangential aspect of the query.)PROMPT";

constexpr const char* kRerankNoTimeBody =
    R"PROMPT(Please rerank the following {N} academic papers in response to the query: {Query}

Consider these factors in your reranking:
1. Authority:
- Publication venue prestige (top conferences/journals rank higher)
- Author prominence (authors with higher h-index or citation counts rank higher)
2. Timeliness:
- Generally prefer more recent papers, but don't overly penalize influential older papers
3. Maintain reasonable relevance to the original query

For each paper, provide:
1. A new numerical rank (1 being the highest)
2. A brief justification (1-2 sentences)
3. A new relevance score between 0-1 that incorporates both relevance and the factors above

List of papers with original relevance scores (title, year, venue, authors, relevance):

{Doc List Here}

Please provide your reranking with new scores and concise justifications in the following format for each document:
Document [index]: [score] - [justification]

For example:
Document 1: 9.5 - Highly relevant as it directly addresses the query topic with empirical evidence.
Document 2: 7.0 - Somewhat relevant but focuses on a tangential aspect of the query.)PROMPT";

// Candidate placeholder token at `pos` (which indexes a '{'): the span up to
// the next '}' on the same line. Returns the name or empty when not a token.
std::string placeholder_at(const std::string& body, std::size_t pos, std::size_t* end) {
  std::size_t close = pos + 1;
  while (close < body.size() && body[close] != '}' && body[close] != '{' &&
         body[close] != '\n') {
    ++close;
  }
  if (close >= body.size() || body[close] != '}') return "";
  *end = close;
  return body.substr(pos + 1, close - pos - 1);
}

std::vector<PromptTemplate> build_registry() {
  std::vector<PromptTemplate> all = {
      {TemplateId::QueryInterpretation,
       "QueryInterpretation",
       {"user_query", "search_time"},
       kQueryInterpretationBody},
      {TemplateId::QueryRefinement, "QueryRefinement", {"UserQuery"}, kQueryRefinementBody},
      {TemplateId::KeywordExtraction,
       "KeywordExtraction",
       {"source", "user_query"},
       kKeywordExtractionBody},
      {TemplateId::RelevanceBrief,
       "RelevanceBrief",
       {"UserQuery", "title", "abstract"},
       kRelevanceBriefBody},
      {TemplateId::RelevanceComplex, "RelevanceComplex", {"query", "doc"}, kRelevanceComplexBody},
      {TemplateId::QueryEvolution,
       "QueryEvolution",
       {"user_query", "searched_queries", "doc_title", "doc_abstract", "doc_field", "N"},
       kQueryEvolutionBody},
      {TemplateId::RerankWithTime,
       "RerankWithTime",
       {"N", "Query", "Doc List Here"},
       kRerankWithTimeBody},
      {TemplateId::RerankNoTime,
       "RerankNoTime",
       {"N", "Query", "Doc List Here"},
       kRerankNoTimeBody},
  };

  // Every {token} in a body must be declared, and every declared placeholder
  // must occur in the body.
  for (const auto& tpl : all) {
    std::vector<bool> seen(tpl.placeholders.size(), false);
    for (std::size_t i = 0; i < tpl.body.size(); ++i) {
      if (tpl.body[i] != '{') continue;
      std::size_t end = 0;
      std::string name = placeholder_at(tpl.body, i, &end);
      if (name.empty()) continue;
      bool declared = false;
      for (std::size_t p = 0; p < tpl.placeholders.size(); ++p) {
        if (tpl.placeholders[p] == name) {
          seen[p] = true;
          declared = true;
          break;
        }
      }
      if (!declared) {
        throw std::logic_error("template " + tpl.name + " has undeclared placeholder {" +
                               name + "}");
      }
      i = end;
    }
    for (std::size_t p = 0; p < tpl.placeholders.size(); ++p) {
      if (!seen[p]) {
        throw std::logic_error("template " + tpl.name + " never uses placeholder {" +
                               tpl.placeholders[p] + "}");
      }
    }
  }
  return all;
}

const std::vector<PromptTemplate>& registry() {
  static const std::vector<PromptTemplate> reg = build_registry();
  return reg;
}

}  // namespace

std::string to_string(TemplateId id) {
  for (const auto& tpl : registry()) {
    if (tpl.id == id) return tpl.name;
  }
  throw UnknownTemplateError("unknown template id");
}

TemplateId template_from_name(const std::string& name) {
  for (const auto& tpl : registry()) {
    if (tpl.name == name) return tpl.id;
  }
  throw UnknownTemplateError("unknown template: " + name);
}

const PromptTemplate& get_template(TemplateId id) {
  for (const auto& tpl : registry()) {
    if (tpl.id == id) return tpl;
  }
  throw UnknownTemplateError("unknown template id");
}

std::string render(TemplateId id, const Bindings& bindings) {
  const PromptTemplate& tpl = get_template(id);
  std::string out;
  out.reserve(tpl.body.size() + 256);
  for (std::size_t i = 0; i < tpl.body.size(); ++i) {
    if (tpl.body[i] == '{') {
      std::size_t end = 0;
      std::string name = placeholder_at(tpl.body, i, &end);
      if (!name.empty() &&
          std::find(tpl.placeholders.begin(), tpl.placeholders.end(), name) !=
              tpl.placeholders.end()) {
        auto it = bindings.find(name);
        if (it == bindings.end()) throw MissingBindingError(name);
        out += it->second;
        i = end;
        continue;
      }
    }
    out.push_back(tpl.body[i]);
  }
  return out;
}

}  // namespace spar::llm
