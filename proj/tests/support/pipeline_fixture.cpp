#include "support/pipeline_fixture.hpp"

#include <fstream>

#include <json.hpp>

#include "spar/net/http_cache.hpp"
#include "spar/net/rate_limiter.hpp"
#include "spar/sources/arxiv.hpp"
#include "spar/sources/google.hpp"
#include "spar/sources/openalex.hpp"
#include "spar/sources/pubmed.hpp"
#include "spar/sources/semantic_scholar.hpp"

namespace spar::testing {

spar::UserQuery PipelineFixture::ml_query() {
  return {"How can machine learning models generalize across multiple domains? "
          "A survey of recent approaches",
          std::nullopt};
}

spar::UserQuery PipelineFixture::vaccine_query() {
  return {"What improvements are needed in vaccine development efficiency for "
          "emerging infectious diseases?",
          std::nullopt};
}

spar::UserQuery PipelineFixture::rl_query() {
  return {"Papers on target networks with function approximation in "
          "reinforcement learning",
          std::nullopt};
}

PipelineFixture PipelineFixture::make(const Options& options) {
  PipelineFixture fixture;
  fixture.corpus = make_corpus_30();

  fixture.transport = std::make_shared<ScriptedTransport>(fixture.corpus);
  fixture.transport->add_interpretation(
      "machine learning models",
      interpretation_block(
          "Survey of recent advances", "Machine learning",
          "openalex, semantic scholar, arxiv", true,
          {"Survey of domain generalization methods in machine learning",
           "Out-of-distribution robustness benchmarks for deep learning"},
          "NO"));
  fixture.transport->add_interpretation(
      "vaccine",
      interpretation_block("Literature review and multi-angle analysis",
                           "Biomedical sciences", "pubmed, openalex", false, {}, "NO"));
  fixture.transport->add_interpretation(
      "target networks",
      interpretation_block("Focused method lookup", "Reinforcement learning",
                           "openalex, semantic scholar", false, {}, "NO"));

  fixture.transport->add_evolution(
      "Domain Generalization via Invariant Risk Minimization",
      {"Federated learning for cross-domain generalization",
       "Invariant risk minimization limitations in practice",
       "Applications of domain generalization in medical imaging"});
  fixture.transport->add_evolution(
      "A Survey of Domain Generalization in Deep Learning",
      {"Benchmark suites for distribution shift evaluation",
       "Test-time adaptation methods for domain shift",
       // Equals an already-searched refinement on purpose; the evolver
       // must drop it.
       "Survey of domain generalization methods in machine learning"});

  // 0-10 scale, as the prompt's own example uses; the reranker divides by 10.
  fixture.transport->add_rerank_score(
      "Causal Invariance as a Foundation for Domain Generalization", 8.8);
  fixture.transport->add_rerank_score(
      "Domain Generalization via Invariant Risk Minimization", 9.5);
  fixture.transport->add_rerank_score("A Survey of Domain Generalization in Deep Learning",
                                      9.0);
  fixture.transport->add_rerank_score(
      "Out-of-Distribution Generalization Benchmarks for Vision Models", 7.5);
  fixture.transport->add_rerank_score("Meta-Learning for Cross-Domain Generalization",
                                      7.0);
  fixture.transport->add_rerank_score(
      "Robustness of Neural Networks to Distribution Shift", 6.5);
  fixture.transport->add_rerank_score("Invariant Feature Learning Across Environments",
                                      6.0);
  fixture.transport->add_rerank_score("Transfer Learning: Beyond the Source Domain", 5.5);
  fixture.transport->add_rerank_score("Federated Domain Generalization with Client Drift",
                                      5.0);
  fixture.transport->add_rerank_score("When Invariant Risk Minimization Fails", 4.5);
  fixture.transport->add_rerank_score(
      "Domain Generalization for Medical Imaging Diagnostics", 8.0);
  fixture.transport->add_rerank_score("Test-Time Adaptation via Entropy Minimization",
                                      4.0);
  fixture.transport->add_rerank_score(
      "A Benchmark Suite for Distribution Shift in the Wild", 3.5);
  fixture.transport->add_rerank_score(
      "mRNA Vaccine Platforms for Emerging Infectious Diseases", 9.0);
  fixture.transport->add_rerank_score("Reverse Vaccinology in the Genomic Era", 8.0);
  fixture.transport->add_rerank_score(
      "Target Networks and Convergence in Deep Q-Learning", 9.0);

  fixture.web = std::make_shared<FakeAcademicWeb>(fixture.corpus);
  std::shared_ptr<spar::net::HttpClient> http = fixture.web;
  if (options.http_cache_dir) {
    std::shared_ptr<spar::net::HttpClient> inner = fixture.web;
    if (options.http_offline) inner = std::make_shared<FailingHttpClient>();
    http = std::make_shared<spar::net::CachedHttpClient>(inner, *options.http_cache_dir);
  }

  spar::llm::LlmGateway::Options gateway_options;
  gateway_options.mode = options.mode;
  gateway_options.cassette_file = options.cassette_file;
  gateway_options.retry_backoff_ms = 0;
  fixture.gateway =
      std::make_shared<spar::llm::LlmGateway>(gateway_options, fixture.transport);

  std::vector<std::shared_ptr<spar::sources::SourceAdapter>> adapters = {
      std::make_shared<spar::sources::ArxivAdapter>(http),
      std::make_shared<spar::sources::OpenAlexAdapter>(http),
      std::make_shared<spar::sources::SemanticScholarAdapter>(http),
      std::make_shared<spar::sources::PubMedAdapter>(http),
      std::make_shared<spar::sources::GoogleAdapter>(
          std::make_shared<spar::sources::NullWebSearchProvider>()),
  };
  spar::sources::SourceHub::Options hub_options;
  hub_options.per_source_limit = 20;
  hub_options.model = "scripted-model";
  fixture.hub =
      std::make_shared<spar::sources::SourceHub>(adapters, fixture.gateway, hub_options);

  fixture.config.cache_target = 10;
  fixture.config.max_iterations = 2;
  fixture.config.threshold = 0.5;
  fixture.config.subset_size = 2;
  fixture.config.seed = 7;
  fixture.config.per_source_limit = 20;
  fixture.config.judge_model = "scripted-model";
  fixture.config.model = "scripted-model";
  fixture.config.llm_mode = options.mode;
  return fixture;
}

spar::Orchestrator PipelineFixture::orchestrator() const {
  return spar::Orchestrator(hub, gateway, config);
}

spar::Orchestrator PipelineFixture::orchestrator(const spar::RunConfig& override_config) const {
  return spar::Orchestrator(hub, gateway, override_config);
}

void write_mini_benchmark(const std::filesystem::path& path) {
  using nlohmann::json;
  auto corpus = make_corpus_30();
  auto answer = [&](const std::string& key) {
    const SyntheticPaper* paper = corpus->by_key(key);
    json entry = {{"paper_id", paper->doi}, {"title", paper->title},
                  {"year", paper->year},   {"citation_count", paper->citations},
                  {"source", "OpenAlex"},  {"abstract", paper->abstract_text}};
    return entry;
  };

  json case1 = {{"question", PipelineFixture::ml_query().text},
                {"answers", json::array({answer("g01"), answer("p01"), answer("p02"),
                                         answer("p03")})}};
  json case2 = {{"question", PipelineFixture::vaccine_query().text},
                {"search_time", "2025-04-10"},
                {"answers", json::array({answer("b01"), answer("b02")})}};
  json case3 = {{"question", PipelineFixture::rl_query().text},
                {"answers", json::array({answer("r01")})}};

  std::ofstream out(path);
  out << case1.dump() << "\n" << case2.dump() << "\n" << case3.dump() << "\n";
}

}  // namespace spar::testing
