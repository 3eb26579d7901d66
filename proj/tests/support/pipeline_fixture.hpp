#pragma once

#include <filesystem>
#include <memory>
#include <optional>

#include "spar/llm/gateway.hpp"
#include "spar/pipeline/orchestrator.hpp"
#include "spar/sources/hub.hpp"
#include "support/corpus.hpp"
#include "support/fake_web.hpp"
#include "support/scripted_transport.hpp"

namespace spar::testing {

/// The standard whole-pipeline fixture: the 30-paper corpus behind real
/// source adapters (served by FakeAcademicWeb), the scripted chat model,
/// and a run configuration sized for the fixture. The machine-learning
/// generalization query drives two iterations: direct retrieval plus
/// RefChain in the first, evolved queries in the second.
struct PipelineFixture {
  std::shared_ptr<SyntheticCorpus> corpus;
  std::shared_ptr<ScriptedTransport> transport;
  std::shared_ptr<FakeAcademicWeb> web;
  std::shared_ptr<spar::llm::LlmGateway> gateway;
  std::shared_ptr<spar::sources::SourceHub> hub;
  spar::RunConfig config;

  spar::Orchestrator orchestrator() const;
  spar::Orchestrator orchestrator(const spar::RunConfig& override_config) const;

  static spar::UserQuery ml_query();
  static spar::UserQuery vaccine_query();
  static spar::UserQuery rl_query();

  struct Options {
    spar::llm::LlmMode mode = spar::llm::LlmMode::Live;  // Live = scripted, no cassette
    std::optional<std::filesystem::path> cassette_file;
    std::optional<std::filesystem::path> http_cache_dir;
    bool http_offline = false;  // serve only from the HTTP cache; network fails
  };

  static PipelineFixture make(const Options& options = {});
};

/// Writes the three-case benchmark (ML generalization, vaccines, RL) to
/// `path` in the JSONL schema the loader reads.
void write_mini_benchmark(const std::filesystem::path& path);

}  // namespace spar::testing
