#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>

#include <CLI11.hpp>
#include <json.hpp>

#include "spar/config.hpp"
#include "spar/errors.hpp"
#include "spar/eval/benchmark.hpp"
#include "spar/eval/harness.hpp"
#include "spar/net/http_cache.hpp"
#include "spar/pipeline/orchestrator.hpp"
#include "spar/sources/arxiv.hpp"
#include "spar/sources/google.hpp"
#include "spar/sources/hub.hpp"
#include "spar/sources/openalex.hpp"
#include "spar/sources/pubmed.hpp"
#include "spar/sources/semantic_scholar.hpp"

namespace {

using namespace spar;

struct Wiring {
  std::shared_ptr<sources::SourceHub> hub;
  std::shared_ptr<llm::LlmGateway> gateway;
};

std::shared_ptr<net::RateLimiter> limiter(int per_window, int window_ms) {
  return std::make_shared<net::RateLimiter>(per_window, std::chrono::milliseconds(window_ms));
}

Wiring wire(const AppConfig& config) {
  // Polite per-host ceilings for the public, keyless tiers. The response
  // cache sits above the limiters, so cache hits cost nothing.
  auto limited =
      std::make_shared<net::HostRateLimitedClient>(std::make_shared<net::HttplibHttpClient>());
  limited->set_limit("export.arxiv.org", limiter(1, 3000));
  limited->set_limit("api.openalex.org", limiter(10, 1000));
  limited->set_limit("api.semanticscholar.org",
                     limiter(config.s2_api_key.empty() ? 1 : 10, 1000));
  limited->set_limit("eutils.ncbi.nlm.nih.gov",
                     limiter(config.ncbi_api_key.empty() ? 3 : 10, 1000));
  auto http = std::make_shared<net::CachedHttpClient>(limited, config.http_cache_dir,
                                                      config.http_cache_bypass);

  std::vector<std::shared_ptr<sources::SourceAdapter>> adapters = {
      std::make_shared<sources::ArxivAdapter>(http),
      std::make_shared<sources::OpenAlexAdapter>(http),
      std::make_shared<sources::SemanticScholarAdapter>(http, config.s2_api_key),
      std::make_shared<sources::PubMedAdapter>(http, config.ncbi_api_key),
      std::make_shared<sources::GoogleAdapter>(
          std::make_shared<sources::NullWebSearchProvider>()),
  };

  llm::LlmGateway::Options gateway_options;
  gateway_options.mode = config.run.llm_mode;
  if (!config.cassette_dir.empty()) {
    gateway_options.cassette_file = config.cassette_dir / "cassette.json";
  }
  std::shared_ptr<llm::ChatTransport> transport;
  if (config.run.llm_mode != llm::LlmMode::Replay) {
    transport = std::make_shared<llm::HttpChatTransport>(
        llm::HttpChatTransport::Options{config.llm_endpoint, config.llm_api_key, 60});
  }
  auto gateway = std::make_shared<llm::LlmGateway>(gateway_options, transport);

  sources::SourceHub::Options hub_options;
  hub_options.per_source_limit = config.run.per_source_limit;
  hub_options.model = config.run.model;
  auto hub = std::make_shared<sources::SourceHub>(adapters, gateway, hub_options);
  return {hub, gateway};
}

void print_ranked(const RunReport& report) {
  for (std::size_t i = 0; i < report.final_papers.size(); ++i) {
    const auto& entry = report.final_papers[i];
    std::string year = entry.paper.year ? std::to_string(*entry.paper.year) : "n.d.";
    std::string venue = entry.paper.venue ? ", " + *entry.paper.venue : "";
    std::printf("%2zu. %s (%s%s) [%s depth=%d] score=%.4f\n", i + 1,
                entry.paper.title.c_str(), year.c_str(), venue.c_str(),
                to_string(entry.paper.source).c_str(), entry.paper.refchain_depth,
                entry.score);
  }
}

int run_search(const AppConfig& config, const std::string& query_text,
               const std::string& out_path) {
  Wiring wiring = wire(config);
  Orchestrator orchestrator(wiring.hub, wiring.gateway, config.run);
  RunReport report = orchestrator.run(UserQuery{query_text, std::nullopt});
  wiring.gateway->flush();
  print_ranked(report);
  report.write_artifact(out_path);
  if (!report.warnings.empty()) {
    std::fprintf(stderr, "%zu warning(s); see artifact for details\n",
                 report.warnings.size());
  }
  return 0;
}

int run_eval_command(const AppConfig& config, const std::string& benchmark_path,
                     const std::string& out_path, bool sweep) {
  auto benchmark = eval::load_benchmark(benchmark_path);
  Wiring wiring = wire(config);
  eval::OrchestratorFactory factory = [&](const RunConfig& run_config) {
    return Orchestrator(wiring.hub, wiring.gateway, run_config);
  };

  if (!sweep) {
    eval::EvalReport report = eval::run_eval(benchmark, config.run, factory);
    std::fputs(report.table().c_str(), stdout);
    std::ofstream out(out_path);
    out << report.to_json() << "\n";
    return 0;
  }

  std::printf("%-8s %-8s %-9s %-6s %10s %10s %10s\n", "qinterp", "refchain",
              "evolution", "rerank", "precision", "recall", "f1");
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& combo : eval::toggle_grid(config.run)) {
    eval::EvalReport report = eval::run_eval(benchmark, combo, factory);
    std::printf("%-8s %-8s %-9s %-6s %10.4f %10.4f %10.4f\n",
                combo.toggles.qinterp ? "on" : "off",
                combo.toggles.refchain ? "on" : "off",
                combo.toggles.evolution ? "on" : "off",
                combo.toggles.rerank ? "on" : "off", report.macro_precision,
                report.macro_recall, report.macro_f1);
    rows.push_back(nlohmann::ordered_json::parse(report.to_json()));
  }
  std::ofstream out(out_path);
  out << rows.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SPAR: multi-agent scholarly paper retrieval"};
  app.require_subcommand(1);

  std::optional<std::filesystem::path> config_file;
  app.add_option("--config", config_file, "key=value configuration file")
      ->check(CLI::ExistingFile);

  CliOverrides flags;
  std::string replay_dir, record_dir;
  bool live = false;
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--k", flags.k, "paper cache target (K)");
    cmd->add_option("--max-iterations", flags.max_iterations, "iteration bound");
    cmd->add_option("--threshold", flags.threshold, "relevance threshold in [0,1]");
    cmd->add_option("--seed", flags.seed, "run seed");
    cmd->add_option("--subset-size", flags.subset_size, "evolved queries kept per iteration");
    cmd->add_option("--per-source-limit", flags.per_source_limit, "results per source call");
    cmd->add_option("--ablate", flags.ablate, "stage toggle, e.g. refchain=off")
        ->take_all();
    cmd->add_option("--source", flags.sources, "source allowlist entry")->take_all();
    cmd->add_option("--judge-variant", flags.judge_variant, "brief or complex");
    cmd->add_option("--judge-model", flags.judge_model, "relevance judge model");
    cmd->add_option("--model", flags.model, "model for non-judge calls");
    cmd->add_option("--llm-endpoint", flags.llm_endpoint, "chat-completion endpoint URL");
    cmd->add_option("--http-cache", flags.http_cache_dir, "HTTP cache directory");
    cmd->add_flag("--no-http-cache", [&](std::int64_t) { flags.http_cache_bypass = true; },
                  "bypass cached responses");
    cmd->add_option("--replay", replay_dir, "replay cassettes from this directory");
    cmd->add_option("--record", record_dir, "record cassettes into this directory");
    cmd->add_flag("--live", live, "call the live endpoint without recording");
  };

  std::string query_text, benchmark_path, out_path;
  bool sweep = false;

  CLI::App* search = app.add_subcommand("search", "run one retrieval query");
  search->add_option("--query", query_text, "the search query")->required();
  search->add_option("--out", out_path, "run artifact path");
  add_common(search);

  CLI::App* record = app.add_subcommand("record", "run a query live and record cassettes");
  record->add_option("--query", query_text, "the search query")->required();
  record->add_option("--out", out_path, "run artifact path");
  add_common(record);

  CLI::App* eval_cmd = app.add_subcommand("eval", "evaluate against a benchmark file");
  eval_cmd->add_option("--benchmark", benchmark_path, "benchmark JSONL file")->required();
  eval_cmd->add_option("--out", out_path, "report output path");
  eval_cmd->add_flag("--sweep", sweep, "run the full toggle grid");
  add_common(eval_cmd);

  CLI::App* cache_cmd = app.add_subcommand("cache", "inspect or clear the HTTP cache");
  std::string cache_dir = ".spar-http-cache";
  bool cache_clear = false, cache_stats = false;
  cache_cmd->add_option("--dir", cache_dir, "cache directory");
  cache_cmd->add_flag("--clear", cache_clear, "remove all cached responses");
  cache_cmd->add_flag("--stats", cache_stats, "print entry count");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (!replay_dir.empty()) {
      flags.llm_mode = "replay";
      flags.cassette_dir = replay_dir;
    } else if (!record_dir.empty()) {
      flags.llm_mode = "record";
      flags.cassette_dir = record_dir;
    } else if (live) {
      flags.llm_mode = "live";
    }
    if (record->parsed() && !flags.llm_mode) {
      throw ConfigInvalidError("record", "record subcommand needs --record DIR");
    }

    AppConfig config = load_config(config_file, environment_snapshot(), flags);

    if (search->parsed() || record->parsed()) {
      if (out_path.empty()) out_path = "spar-run.jsonl";
      return run_search(config, query_text, out_path);
    }
    if (eval_cmd->parsed()) {
      if (out_path.empty()) out_path = "spar-eval.json";
      return run_eval_command(config, benchmark_path, out_path, sweep);
    }
    if (cache_cmd->parsed()) {
      if (cache_clear) {
        net::CachedHttpClient::clear(cache_dir);
        std::printf("cleared %s\n", cache_dir.c_str());
      }
      if (cache_stats || !cache_clear) {
        std::printf("%zu cached response(s) in %s\n",
                    net::CachedHttpClient::entry_count(cache_dir), cache_dir.c_str());
      }
      return 0;
    }
  } catch (const ConfigInvalidError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const ConfigParseError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const FileNotFoundError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
