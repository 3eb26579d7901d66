#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "spar/pipeline/orchestrator.hpp"

namespace spar {

/// Everything a process run needs beyond the pipeline knobs: endpoint,
/// secrets, cache locations, cassette directory.
struct AppConfig {
  RunConfig run;
  std::string llm_endpoint;
  std::string llm_api_key;   // SPAR_LLM_API_KEY; never written anywhere
  std::string s2_api_key;    // SPAR_S2_API_KEY
  std::string ncbi_api_key;  // SPAR_NCBI_API_KEY
  std::filesystem::path http_cache_dir = ".spar-http-cache";
  bool http_cache_bypass = false;
  std::filesystem::path cassette_dir;  // holds cassette.json for record/replay
};

/// Command-line values that override everything else. Unset fields defer to
/// environment, then file, then defaults.
struct CliOverrides {
  std::optional<int> k;
  std::optional<int> max_iterations;
  std::optional<double> threshold;
  std::optional<uint64_t> seed;
  std::optional<int> subset_size;
  std::optional<int> per_source_limit;
  std::vector<std::string> ablate;  // "name=on|off"
  std::optional<std::string> llm_mode;
  std::optional<std::filesystem::path> cassette_dir;
  std::vector<std::string> sources;
  std::optional<std::string> judge_variant;
  std::optional<std::string> judge_model;
  std::optional<std::string> model;
  std::optional<std::string> llm_endpoint;
  std::optional<std::filesystem::path> http_cache_dir;
  std::optional<bool> http_cache_bypass;
};

/// Merges defaults < config file < environment < flags and validates.
/// Errors name the offending key.
AppConfig load_config(const std::optional<std::filesystem::path>& file,
                      const std::map<std::string, std::string>& env,
                      const CliOverrides& flags);

/// Environment snapshot of every SPAR_* variable this program reads.
std::map<std::string, std::string> environment_snapshot();

}  // namespace spar
