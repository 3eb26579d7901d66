#include "spar/config.hpp"

#include <cstdlib>
#include <fstream>

#include "spar/errors.hpp"
#include "spar/text.hpp"

namespace spar {

namespace {

bool parse_bool(const std::string& key, const std::string& value) {
  std::string low = to_lower_ascii(trim(value));
  if (low == "on" || low == "true" || low == "1" || low == "yes") return true;
  if (low == "off" || low == "false" || low == "0" || low == "no") return false;
  throw ConfigInvalidError(key, "expected on/off, got '" + value + "'");
}

int parse_int(const std::string& key, const std::string& value) {
  try {
    std::size_t consumed = 0;
    int parsed = std::stoi(value, &consumed);
    if (consumed != value.size()) throw std::invalid_argument(value);
    return parsed;
  } catch (const std::exception&) {
    throw ConfigInvalidError(key, "expected an integer, got '" + value + "'");
  }
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t consumed = 0;
    double parsed = std::stod(value, &consumed);
    if (consumed != value.size()) throw std::invalid_argument(value);
    return parsed;
  } catch (const std::exception&) {
    throw ConfigInvalidError(key, "expected a number, got '" + value + "'");
  }
}

llm::LlmMode parse_mode(const std::string& value) {
  std::string low = to_lower_ascii(trim(value));
  if (low == "live") return llm::LlmMode::Live;
  if (low == "record") return llm::LlmMode::Record;
  if (low == "replay") return llm::LlmMode::Replay;
  throw ConfigInvalidError("llm_mode", "expected live/record/replay, got '" + value + "'");
}

PromptVariant parse_variant(const std::string& value) {
  std::string low = to_lower_ascii(trim(value));
  if (low == "brief") return PromptVariant::Brief;
  if (low == "complex") return PromptVariant::Complex;
  throw ConfigInvalidError("judge_variant", "expected brief/complex, got '" + value + "'");
}

std::vector<SourceKind> parse_source_list(const std::string& key,
                                          const std::vector<std::string>& names) {
  std::vector<SourceKind> sources;
  for (const auto& name : names) {
    auto kind = parse_source(name);
    if (!kind) throw ConfigInvalidError(key, "unknown source '" + name + "'");
    if (std::find(sources.begin(), sources.end(), *kind) == sources.end()) {
      sources.push_back(*kind);
    }
  }
  return sources;
}

void apply_key(AppConfig& config, const std::string& key, const std::string& value) {
  RunConfig& run = config.run;
  if (key == "k") {
    run.cache_target = parse_int(key, value);
  } else if (key == "max_iterations") {
    run.max_iterations = parse_int(key, value);
  } else if (key == "threshold") {
    run.threshold = parse_double(key, value);
  } else if (key == "inclusive_threshold") {
    run.inclusive_threshold = parse_bool(key, value);
  } else if (key == "subset_size") {
    run.subset_size = parse_int(key, value);
  } else if (key == "seed") {
    run.seed = static_cast<uint64_t>(parse_int(key, value));
  } else if (key == "per_source_limit") {
    run.per_source_limit = parse_int(key, value);
  } else if (key == "qinterp") {
    run.toggles.qinterp = parse_bool(key, value);
  } else if (key == "refchain") {
    run.toggles.refchain = parse_bool(key, value);
  } else if (key == "evolution") {
    run.toggles.evolution = parse_bool(key, value);
  } else if (key == "rerank") {
    run.toggles.rerank = parse_bool(key, value);
  } else if (key == "judge_variant") {
    run.judge_variant = parse_variant(value);
  } else if (key == "judge_model") {
    run.judge_model = value;
  } else if (key == "model") {
    run.model = value;
  } else if (key == "llm_mode") {
    run.llm_mode = parse_mode(value);
  } else if (key == "refchain_fanout_cap") {
    run.refchain_fanout_cap = parse_int(key, value);
  } else if (key == "evolution_paper_cap") {
    run.evolution_paper_cap = parse_int(key, value);
  } else if (key == "jaccard_threshold") {
    run.jaccard_threshold = parse_double(key, value);
  } else if (key == "max_refinements") {
    run.max_refinements = parse_int(key, value);
  } else if (key == "max_tokens") {
    run.max_tokens = parse_int(key, value);
  } else if (key == "evolve_temperature") {
    run.evolve_temperature = parse_double(key, value);
  } else if (key == "sources") {
    std::vector<std::string> names;
    std::size_t pos = 0;
    while (pos <= value.size()) {
      std::size_t comma = value.find(',', pos);
      if (comma == std::string::npos) comma = value.size();
      std::string name = trim(value.substr(pos, comma - pos));
      if (!name.empty()) names.push_back(name);
      pos = comma + 1;
    }
    run.source_allowlist = parse_source_list(key, names);
  } else if (key == "llm_endpoint") {
    config.llm_endpoint = value;
  } else if (key == "http_cache_dir") {
    config.http_cache_dir = value;
  } else if (key == "http_cache_bypass") {
    config.http_cache_bypass = parse_bool(key, value);
  } else if (key == "cassette_dir") {
    config.cassette_dir = value;
  } else {
    throw ConfigInvalidError(key, "unrecognized key");
  }
}

void apply_file(AppConfig& config, const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ConfigParseError("cannot open config file: " + file.string());
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    std::string trimmed = trim(line);
    if (trimmed.empty() || trimmed[0] == '#') continue;
    auto equals = trimmed.find('=');
    if (equals == std::string::npos) {
      throw ConfigParseError("config line " + std::to_string(line_number) +
                             " is not key=value: '" + trimmed + "'");
    }
    apply_key(config, trim(trimmed.substr(0, equals)), trim(trimmed.substr(equals + 1)));
  }
}

void apply_env(AppConfig& config, const std::map<std::string, std::string>& env) {
  static const std::map<std::string, std::string> mapping = {
      {"SPAR_K", "k"},
      {"SPAR_MAX_ITERATIONS", "max_iterations"},
      {"SPAR_THRESHOLD", "threshold"},
      {"SPAR_SEED", "seed"},
      {"SPAR_SUBSET_SIZE", "subset_size"},
      {"SPAR_PER_SOURCE_LIMIT", "per_source_limit"},
      {"SPAR_JUDGE_VARIANT", "judge_variant"},
      {"SPAR_JUDGE_MODEL", "judge_model"},
      {"SPAR_MODEL", "model"},
      {"SPAR_LLM_MODE", "llm_mode"},
      {"SPAR_LLM_ENDPOINT", "llm_endpoint"},
      {"SPAR_HTTP_CACHE", "http_cache_dir"},
  };
  for (const auto& [var, key] : mapping) {
    auto it = env.find(var);
    if (it != env.end() && !it->second.empty()) apply_key(config, key, it->second);
  }
  if (auto it = env.find("SPAR_LLM_API_KEY"); it != env.end()) {
    config.llm_api_key = it->second;
  }
  if (auto it = env.find("SPAR_S2_API_KEY"); it != env.end()) {
    config.s2_api_key = it->second;
  }
  if (auto it = env.find("SPAR_NCBI_API_KEY"); it != env.end()) {
    config.ncbi_api_key = it->second;
  }
}

void apply_flags(AppConfig& config, const CliOverrides& flags) {
  RunConfig& run = config.run;
  if (flags.k) run.cache_target = *flags.k;
  if (flags.max_iterations) run.max_iterations = *flags.max_iterations;
  if (flags.threshold) run.threshold = *flags.threshold;
  if (flags.seed) run.seed = *flags.seed;
  if (flags.subset_size) run.subset_size = *flags.subset_size;
  if (flags.per_source_limit) run.per_source_limit = *flags.per_source_limit;
  for (const auto& spec : flags.ablate) {
    auto equals = spec.find('=');
    if (equals == std::string::npos) {
      throw ConfigInvalidError("ablate", "expected name=on|off, got '" + spec + "'");
    }
    std::string name = to_lower_ascii(trim(spec.substr(0, equals)));
    bool on = parse_bool("ablate", spec.substr(equals + 1));
    if (name == "qinterp") {
      run.toggles.qinterp = on;
    } else if (name == "refchain") {
      run.toggles.refchain = on;
    } else if (name == "evolution") {
      run.toggles.evolution = on;
    } else if (name == "rerank") {
      run.toggles.rerank = on;
    } else {
      throw ConfigInvalidError("ablate", "unknown stage '" + name + "'");
    }
  }
  if (flags.llm_mode) run.llm_mode = parse_mode(*flags.llm_mode);
  if (flags.cassette_dir) config.cassette_dir = *flags.cassette_dir;
  if (!flags.sources.empty()) {
    run.source_allowlist = parse_source_list("source", flags.sources);
  }
  if (flags.judge_variant) run.judge_variant = parse_variant(*flags.judge_variant);
  if (flags.judge_model) run.judge_model = *flags.judge_model;
  if (flags.model) run.model = *flags.model;
  if (flags.llm_endpoint) config.llm_endpoint = *flags.llm_endpoint;
  if (flags.http_cache_dir) config.http_cache_dir = *flags.http_cache_dir;
  if (flags.http_cache_bypass) config.http_cache_bypass = *flags.http_cache_bypass;
}

}  // namespace

AppConfig load_config(const std::optional<std::filesystem::path>& file,
                      const std::map<std::string, std::string>& env,
                      const CliOverrides& flags) {
  AppConfig config;
  if (file) apply_file(config, *file);
  apply_env(config, env);
  apply_flags(config, flags);
  config.run.validate();
  if (config.run.llm_mode == llm::LlmMode::Live && config.llm_endpoint.empty()) {
    throw ConfigInvalidError("llm_endpoint", "live mode needs an endpoint");
  }
  return config;
}

std::map<std::string, std::string> environment_snapshot() {
  static const char* vars[] = {
      "SPAR_K",           "SPAR_MAX_ITERATIONS", "SPAR_THRESHOLD",
      "SPAR_SEED",        "SPAR_SUBSET_SIZE",    "SPAR_PER_SOURCE_LIMIT",
      "SPAR_JUDGE_VARIANT", "SPAR_JUDGE_MODEL",  "SPAR_MODEL",
      "SPAR_LLM_MODE",    "SPAR_LLM_ENDPOINT",   "SPAR_HTTP_CACHE",
      "SPAR_LLM_API_KEY", "SPAR_S2_API_KEY",     "SPAR_NCBI_API_KEY",
  };
  std::map<std::string, std::string> env;
  for (const char* var : vars) {
    if (const char* value = std::getenv(var)) env[var] = value;
  }
  return env;
}

}  // namespace spar
