#include "spar/pipeline/orchestrator.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <set>

#include <json.hpp>

#include "spar/errors.hpp"
#include "spar/text.hpp"

namespace spar {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string event_line(ordered_json event) { return event.dump(); }

ordered_json json_sources(const std::vector<SourceKind>& sources) {
  ordered_json out = ordered_json::array();
  for (auto s : sources) out.push_back(to_string(s));
  return out;
}

// Scores round-tripped through text at fixed precision, so artifacts do not
// depend on shortest-float printing quirks.
double rounded(double score) { return std::round(score * 1e6) / 1e6; }

}  // namespace

void RunConfig::validate() const {
  if (cache_target < 1) throw ConfigInvalidError("k", "must be >= 1");
  if (max_iterations < 1) throw ConfigInvalidError("max_iterations", "must be >= 1");
  if (threshold < 0.0 || threshold > 1.0) {
    throw ConfigInvalidError("threshold", "must lie in [0,1]");
  }
  if (subset_size < 1) throw ConfigInvalidError("subset_size", "must be >= 1");
  if (per_source_limit < 1) throw ConfigInvalidError("per_source_limit", "must be >= 1");
  if (refchain_fanout_cap < 1) throw ConfigInvalidError("refchain_fanout_cap", "must be >= 1");
  if (evolution_paper_cap < 1) throw ConfigInvalidError("evolution_paper_cap", "must be >= 1");
  if (jaccard_threshold < 0.0 || jaccard_threshold > 1.0) {
    throw ConfigInvalidError("jaccard_threshold", "must lie in [0,1]");
  }
  if (max_refinements < 1) throw ConfigInvalidError("max_refinements", "must be >= 1");
  if (max_tokens < 1) throw ConfigInvalidError("max_tokens", "must be >= 1");
}

std::vector<JudgedPaper> select_top_k(const std::vector<JudgedPaper>& pool, int k) {
  std::vector<JudgedPaper> sorted = pool;
  std::stable_sort(sorted.begin(), sorted.end(), [](const JudgedPaper& a,
                                                    const JudgedPaper& b) {
    if (a.judgement.score != b.judgement.score) {
      return a.judgement.score > b.judgement.score;
    }
    int64_t ca = a.paper.citation_count.value_or(-1);
    int64_t cb = b.paper.citation_count.value_or(-1);
    if (ca != cb) return ca > cb;
    int ya = a.paper.year.value_or(INT_MIN);
    int yb = b.paper.year.value_or(INT_MIN);
    if (ya != yb) return ya > yb;
    return dedup_key(a.paper) < dedup_key(b.paper);
  });
  if (static_cast<int>(sorted.size()) > k) sorted.resize(k);
  return sorted;
}

std::string RunReport::artifact_text() const {
  std::string out;
  for (const auto& line : artifact_lines) {
    out += line;
    out += "\n";
  }
  return out;
}

void RunReport::write_artifact(const std::filesystem::path& path) const {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write run artifact: " + path.string());
  out << artifact_text();
}

Orchestrator::Orchestrator(std::shared_ptr<sources::SourceHub> hub,
                           std::shared_ptr<llm::LlmGateway> gateway, RunConfig config)
    : hub_(std::move(hub)), gateway_(std::move(gateway)), config_(std::move(config)) {
  config_.validate();
}

RunReport Orchestrator::run(const UserQuery& query) {
  query.validate();
  auto started = std::chrono::steady_clock::now();

  RunReport report;
  SearchState& state = report.state;
  state.initial_query = query;

  auto emit = [&](ordered_json event) {
    report.artifact_lines.push_back(event_line(std::move(event)));
  };
  auto warn = [&](const std::string& message) {
    report.warnings.push_back(message);
    emit({{"event", "warning"}, {"message", message}});
  };

  emit({{"event", "run_start"},
        {"query", query.text},
        {"search_time", query.search_time ? query.search_time->to_string() : ""},
        {"k", config_.cache_target},
        {"max_iterations", config_.max_iterations},
        {"threshold", rounded(config_.threshold)},
        {"subset_size", config_.subset_size},
        {"seed", config_.seed},
        {"toggles",
         {{"qinterp", config_.toggles.qinterp},
          {"refchain", config_.toggles.refchain},
          {"evolution", config_.toggles.evolution},
          {"rerank", config_.toggles.rerank}}},
        {"judge_variant", to_string(config_.judge_variant)},
        {"judge_model", config_.judge_model}});

  // --- Interpretation -------------------------------------------------------
  QueryUnderstanding understanding(
      gateway_, {config_.model, 0.0, config_.max_tokens, config_.max_refinements});
  QueryInterpretation interp = config_.toggles.qinterp
                                   ? understanding.interpret(query)
                                   : QueryUnderstanding::passthrough(query);

  if (!config_.source_allowlist.empty()) {
    std::vector<SourceKind> narrowed;
    for (auto source : interp.sources) {
      if (std::find(config_.source_allowlist.begin(), config_.source_allowlist.end(),
                    source) != config_.source_allowlist.end()) {
        narrowed.push_back(source);
      }
    }
    if (narrowed.empty()) narrowed = config_.source_allowlist;
    interp.sources = narrowed;
  }
  {
    // Drop sources nobody wired an adapter for.
    std::vector<SourceKind> available;
    for (auto source : interp.sources) {
      if (hub_->has_adapter(source)) {
        available.push_back(source);
      } else {
        warn("no adapter for selected source " + to_string(source));
      }
    }
    if (available.empty()) {
      throw ConfigInvalidError("sources", "no adapter available for any selected source");
    }
    interp.sources = available;
  }
  state.interpretation = interp;

  emit({{"event", "interpretation"},
        {"intent", to_string(interp.intent)},
        {"intent_text", interp.intent_text},
        {"domain", interp.domain},
        {"sources", json_sources(interp.sources)},
        {"needs_expansion", interp.needs_expansion},
        {"temporal_required", interp.temporal.required},
        {"temporal_bounds", interp.temporal.bound_text()},
        {"refined_queries", interp.refined_queries}});

  state.pending_queries = config_.toggles.qinterp
                              ? QueryUnderstanding::build_query_list(interp, query)
                              : std::vector<std::string>{query.text};

  // The benchmark cutoff acts as an extra upper bound at search time.
  TemporalConstraint temporal = interp.temporal;
  if (query.search_time && (!temporal.upper || *temporal.upper > *query.search_time)) {
    temporal.upper = query.search_time;
  }
  temporal.validate();

  Judgement::Options judge_options;
  judge_options.variant = config_.judge_variant;
  judge_options.model = config_.judge_model;
  judge_options.max_tokens = config_.max_tokens;
  auto judgement = std::make_shared<Judgement>(gateway_, judge_options);

  RefChain refchain(hub_, judgement,
                    {config_.threshold, config_.inclusive_threshold,
                     config_.refchain_fanout_cap});

  QueryEvolver::Options evolve_options;
  evolve_options.model = config_.model;
  evolve_options.temperature = config_.evolve_temperature;
  evolve_options.jaccard_threshold = config_.jaccard_threshold;
  QueryEvolver evolver(gateway_, evolve_options);

  std::map<std::string, RelevanceJudgement> judge_memo;
  std::set<std::string> expanded_keys;
  std::set<std::string> pool_keys;

  // --- Retrieval-expansion loop ---------------------------------------------
  while (!state.pending_queries.empty() && state.iteration < config_.max_iterations &&
         static_cast<int>(state.paper_cache.size()) < config_.cache_target) {
    ++state.iteration;
    std::vector<std::string> batch;
    batch.swap(state.pending_queries);
    std::vector<std::string> executed;

    std::vector<PaperRecord> retrieved;
    for (const auto& q : batch) {
      if (state.already_searched(q)) continue;  // a query never runs twice
      state.searched_queries.push_back(q);
      executed.push_back(q);
      for (auto source : interp.sources) {
        try {
          sources::SearchPage page =
              hub_->search(source, q, temporal, config_.per_source_limit);
          ++report.searches;
          emit({{"event", "search"},
                {"iteration", state.iteration},
                {"query", q},
                {"source", to_string(source)},
                {"returned", page.records.size()}});
          retrieved.insert(retrieved.end(), page.records.begin(), page.records.end());
        } catch (const ConfigInvalidError&) {
          throw;
        } catch (const Error& e) {
          warn("search failed on " + to_string(source) + " for '" + q + "': " + e.what());
        }
      }
    }
    report.searched_per_iteration.push_back(executed);
    for (const auto& w : hub_->drain_warnings()) warn(w);

    // Merge the iteration's hits, then judge only papers never seen before.
    std::vector<JudgedPaper> judged;
    for (const auto& record : sources::SourceHub::merge_dedup(retrieved)) {
      std::string key = dedup_key(record);
      if (judge_memo.count(key)) continue;
      RelevanceJudgement judgement_result = judgement->judge(query, record);
      ++report.papers_judged;
      judge_memo.emplace(key, judgement_result);
      emit({{"event", "judge"},
            {"iteration", state.iteration},
            {"key", key},
            {"title", record.title},
            {"depth", record.refchain_depth},
            {"score", rounded(judgement_result.score)},
            {"parse_failed", judgement_result.parse_failed}});
      judged.push_back({record, judgement_result});
    }

    for (auto& admitted :
         Judgement::filter_related(judged, config_.threshold, config_.inclusive_threshold)) {
      std::string key = dedup_key(admitted.paper);
      if (pool_keys.insert(key).second) {
        state.related_pool.push_back(std::move(admitted));
      }
    }

    if (config_.toggles.refchain) {
      RefChain::Stats stats;
      std::size_t judged_before = judge_memo.size();
      state.related_pool =
          refchain.expand(query, state.related_pool, expanded_keys, judge_memo, &stats);
      pool_keys.clear();
      for (const auto& member : state.related_pool) {
        pool_keys.insert(dedup_key(member.paper));
      }
      report.references_fetched += stats.references_fetched;
      report.papers_judged += static_cast<int64_t>(judge_memo.size() - judged_before);
      for (const auto& w : hub_->drain_warnings()) warn(w);
      emit({{"event", "refchain"},
            {"iteration", state.iteration},
            {"members_expanded", stats.members_expanded},
            {"references_fetched", stats.references_fetched},
            {"references_admitted", stats.references_admitted}});
    }

    state.paper_cache = select_top_k(state.related_pool, config_.cache_target);

    ordered_json cache_keys = ordered_json::array();
    for (const auto& entry : state.paper_cache) cache_keys.push_back(dedup_key(entry.paper));
    emit({{"event", "iteration_end"},
          {"iteration", state.iteration},
          {"searched", executed},
          {"pool_size", state.related_pool.size()},
          {"cache_size", state.paper_cache.size()},
          {"cache", cache_keys}});

    // Evolution queues follow-ups unless the cache target already stopped
    // the run; queued queries may still never execute (iteration bound).
    bool cache_full = static_cast<int>(state.paper_cache.size()) >= config_.cache_target;
    if (config_.toggles.evolution && !cache_full) {
      std::vector<std::string> candidates;
      int evolved_from = 0;
      for (const auto& entry : state.paper_cache) {
        if (evolved_from >= config_.evolution_paper_cap) break;
        ++evolved_from;
        std::vector<std::string> generated =
            evolver.evolve(query, state.searched_queries, entry.paper);
        ++report.llm_calls;
        emit({{"event", "evolve"},
              {"iteration", state.iteration},
              {"paper", dedup_key(entry.paper)},
              {"generated", generated.size()}});
        candidates.insert(candidates.end(), generated.begin(), generated.end());
      }
      std::vector<std::string> selected = evolver.select_and_filter(
          candidates, state.searched_queries, state.pending_queries, config_.subset_size,
          config_.seed + static_cast<uint64_t>(state.iteration));
      state.pending_queries.insert(state.pending_queries.end(), selected.begin(),
                                   selected.end());
      emit({{"event", "queue"},
            {"iteration", state.iteration},
            {"candidates", candidates.size()},
            {"queued", selected}});
    }
  }

  // --- Final ranking ---------------------------------------------------------
  if (config_.toggles.rerank && !state.paper_cache.empty()) {
    Reranker reranker(gateway_, {config_.model, 0.0, 2048, 10});
    Reranker::Outcome outcome =
        reranker.rerank(query, state.paper_cache, interp.temporal.required);
    report.final_papers = std::move(outcome.ranked);
    report.rerank_fallback = outcome.fallback;
    for (const auto& w : outcome.warnings) warn(w);
    emit({{"event", "rerank"},
          {"fallback", outcome.fallback},
          {"window", std::min<std::size_t>(state.paper_cache.size(), 10)}});
  } else {
    for (const auto& entry : state.paper_cache) {
      report.final_papers.push_back({entry.paper, entry.judgement.score});
    }
  }

  for (std::size_t i = 0; i < report.final_papers.size(); ++i) {
    const auto& ranked = report.final_papers[i];
    emit({{"event", "final"},
          {"rank", i + 1},
          {"key", dedup_key(ranked.paper)},
          {"id", ranked.paper.canonical_id},
          {"title", ranked.paper.title},
          {"year", ranked.paper.year ? ordered_json(*ranked.paper.year) : ordered_json()},
          {"venue", ranked.paper.venue.value_or("")},
          {"source", to_string(ranked.paper.source)},
          {"depth", ranked.paper.refchain_depth},
          {"score", rounded(ranked.score)}});
  }

  report.llm_calls = report.papers_judged + report.llm_calls +
                     (config_.toggles.qinterp ? 1 : 0);
  emit({{"event", "run_end"},
        {"iterations", state.iteration},
        {"searched_total", state.searched_queries.size()},
        {"pool_size", state.related_pool.size()},
        {"cache_size", state.paper_cache.size()},
        {"searches", report.searches},
        {"papers_judged", report.papers_judged},
        {"references_fetched", report.references_fetched}});

  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return report;
}

}  // namespace spar
