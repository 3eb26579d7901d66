#include "spar/eval/harness.hpp"

#include <cstdio>

#include <json.hpp>

#include "spar/errors.hpp"

namespace spar::eval {

EvalReport run_eval(const std::vector<BenchmarkCase>& benchmark, const RunConfig& config,
                    const OrchestratorFactory& factory, const std::vector<int>& recall_ks) {
  EvalReport report;
  report.config = config;

  for (const auto& benchmark_case : benchmark) {
    QueryResult result;
    result.question = benchmark_case.question;
    try {
      Orchestrator orchestrator = factory(config);
      UserQuery query{benchmark_case.question, benchmark_case.search_time};
      RunReport run = orchestrator.run(query);

      std::vector<PaperRecord> ranked;
      for (const auto& scored : run.final_papers) ranked.push_back(scored.paper);

      result.counts = match(ranked, benchmark_case.answers);
      result.precision = precision(result.counts);
      result.recall = recall(result.counts);
      result.f1 = f1(result.precision, result.recall);
      for (int k : recall_ks) {
        result.recall_at[k] = recall_at_k(ranked, benchmark_case.answers, k);
      }
    } catch (const CassetteMissError&) {
      throw;  // a broken replay fixture must not masquerade as a zero score
    } catch (const Error& e) {
      result.error = e.what();
    }
    report.per_query.push_back(std::move(result));
  }

  // Macro averages over all queries; failed cases contribute zeros.
  std::size_t n = report.per_query.size();
  if (n > 0) {
    for (const auto& row : report.per_query) {
      report.macro_precision += row.precision;
      report.macro_recall += row.recall;
      report.macro_f1 += row.f1;
      for (int k : recall_ks) {
        auto it = row.recall_at.find(k);
        report.macro_recall_at[k] += it == row.recall_at.end() ? 0.0 : it->second;
      }
    }
    report.macro_precision /= static_cast<double>(n);
    report.macro_recall /= static_cast<double>(n);
    report.macro_f1 /= static_cast<double>(n);
    for (auto& [k, value] : report.macro_recall_at) value /= static_cast<double>(n);
  }
  return report;
}

std::string EvalReport::table() const {
  std::string out;
  char line[512];
  std::snprintf(line, sizeof(line), "%-50s %8s %8s %8s %4s %4s %4s", "question",
                "prec", "recall", "f1", "tp", "fp", "fn");
  out += line;
  out += "\n";
  for (const auto& row : per_query) {
    std::string question = row.question.size() > 50 ? row.question.substr(0, 47) + "..."
                                                    : row.question;
    if (!row.error.empty()) {
      std::snprintf(line, sizeof(line), "%-50s %8s %8s %8s %4s %4s %4s  ERROR: %s",
                    question.c_str(), "-", "-", "-", "-", "-", "-", row.error.c_str());
    } else {
      std::snprintf(line, sizeof(line), "%-50s %8.4f %8.4f %8.4f %4zu %4zu %4zu",
                    question.c_str(), row.precision, row.recall, row.f1, row.counts.tp,
                    row.counts.fp, row.counts.fn);
    }
    out += line;
    out += "\n";
  }
  std::snprintf(line, sizeof(line), "%-50s %8.4f %8.4f %8.4f", "macro",
                macro_precision, macro_recall, macro_f1);
  out += line;
  out += "\n";
  for (const auto& [k, value] : macro_recall_at) {
    std::snprintf(line, sizeof(line), "macro recall@%-37d %8.4f", k, value);
    out += line;
    out += "\n";
  }
  return out;
}

std::string EvalReport::to_json() const {
  nlohmann::ordered_json doc;
  doc["config"] = {
      {"k", config.cache_target},
      {"max_iterations", config.max_iterations},
      {"threshold", config.threshold},
      {"subset_size", config.subset_size},
      {"seed", config.seed},
      {"toggles",
       {{"qinterp", config.toggles.qinterp},
        {"refchain", config.toggles.refchain},
        {"evolution", config.toggles.evolution},
        {"rerank", config.toggles.rerank}}},
      {"judge_variant", to_string(config.judge_variant)},
      {"judge_model", config.judge_model},
  };
  doc["macro"] = {{"precision", macro_precision},
                  {"recall", macro_recall},
                  {"f1", macro_f1}};
  for (const auto& [k, value] : macro_recall_at) {
    doc["macro"]["recall_at_" + std::to_string(k)] = value;
  }
  doc["per_query"] = nlohmann::ordered_json::array();
  for (const auto& row : per_query) {
    nlohmann::ordered_json entry = {
        {"question", row.question},
        {"tp", row.counts.tp},
        {"fp", row.counts.fp},
        {"fn", row.counts.fn},
        {"precision", row.precision},
        {"recall", row.recall},
        {"f1", row.f1},
    };
    for (const auto& [k, value] : row.recall_at) {
      entry["recall_at_" + std::to_string(k)] = value;
    }
    if (!row.error.empty()) entry["error"] = row.error;
    doc["per_query"].push_back(entry);
  }
  return doc.dump(2);
}

std::vector<RunConfig> toggle_grid(const RunConfig& base) {
  std::vector<RunConfig> grid;
  for (int mask = 0; mask < 16; ++mask) {
    RunConfig config = base;
    config.toggles.qinterp = (mask & 8) != 0;
    config.toggles.refchain = (mask & 4) != 0;
    config.toggles.evolution = (mask & 2) != 0;
    config.toggles.rerank = (mask & 1) != 0;
    grid.push_back(config);
  }
  return grid;
}

}  // namespace spar::eval
