#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "spar/eval/metrics.hpp"
#include "spar/pipeline/orchestrator.hpp"
#include "spar/types.hpp"

namespace spar::eval {

struct QueryResult {
  std::string question;
  MetricCounts counts;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::map<int, double> recall_at;  // k -> recall@k
  std::string error;                // nonempty when the case failed to run
};

struct EvalReport {
  std::vector<QueryResult> per_query;
  double macro_precision = 0.0;
  double macro_recall = 0.0;
  double macro_f1 = 0.0;
  std::map<int, double> macro_recall_at;
  RunConfig config;  // echo of the configuration evaluated

  /// Fixed-width human-readable table.
  std::string table() const;
  /// Machine-readable JSON form.
  std::string to_json() const;
};

/// Builds the orchestrator for one benchmark case. The harness owns no
/// adapters or gateways itself; callers wire them per configuration.
using OrchestratorFactory = std::function<Orchestrator(const RunConfig&)>;

/// Runs the pipeline per case and aggregates document-level metrics.
/// Per-case failures are recorded in the report, not thrown.
EvalReport run_eval(const std::vector<BenchmarkCase>& benchmark, const RunConfig& config,
                    const OrchestratorFactory& factory,
                    const std::vector<int>& recall_ks = {5});

/// All 16 toggle combinations of the given config, qinterp-major order.
std::vector<RunConfig> toggle_grid(const RunConfig& base);

}  // namespace spar::eval
