#pragma once

#include <vector>

#include "spar/types.hpp"

namespace spar::eval {

/// One-to-one matching of retrieved papers against gold stubs: a pair
/// matches on equal canonical ids (case-insensitive) or equal normalized
/// titles; each side matches at most once.
MetricCounts match(const std::vector<PaperRecord>& retrieved,
                   const std::vector<GoldStub>& gold);

/// tp/(tp+fp); 0 when the denominator is 0.
double precision(const MetricCounts& counts);

/// tp/(tp+fn); 0 when the denominator is 0.
double recall(const MetricCounts& counts);

/// Harmonic mean of precision and recall; 0 when both are 0.
double f1(double precision_value, double recall_value);

/// recall() over only the first k ranked papers.
double recall_at_k(const std::vector<PaperRecord>& ranked,
                   const std::vector<GoldStub>& gold, int k);

}  // namespace spar::eval
