#include "spar/eval/metrics.hpp"

#include <algorithm>

#include "spar/errors.hpp"
#include "spar/text.hpp"

namespace spar::eval {

namespace {

bool stub_matches(const PaperRecord& paper, const GoldStub& stub) {
  if (!stub.canonical_id.empty() && !paper.canonical_id.empty()) {
    if (to_lower_ascii(stub.canonical_id) == to_lower_ascii(paper.canonical_id)) {
      return true;
    }
    // Identifiers often differ only in representation (URL vs bare DOI).
    auto paper_doi = extract_doi(paper.canonical_id);
    auto stub_doi = extract_doi(stub.canonical_id);
    if (paper_doi && stub_doi && *paper_doi == *stub_doi) return true;
  }
  if (!stub.title.empty() && !paper.title.empty()) {
    return normalize_title(stub.title) == normalize_title(paper.title);
  }
  return false;
}

}  // namespace

MetricCounts match(const std::vector<PaperRecord>& retrieved,
                   const std::vector<GoldStub>& gold) {
  std::vector<bool> gold_taken(gold.size(), false);
  MetricCounts counts;
  for (const auto& paper : retrieved) {
    bool matched = false;
    for (std::size_t g = 0; g < gold.size(); ++g) {
      if (gold_taken[g]) continue;
      if (stub_matches(paper, gold[g])) {
        gold_taken[g] = true;
        matched = true;
        break;
      }
    }
    if (matched) {
      ++counts.tp;
    } else {
      ++counts.fp;
    }
  }
  counts.fn = gold.size() - counts.tp;
  return counts;
}

double precision(const MetricCounts& counts) {
  std::size_t denominator = counts.tp + counts.fp;
  return denominator == 0 ? 0.0 : static_cast<double>(counts.tp) / denominator;
}

double recall(const MetricCounts& counts) {
  std::size_t denominator = counts.tp + counts.fn;
  return denominator == 0 ? 0.0 : static_cast<double>(counts.tp) / denominator;
}

double f1(double precision_value, double recall_value) {
  double sum = precision_value + recall_value;
  return sum == 0.0 ? 0.0 : 2.0 * precision_value * recall_value / sum;
}

double recall_at_k(const std::vector<PaperRecord>& ranked,
                   const std::vector<GoldStub>& gold, int k) {
  if (k < 1) throw ValidationError("recall@k needs k >= 1");
  std::size_t take = std::min<std::size_t>(static_cast<std::size_t>(k), ranked.size());
  std::vector<PaperRecord> head(ranked.begin(), ranked.begin() + take);
  return recall(match(head, gold));
}

}  // namespace spar::eval
