#include "support/corpus.hpp"

#include <algorithm>
#include <cstdio>

#include "spar/text.hpp"

namespace spar::testing {

const SyntheticPaper* SyntheticCorpus::by_key(const std::string& key) const {
  for (const auto& paper : papers) {
    if (paper.key == key) return &paper;
  }
  return nullptr;
}

const SyntheticPaper* SyntheticCorpus::by_title(const std::string& title) const {
  std::string wanted = normalize_title(title);
  for (const auto& paper : papers) {
    if (normalize_title(paper.title) == wanted) return &paper;
  }
  return nullptr;
}

std::vector<const SyntheticPaper*> SyntheticCorpus::match(const std::string& query) const {
  std::string low = to_lower_ascii(query);
  std::vector<const SyntheticPaper*> hits;
  for (const auto& paper : papers) {
    for (const auto& term : paper.terms) {
      if (low.find(term) != std::string::npos) {
        hits.push_back(&paper);
        break;
      }
    }
  }
  return hits;
}

std::size_t SyntheticCorpus::index_of(const SyntheticPaper& paper) const {
  return static_cast<std::size_t>(&paper - papers.data());
}

std::string SyntheticCorpus::openalex_id(const SyntheticPaper& paper) const {
  return "https://openalex.org/W" + std::to_string(1000 + index_of(paper));
}

std::string SyntheticCorpus::s2_id(const SyntheticPaper& paper) const {
  return "s2hash" + std::to_string(5000 + index_of(paper));
}

std::string SyntheticCorpus::arxiv_id(const SyntheticPaper& paper) const {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "2401.%05zu", 10000 + index_of(paper));
  return buf;
}

std::string SyntheticCorpus::pmid(const SyntheticPaper& paper) const {
  return std::to_string(900000 + index_of(paper));
}

namespace {

SyntheticPaper paper(std::string key, std::string doi, std::string title,
                     std::string abstract_text, int year, std::string venue,
                     int64_t citations, double relevance,
                     std::vector<std::string> terms,
                     std::vector<std::string> references = {}) {
  SyntheticPaper p;
  p.key = std::move(key);
  p.doi = std::move(doi);
  p.title = std::move(title);
  p.abstract_text = std::move(abstract_text);
  p.authors = {"A. Researcher", "B. Scholar"};
  p.year = year;
  p.venue = std::move(venue);
  p.citations = citations;
  p.relevance = relevance;
  p.terms = std::move(terms);
  p.references = std::move(references);
  p.in_openalex = true;
  p.in_s2 = true;
  return p;
}

}  // namespace

std::shared_ptr<SyntheticCorpus> make_corpus_30() {
  auto corpus = std::make_shared<SyntheticCorpus>();
  auto& papers = corpus->papers;

  papers.push_back(paper(
      "p01", "10.5555/spar.0001", "Domain Generalization via Invariant Risk Minimization",
      "Learns predictors whose optimal classifier is invariant across training "
      "environments, improving transfer to unseen domains.",
      2021, "ICML", 450, 0.92, {"domain generalization", "machine learning"},
      {"g01", "p05", "p12"}));
  papers.push_back(paper(
      "p02", "10.5555/spar.0002", "A Survey of Domain Generalization in Deep Learning",
      "Reviews representation alignment, data augmentation, and meta-learning "
      "approaches to out-of-domain robustness.",
      2022, "TPAMI", 380, 0.90, {"domain generalization"}, {"p01", "g01"}));
  papers.push_back(paper(
      "p03", "10.5555/spar.0003",
      "Out-of-Distribution Generalization Benchmarks for Vision Models",
      "Introduces a benchmark family measuring accuracy under controlled "
      "distribution shift for image classifiers.",
      2022, "NeurIPS", 210, 0.84, {"out-of-distribution"}, {"p01"}));
  papers.push_back(paper(
      "p04", "10.5555/spar.0004", "Meta-Learning for Cross-Domain Generalization",
      "Trains episodic meta-learners that simulate domain shift during training.",
      2020, "ICLR", 300, 0.81, {"domain generalization", "meta-learning"}, {"p02"}));
  papers.push_back(paper(
      "p05", "10.5555/spar.0005", "Invariant Feature Learning Across Environments",
      "Characterizes conditions under which invariant features are identifiable "
      "from multiple environments.",
      2019, "JMLR", 150, 0.74, {"machine learning"}));
  papers.back().in_openalex = false;  // Semantic Scholar only
  papers.push_back(paper(
      "p06", "10.5555/spar.0006", "Robustness of Neural Networks to Distribution Shift",
      "Measures degradation of modern architectures under natural and synthetic "
      "distribution shift.",
      2021, "NeurIPS", 190, 0.78, {"out-of-distribution", "distribution shift"}));

  // arXiv preprint with an OpenAlex twin: no DOI anywhere, the OpenAlex copy
  // has a differently punctuated title and no abstract, so the two collapse
  // by normalized title and the abstract backfills from arXiv.
  papers.push_back(paper(
      "p07", "", "Transfer Learning: Beyond the Source Domain",
      "Studies when pretraining transfers to targets far from the source task.",
      2023, "cs.LG", 0, 0.72, {"machine learning", "transfer learning"}));
  papers.back().in_s2 = false;
  papers.back().in_arxiv = true;
  papers.back().openalex_has_abstract = false;
  papers.back().openalex_title = "Transfer learning beyond the source domain";

  // The gold paper nothing retrieves directly: no terms, only references
  // from p01/p02 reach it.
  papers.push_back(paper(
      "g01", "10.5555/spar.g001",
      "Causal Invariance as a Foundation for Domain Generalization",
      "Argues that predictors built on causal parents of the label generalize "
      "across interventions, grounding domain generalization in causality.",
      2018, "CLeaR", 520, 0.93, {}));

  papers.push_back(paper(
      "p08", "10.5555/spar.0008", "Machine Learning for Weather Nowcasting",
      "Applies convolutional models to short-term precipitation forecasts.", 2020,
      "JAMC", 80, 0.15, {"machine learning"}));
  papers.back().in_s2 = false;
  papers.push_back(paper(
      "p09", "10.5555/spar.0009", "A Machine Learning Pipeline for Retail Demand Forecasting",
      "Describes an industrial forecasting stack with gradient boosted trees.",
      2019, "KDD", 60, 0.10, {"machine learning"}));
  papers.push_back(paper(
      "p10", "10.5555/spar.0010", "Machine Learning Methods in Astronomy Surveys",
      "Surveys classification pipelines for transient detection.", 2021, "MNRAS",
      95, 0.20, {"machine learning"}));
  papers.back().in_s2 = false;
  papers.push_back(paper(
      "p11", "10.5555/spar.0011", "Interpretable Machine Learning: A Field Guide",
      "Organizes post-hoc and intrinsic interpretability methods.", 2020, "CACM",
      120, 0.35, {"machine learning"}));
  papers.push_back(paper(
      "p12", "10.5555/spar.0012", "Convergence Notes on Stochastic Gradient Descent",
      "Collects step-size schedules and convergence rates.", 2017, "OptML", 40,
      0.30, {}));  // reachable only as a reference of p01

  papers.push_back(paper(
      "p13", "10.5555/spar.0013", "Federated Domain Generalization with Client Drift",
      "Combines federated averaging with invariance penalties under "
      "non-identical client distributions.",
      2022, "ICML", 130, 0.76, {"federated learning"}));
  papers.push_back(paper(
      "p14", "10.5555/spar.0014", "When Invariant Risk Minimization Fails",
      "Constructs settings where IRM provably selects spurious features.", 2021,
      "ICLR", 160, 0.69, {"invariant risk minimization"}));
  papers.push_back(paper(
      "p15", "10.5555/spar.0015", "Domain Generalization for Medical Imaging Diagnostics",
      "Evaluates hospital-level shift and augmentation-based remedies for "
      "radiology classifiers.",
      2022, "MICCAI", 110, 0.83, {"medical imaging"}));
  papers.push_back(paper(
      "p16", "10.5555/spar.0016", "Test-Time Adaptation via Entropy Minimization",
      "Adapts batch statistics and minimizes prediction entropy at deployment.",
      2021, "ICLR", 240, 0.71, {"test-time adaptation"}));
  papers.push_back(paper(
      "p17", "10.5555/spar.0017", "A Benchmark Suite for Distribution Shift in the Wild",
      "Curates real-world shift scenarios spanning sensors, time, and geography.",
      2021, "ICML", 205, 0.66, {"distribution shift"}));

  papers.push_back(paper(
      "b01", "10.5555/spar.b001", "mRNA Vaccine Platforms for Emerging Infectious Diseases",
      "Reviews rapid-response vaccine platforms and manufacturing timelines.",
      2021, "Nature Reviews Drug Discovery", 600, 0.86, {"vaccine"}));
  papers.back().in_s2 = false;
  papers.back().in_pubmed = true;
  papers.push_back(paper(
      "b02", "10.5555/spar.b002", "Reverse Vaccinology in the Genomic Era",
      "Genome-first antigen discovery and its clinical track record.", 2016,
      "Nature Reviews Microbiology", 350, 0.72, {"vaccine"}));
  papers.back().in_openalex = false;
  papers.back().in_s2 = false;
  papers.back().in_pubmed = true;
  papers.push_back(paper(
      "b03", "10.5555/spar.b003", "Cold Chain Logistics for Vaccination Programs",
      "Operational study of distribution constraints in low-resource settings.",
      2018, "Vaccine", 45, 0.25, {"vaccine"}));
  papers.back().in_openalex = false;
  papers.back().in_s2 = false;
  papers.back().in_pubmed = true;

  papers.push_back(paper(
      "r01", "10.5555/spar.r001", "Target Networks and Convergence in Deep Q-Learning",
      "Analyzes the stabilizing role of target networks under function "
      "approximation.",
      2022, "NeurIPS", 140, 0.82, {"reinforcement learning", "target networks"}));
  papers.push_back(paper(
      "r02", "10.5555/spar.r002",
      "A Survey of Exploration Strategies in Reinforcement Learning",
      "Taxonomy of exploration bonuses, posterior sampling, and intrinsic "
      "motivation.",
      2020, "JAIR", 180, 0.30, {"reinforcement learning"}));

  papers.push_back(paper(
      "p18", "10.5555/spar.0018", "Benchmarking Tabular Models Under Covariate Shift",
      "Compares boosted trees and neural baselines on shifted tabular tasks.",
      2023, "NeurIPS", 55, 0.45, {"machine learning"}));
  papers.push_back(paper(
      "p19", "10.5555/spar.0019", "Deep Ensembles for Uncertainty Estimation",
      "Shows simple ensembles produce well-calibrated predictive uncertainty.",
      2017, "NeurIPS", 410, 0.40, {"machine learning"}));
  papers.push_back(paper(
      "p20", "10.5555/spar.0020", "Self-Supervised Pretraining and Downstream Robustness",
      "Links contrastive pretraining objectives to robustness on corrupted data.",
      2022, "CVPR", 175, 0.48, {"machine learning", "out-of-distribution"}));
  papers.push_back(paper(
      "p21", "10.5555/spar.0021", "Data Augmentation Strategies for Robust Image Models",
      "Catalogs augmentation policies and their effect on corruption error.",
      2019, "CVPR", 260, 0.44, {"machine learning"}));
  papers.back().in_s2 = false;
  papers.push_back(paper(
      "p22", "10.5555/spar.0022", "On the Calibration of Modern Neural Networks",
      "Temperature scaling fixes most miscalibration in deep classifiers.", 2017,
      "ICML", 520, 0.38, {"machine learning"}));
  papers.push_back(paper(
      "p23", "10.5555/spar.0023", "Spurious Correlations in Vision Datasets",
      "Audits popular datasets for shortcut features exploited by models.", 2020,
      "ECCV", 150, 0.49, {"machine learning", "out-of-distribution"}));
  papers.push_back(paper(
      "p24", "10.5555/spar.0024", "Architectures for Continual Learning: A Review",
      "Reviews rehearsal, regularization, and expansion approaches.", 2021,
      "TNNLS", 90, 0.42, {"machine learning"}));

  return corpus;
}

}  // namespace spar::testing
