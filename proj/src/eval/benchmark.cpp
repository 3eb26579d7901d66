#include "spar/eval/benchmark.hpp"

#include <fstream>

#include <json.hpp>

#include "spar/errors.hpp"
#include "spar/text.hpp"

namespace spar::eval {

namespace {

using nlohmann::json;

GoldStub stub_from_json(const json& answer, int line) {
  GoldStub stub;
  if (answer.is_string()) {
    // Compatibility mode: a bare title.
    stub.title = answer.get<std::string>();
    if (trim(stub.title).empty()) {
      throw SchemaError(line, "answers", "answer title is empty");
    }
    return stub;
  }
  if (!answer.is_object()) {
    throw SchemaError(line, "answers", "answer must be an object or a title string");
  }
  stub.canonical_id = answer.value("paper_id", "");
  stub.title = answer.value("title", "");
  if (trim(stub.canonical_id).empty() && trim(stub.title).empty()) {
    throw SchemaError(line, "answers", "answer needs a paper_id or a title");
  }
  if (answer.contains("abstract") && answer["abstract"].is_string()) {
    stub.abstract_text = answer["abstract"].get<std::string>();
  }
  if (answer.contains("authors") && answer["authors"].is_array()) {
    for (const auto& author : answer["authors"]) {
      if (author.is_string()) stub.authors.push_back(author.get<std::string>());
    }
  }
  if (answer.contains("year") && answer["year"].is_number()) {
    stub.year = answer["year"].get<int>();
  }
  if (answer.contains("citation_count") && answer["citation_count"].is_number()) {
    stub.citation_count = answer["citation_count"].get<int64_t>();
    if (*stub.citation_count < 0) {
      throw SchemaError(line, "citation_count", "must be non-negative");
    }
  }
  if (answer.contains("source") && answer["source"].is_string()) {
    auto kind = parse_source(answer["source"].get<std::string>());
    if (!kind) {
      throw SchemaError(line, "source",
                        "unknown source '" + answer["source"].get<std::string>() + "'");
    }
    stub.source = kind;
  }
  return stub;
}

}  // namespace

std::vector<BenchmarkCase> load_benchmark(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FileNotFoundError("cannot open benchmark: " + path.string());

  std::vector<BenchmarkCase> cases;
  std::string line_text;
  int line = 0;
  while (std::getline(in, line_text)) {
    ++line;
    if (trim(line_text).empty()) continue;
    auto doc = json::parse(line_text, nullptr, /*allow_exceptions=*/false);
    if (doc.is_discarded() || !doc.is_object()) {
      throw SchemaError(line, "", "line is not a JSON object");
    }

    BenchmarkCase benchmark_case;
    if (!doc.contains("question") || !doc["question"].is_string() ||
        trim(doc["question"].get<std::string>()).empty()) {
      throw SchemaError(line, "question", "missing or empty");
    }
    benchmark_case.question = doc["question"].get<std::string>();

    if (doc.contains("search_time") && doc["search_time"].is_string() &&
        !doc["search_time"].get<std::string>().empty()) {
      auto date = Date::try_parse(doc["search_time"].get<std::string>());
      if (!date) throw SchemaError(line, "search_time", "expected YYYY-MM-DD");
      benchmark_case.search_time = date;
    }

    if (!doc.contains("answers") || !doc["answers"].is_array() || doc["answers"].empty()) {
      throw SchemaError(line, "answers", "missing or empty");
    }
    for (const auto& answer : doc["answers"]) {
      benchmark_case.answers.push_back(stub_from_json(answer, line));
    }
    try {
      benchmark_case.validate();
    } catch (const ValidationError& e) {
      throw SchemaError(line, "answers", e.what());
    }
    cases.push_back(std::move(benchmark_case));
  }
  return cases;
}

}  // namespace spar::eval
