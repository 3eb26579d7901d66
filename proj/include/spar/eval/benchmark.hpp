#pragma once

#include <filesystem>
#include <vector>

#include "spar/types.hpp"

namespace spar::eval {

/// Loads a benchmark file: one JSON record per line, each carrying a
/// question, an optional search_time, and a nonempty answers array. Answers
/// are either full objects (paper_id / title / abstract / authors / year /
/// citation_count / source) or, in compatibility mode, bare title strings.
std::vector<BenchmarkCase> load_benchmark(const std::filesystem::path& path);

}  // namespace spar::eval
