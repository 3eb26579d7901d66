#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "spar/types.hpp"

namespace spar {

/// Canonical form of a title for identity comparisons: NFC-normalized,
/// lowercased, punctuation dropped, whitespace collapsed and trimmed.
std::string normalize_title(const std::string& text);

/// Extracts a DOI ("10.xxxx/suffix") from an identifier or URL, lowercased.
std::optional<std::string> extract_doi(const std::string& id);

/// Identity under which cross-source duplicates collapse: the lowercase DOI
/// when the canonical id carries one, otherwise "t:" + normalize_title(title).
std::string dedup_key(const PaperRecord& paper);

/// Lowercased, punctuation-stripped word tokens.
std::vector<std::string> tokenize(const std::string& text);

/// Token-set Jaccard similarity over tokenize() output. Two empty sets
/// compare as identical (1.0).
double jaccard_similarity(const std::string& a, const std::string& b);

std::string to_lower_ascii(const std::string& text);
std::string trim(const std::string& text);

}  // namespace spar
