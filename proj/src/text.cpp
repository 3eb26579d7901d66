#include "spar/text.hpp"

#include <unicode/uchar.h>
#include <unicode/unorm2.h>
#include <unicode/ustring.h>
#include <unicode/utf16.h>
#include <unicode/utf8.h>

#include <algorithm>
#include <cctype>
#include <regex>
#include <set>

#include "spar/errors.hpp"

namespace spar {

namespace {

std::u16string to_utf16(const std::string& utf8) {
  std::u16string out(utf8.size() + 1, u'\0');
  UErrorCode ec = U_ZERO_ERROR;
  int32_t len = 0;
  u_strFromUTF8(out.data(), static_cast<int32_t>(out.size()), &len, utf8.data(),
                static_cast<int32_t>(utf8.size()), &ec);
  if (U_FAILURE(ec)) {
    // Invalid UTF-8: substitute the offending bytes and continue.
    ec = U_ZERO_ERROR;
    u_strFromUTF8WithSub(out.data(), static_cast<int32_t>(out.size()), &len,
                         utf8.data(), static_cast<int32_t>(utf8.size()), 0xFFFD,
                         nullptr, &ec);
    if (U_FAILURE(ec)) return u"";
  }
  out.resize(static_cast<std::size_t>(len));
  return out;
}

std::u16string nfc(const std::u16string& text) {
  UErrorCode ec = U_ZERO_ERROR;
  const UNormalizer2* norm = unorm2_getNFCInstance(&ec);
  if (U_FAILURE(ec)) return text;
  std::u16string out(text.size() * 2 + 16, u'\0');
  int32_t len = unorm2_normalize(norm, text.data(), static_cast<int32_t>(text.size()),
                                 out.data(), static_cast<int32_t>(out.size()), &ec);
  if (U_FAILURE(ec)) return text;
  out.resize(static_cast<std::size_t>(len));
  return out;
}

void append_utf8(std::string& out, UChar32 cp) {
  char buf[4];
  int32_t offset = 0;
  UBool err = false;
  U8_APPEND(reinterpret_cast<uint8_t*>(buf), offset, 4, cp, err);
  if (!err) out.append(buf, static_cast<std::size_t>(offset));
}

}  // namespace

std::string normalize_title(const std::string& text) {
  std::u16string composed = nfc(to_utf16(text));
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  int32_t i = 0;
  const int32_t n = static_cast<int32_t>(composed.size());
  while (i < n) {
    UChar32 cp;
    U16_NEXT(composed.data(), i, n, cp);
    if (u_isUWhiteSpace(cp)) {
      pending_space = !out.empty();
      continue;
    }
    if (u_ispunct(cp)) continue;  // dropped, not mapped to space
    if (pending_space) {
      out.push_back(' ');
      pending_space = false;
    }
    append_utf8(out, u_tolower(cp));
  }
  return out;
}

std::optional<std::string> extract_doi(const std::string& id) {
  static const std::regex doi_pattern(R"(10\.\d{4,9}/[^\s"'<>]+)");
  std::smatch m;
  if (!std::regex_search(id, m, doi_pattern)) return std::nullopt;
  std::string doi = m.str();
  // Trailing sentence punctuation is never part of a DOI.
  while (!doi.empty() && (doi.back() == '.' || doi.back() == ',' || doi.back() == ';' ||
                          doi.back() == ')')) {
    doi.pop_back();
  }
  return to_lower_ascii(doi);
}

std::string dedup_key(const PaperRecord& paper) {
  if (auto doi = extract_doi(paper.canonical_id)) return *doi;
  return "t:" + normalize_title(paper.title);
}

std::vector<std::string> tokenize(const std::string& text) {
  std::string normalized = normalize_title(text);
  std::vector<std::string> tokens;
  std::size_t start = 0;
  while (start < normalized.size()) {
    std::size_t end = normalized.find(' ', start);
    if (end == std::string::npos) end = normalized.size();
    if (end > start) tokens.push_back(normalized.substr(start, end - start));
    start = end + 1;
  }
  return tokens;
}

double jaccard_similarity(const std::string& a, const std::string& b) {
  auto ta = tokenize(a);
  auto tb = tokenize(b);
  std::set<std::string> sa(ta.begin(), ta.end());
  std::set<std::string> sb(tb.begin(), tb.end());
  if (sa.empty() && sb.empty()) return 1.0;
  std::size_t intersection = 0;
  for (const auto& t : sa) {
    if (sb.count(t)) ++intersection;
  }
  std::size_t union_size = sa.size() + sb.size() - intersection;
  return static_cast<double>(intersection) / static_cast<double>(union_size);
}

std::string to_lower_ascii(const std::string& text) {
  std::string out = text;
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

std::string trim(const std::string& text) {
  auto begin = text.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  auto end = text.find_last_not_of(" \t\r\n");
  return text.substr(begin, end - begin + 1);
}

}  // namespace spar
