#include "spar/sources/arxiv.hpp"

#include <sstream>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include "spar/errors.hpp"
#include "spar/text.hpp"

namespace spar::sources {

namespace {

namespace pt = boost::property_tree;

// "http://arxiv.org/abs/1706.03762v5" -> "arxiv:1706.03762"
std::string canonical_from_entry_id(const std::string& entry_id) {
  auto pos = entry_id.find("/abs/");
  std::string id = pos == std::string::npos ? entry_id : entry_id.substr(pos + 5);
  auto version = id.find_last_of('v');
  if (version != std::string::npos && version + 1 < id.size() &&
      std::isdigit(static_cast<unsigned char>(id[version + 1]))) {
    id = id.substr(0, version);
  }
  return "arxiv:" + id;
}

std::string collapse_ws(const std::string& text) {
  std::string out;
  bool space = false;
  for (char c : text) {
    if (c == '\n' || c == '\r' || c == '\t' || c == ' ') {
      space = !out.empty();
      continue;
    }
    if (space) out.push_back(' ');
    space = false;
    out.push_back(c);
  }
  return out;
}

}  // namespace

ArxivAdapter::ArxivAdapter(std::shared_ptr<net::HttpClient> http, std::string base_url)
    : http_(std::move(http)), base_url_(std::move(base_url)) {}

SearchPage ArxivAdapter::search(const std::string& query,
                                const TemporalConstraint& temporal, int limit) {
  std::string url = base_url_ + "/api/query?search_query=all:" + net::url_encode(query) +
                    "&start=0&max_results=" + std::to_string(limit);
  auto response = http_->get(url, {});
  if (response.status != 200) {
    throw TransportError("arXiv returned HTTP " + std::to_string(response.status));
  }

  pt::ptree tree;
  std::istringstream stream(response.body);
  try {
    pt::read_xml(stream, tree);
  } catch (const pt::xml_parser_error& e) {
    throw SourceParseError(std::string("arXiv feed is not valid XML: ") + e.what());
  }

  SearchPage page;
  page.source = SourceKind::ArXiv;
  page.query_used = query;

  auto feed = tree.get_child_optional("feed");
  if (!feed) throw SourceParseError("arXiv response missing Atom feed element");
  if (auto total = feed->get_optional<int64_t>("opensearch:totalResults")) {
    page.total_available = *total;
  }

  for (const auto& [key, entry] : *feed) {
    if (key != "entry") continue;
    PaperRecord record;
    record.canonical_id = canonical_from_entry_id(entry.get<std::string>("id", ""));
    record.title = collapse_ws(entry.get<std::string>("title", ""));
    record.abstract_text = collapse_ws(entry.get<std::string>("summary", ""));
    for (const auto& [child_key, child] : entry) {
      if (child_key == "author") {
        std::string name = child.get<std::string>("name", "");
        if (!name.empty()) record.authors.push_back(name);
      }
    }
    std::string published = entry.get<std::string>("published", "");
    if (published.size() >= 4) {
      try {
        record.year = std::stoi(published.substr(0, 4));
      } catch (const std::exception&) {
      }
    }
    // Journal reference when published; otherwise the primary category
    // (e.g. "cs.LG") stands in as the field/venue.
    std::string journal = collapse_ws(entry.get<std::string>("arxiv:journal_ref", ""));
    if (!journal.empty()) {
      record.venue = journal;
    } else if (auto term =
                   entry.get_optional<std::string>("arxiv:primary_category.<xmlattr>.term")) {
      record.venue = *term;
    }
    record.source = SourceKind::ArXiv;
    record.refchain_depth = 0;
    record.retrieved_by = query;

    if (trim(record.title).empty()) continue;
    if (!within_bounds(record.year, temporal)) continue;  // no native date filter
    record.validate();
    page.records.push_back(std::move(record));
    if (static_cast<int>(page.records.size()) >= limit) break;
  }
  return page;
}

}  // namespace spar::sources
