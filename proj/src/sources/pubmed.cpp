#include "spar/sources/pubmed.hpp"

#include <sstream>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>
#include <json.hpp>

#include "spar/errors.hpp"
#include "spar/text.hpp"

namespace spar::sources {

namespace {

namespace pt = boost::property_tree;
using nlohmann::json;

std::string date_param(const Date& d) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d/%02d/%02d", d.year, d.month, d.day);
  return buf;
}

}  // namespace

PubMedAdapter::PubMedAdapter(std::shared_ptr<net::HttpClient> http,
                             std::string api_key, std::string base_url)
    : http_(std::move(http)),
      api_key_(std::move(api_key)),
      base_url_(std::move(base_url)) {}

SearchPage PubMedAdapter::search(const std::string& query,
                                 const TemporalConstraint& temporal, int limit) {
  std::string esearch = base_url_ + "/entrez/eutils/esearch.fcgi?db=pubmed&term=" +
                        net::url_encode(query) + "&retmax=" + std::to_string(limit) +
                        "&retmode=json&sort=relevance";
  if (temporal.lower) esearch += "&mindate=" + date_param(*temporal.lower);
  if (temporal.upper) esearch += "&maxdate=" + date_param(*temporal.upper);
  if (temporal.lower || temporal.upper) esearch += "&datetype=pdat";
  if (!api_key_.empty()) esearch += "&api_key=" + api_key_;

  auto id_response = http_->get(esearch, {});
  if (id_response.status != 200) {
    throw TransportError("PubMed esearch returned HTTP " +
                         std::to_string(id_response.status));
  }
  auto doc = json::parse(id_response.body, nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded() || !doc.contains("esearchresult")) {
    throw SourceParseError("PubMed esearch response is not the expected JSON");
  }

  SearchPage page;
  page.source = SourceKind::PubMed;
  page.query_used = query;
  const auto& result = doc["esearchresult"];
  if (result.contains("count")) {
    try {
      page.total_available = std::stoll(result["count"].get<std::string>());
    } catch (const std::exception&) {
    }
  }
  if (!result.contains("idlist") || !result["idlist"].is_array() ||
      result["idlist"].empty()) {
    return page;
  }

  std::string ids;
  for (const auto& id : result["idlist"]) {
    if (!ids.empty()) ids += ",";
    ids += id.get<std::string>();
  }

  std::string efetch =
      base_url_ + "/entrez/eutils/efetch.fcgi?db=pubmed&id=" + ids + "&retmode=xml";
  if (!api_key_.empty()) efetch += "&api_key=" + api_key_;

  auto fetch_response = http_->get(efetch, {});
  if (fetch_response.status != 200) {
    throw TransportError("PubMed efetch returned HTTP " +
                         std::to_string(fetch_response.status));
  }

  pt::ptree tree;
  std::istringstream stream(fetch_response.body);
  try {
    pt::read_xml(stream, tree);
  } catch (const pt::xml_parser_error& e) {
    throw SourceParseError(std::string("PubMed efetch is not valid XML: ") + e.what());
  }

  auto article_set = tree.get_child_optional("PubmedArticleSet");
  if (!article_set) throw SourceParseError("PubMed efetch missing PubmedArticleSet");

  for (const auto& [key, article_node] : *article_set) {
    if (key != "PubmedArticle") continue;
    PaperRecord record;
    std::string pmid = article_node.get<std::string>("MedlineCitation.PMID", "");

    auto article = article_node.get_child_optional("MedlineCitation.Article");
    if (!article) continue;
    record.title = article->get<std::string>("ArticleTitle", "");

    if (auto abstract = article->get_child_optional("Abstract")) {
      std::string text;
      for (const auto& [abs_key, abs_node] : *abstract) {
        if (abs_key != "AbstractText") continue;
        if (!text.empty()) text += " ";
        text += abs_node.get_value<std::string>();
      }
      record.abstract_text = text;
    }
    if (auto authors = article->get_child_optional("AuthorList")) {
      for (const auto& [author_key, author] : *authors) {
        if (author_key != "Author") continue;
        std::string fore = author.get<std::string>("ForeName", "");
        std::string last = author.get<std::string>("LastName", "");
        std::string name = fore.empty() ? last : fore + " " + last;
        if (!name.empty()) record.authors.push_back(name);
      }
    }
    record.venue = article->get<std::string>("Journal.Title", "");
    if (record.venue->empty()) record.venue = std::nullopt;
    std::string year = article->get<std::string>("Journal.JournalIssue.PubDate.Year", "");
    if (!year.empty()) {
      try {
        record.year = std::stoi(year);
      } catch (const std::exception&) {
      }
    }

    // Prefer the DOI from the article id list; fall back to the PMID.
    std::string doi;
    if (auto id_list = article_node.get_child_optional("PubmedData.ArticleIdList")) {
      for (const auto& [id_key, id_node] : *id_list) {
        if (id_key != "ArticleId") continue;
        if (id_node.get<std::string>("<xmlattr>.IdType", "") == "doi") {
          doi = id_node.get_value<std::string>();
          break;
        }
      }
    }
    record.canonical_id = !doi.empty() ? to_lower_ascii(doi) : "pmid:" + pmid;
    record.source = SourceKind::PubMed;
    record.refchain_depth = 0;
    record.retrieved_by = query;

    if (trim(record.title).empty()) continue;
    record.validate();
    page.records.push_back(std::move(record));
    if (static_cast<int>(page.records.size()) >= limit) break;
  }
  return page;
}

}  // namespace spar::sources
