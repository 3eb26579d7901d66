#include "support/fake_web.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

#include "spar/errors.hpp"
#include "spar/text.hpp"

namespace spar::testing {

namespace {

using nlohmann::json;
using spar::net::HttpResponse;

std::string xml_escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

std::map<std::string, std::vector<int>> invert_abstract(const std::string& text) {
  std::map<std::string, std::vector<int>> inverted;
  std::istringstream stream(text);
  std::string word;
  int position = 0;
  while (stream >> word) {
    inverted[word].push_back(position++);
  }
  return inverted;
}

int year_of(const std::string& date) {
  if (date.size() < 4) return 0;
  try {
    return std::stoi(date.substr(0, 4));
  } catch (const std::exception&) {
    return 0;
  }
}

json openalex_work(const SyntheticCorpus& corpus, const SyntheticPaper& paper) {
  json work;
  work["id"] = corpus.openalex_id(paper);
  if (!paper.doi.empty()) work["doi"] = "https://doi.org/" + paper.doi;
  work["display_name"] = paper.openalex_title.empty() ? paper.title : paper.openalex_title;
  work["publication_year"] = paper.year;
  work["cited_by_count"] = paper.citations;
  work["authorships"] = json::array();
  for (const auto& author : paper.authors) {
    work["authorships"].push_back({{"author", {{"display_name", author}}}});
  }
  work["primary_location"] = {{"source", {{"display_name", paper.venue}}}};
  if (paper.openalex_has_abstract && !paper.abstract_text.empty()) {
    work["abstract_inverted_index"] = invert_abstract(paper.abstract_text);
  }
  json refs = json::array();
  for (const auto& ref_key : paper.references) {
    if (const auto* ref = corpus.by_key(ref_key)) {
      refs.push_back(corpus.openalex_id(*ref));
    }
  }
  work["referenced_works"] = refs;
  return work;
}

json s2_paper(const SyntheticCorpus& corpus, const SyntheticPaper& paper) {
  json doc;
  doc["paperId"] = corpus.s2_id(paper);
  doc["externalIds"] = json::object();
  if (!paper.doi.empty()) doc["externalIds"]["DOI"] = paper.doi;
  doc["title"] = paper.title;
  doc["abstract"] = paper.abstract_text;
  doc["year"] = paper.year;
  doc["venue"] = paper.venue;
  doc["citationCount"] = paper.citations;
  doc["authors"] = json::array();
  for (const auto& author : paper.authors) {
    doc["authors"].push_back({{"name", author}});
  }
  return doc;
}

HttpResponse json_response(const json& doc) {
  HttpResponse response;
  response.status = 200;
  response.body = doc.dump();
  return response;
}

HttpResponse not_found() {
  HttpResponse response;
  response.status = 404;
  response.body = "{}";
  return response;
}

}  // namespace

FakeAcademicWeb::FakeAcademicWeb(std::shared_ptr<const SyntheticCorpus> corpus)
    : corpus_(std::move(corpus)) {}

HttpResponse FakeAcademicWeb::get(const std::string& url,
                                  const std::map<std::string, std::string>&) {
  ++calls_;
  const SyntheticCorpus& corpus = *corpus_;

  // ---- OpenAlex ------------------------------------------------------------
  if (url.find("api.openalex.org/works?search=") != std::string::npos) {
    std::string query = url_decode(query_param(url, "search"));
    int limit = std::max(1, std::atoi(query_param(url, "per-page").c_str()));
    std::string filter = url_decode(query_param(url, "filter"));
    int from_year = 0, to_year = 9999;
    if (auto pos = filter.find("from_publication_date:"); pos != std::string::npos) {
      from_year = year_of(filter.substr(pos + 22, 10));
    }
    if (auto pos = filter.find("to_publication_date:"); pos != std::string::npos) {
      to_year = year_of(filter.substr(pos + 20, 10));
    }
    json results = json::array();
    for (const auto* paper : corpus.match(query)) {
      if (!paper->in_openalex) continue;
      if (paper->year < from_year || paper->year > to_year) continue;
      results.push_back(openalex_work(corpus, *paper));
      if (static_cast<int>(results.size()) >= limit) break;
    }
    return json_response({{"meta", {{"count", results.size()}}}, {"results", results}});
  }
  if (url.find("api.openalex.org/works?filter=openalex:") != std::string::npos) {
    std::string ids = url_decode(query_param(url, "filter"));
    ids = ids.substr(std::string("openalex:").size());
    json results = json::array();
    std::size_t pos = 0;
    while (pos <= ids.size()) {
      std::size_t bar = ids.find('|', pos);
      if (bar == std::string::npos) bar = ids.size();
      std::string wid = ids.substr(pos, bar - pos);
      pos = bar + 1;
      for (const auto& paper : corpus.papers) {
        if (corpus.openalex_id(paper).ends_with("/" + wid) && paper.in_openalex) {
          results.push_back(openalex_work(corpus, paper));
        }
      }
    }
    return json_response({{"meta", {{"count", results.size()}}}, {"results", results}});
  }
  if (url.find("api.openalex.org/works/") != std::string::npos) {
    std::string ref = url.substr(url.find("/works/") + 7);  // may hold a DOI with '/'
    for (const auto& paper : corpus.papers) {
      bool hit = false;
      if (ref.rfind("doi:", 0) == 0 && !paper.doi.empty()) {
        hit = to_lower_ascii(paper.doi) == to_lower_ascii(ref.substr(4));
      } else {
        hit = corpus.openalex_id(paper).ends_with("/" + ref);
      }
      if (hit && paper.in_openalex) return json_response(openalex_work(corpus, paper));
    }
    return not_found();
  }

  // ---- Semantic Scholar ------------------------------------------------------
  if (url.find("api.semanticscholar.org/graph/v1/paper/search") != std::string::npos) {
    std::string query = url_decode(query_param(url, "query"));
    int limit = std::max(1, std::atoi(query_param(url, "limit").c_str()));
    int from_year = 0, to_year = 9999;
    std::string year_range = query_param(url, "year");
    if (!year_range.empty()) {
      auto dash = year_range.find('-');
      if (dash == std::string::npos) {
        from_year = to_year = std::atoi(year_range.c_str());
      } else {
        if (dash > 0) from_year = std::atoi(year_range.substr(0, dash).c_str());
        if (dash + 1 < year_range.size()) {
          to_year = std::atoi(year_range.substr(dash + 1).c_str());
        }
      }
    }
    json data = json::array();
    for (const auto* paper : corpus.match(query)) {
      if (!paper->in_s2) continue;
      if (paper->year < from_year || paper->year > to_year) continue;
      data.push_back(s2_paper(corpus, *paper));
      if (static_cast<int>(data.size()) >= limit) break;
    }
    return json_response({{"total", data.size()}, {"offset", 0}, {"data", data}});
  }
  if (url.find("api.semanticscholar.org/graph/v1/paper/") != std::string::npos &&
      url.find("/references") != std::string::npos) {
    auto base = url.find("/paper/") + 7;
    std::string id = url_decode(url.substr(base, url.find("/references") - base));
    const SyntheticPaper* subject = nullptr;
    for (const auto& paper : corpus.papers) {
      if (id.rfind("DOI:", 0) == 0 && !paper.doi.empty() &&
          to_lower_ascii(paper.doi) == to_lower_ascii(id.substr(4))) {
        subject = &paper;
      } else if (id == corpus.s2_id(paper)) {
        subject = &paper;
      }
      if (subject) break;
    }
    if (!subject || !subject->in_s2) return not_found();
    json data = json::array();
    for (const auto& ref_key : subject->references) {
      if (const auto* ref = corpus.by_key(ref_key)) {
        data.push_back({{"citedPaper", s2_paper(corpus, *ref)}});
      }
    }
    return json_response({{"offset", 0}, {"data", data}});
  }

  // ---- arXiv ------------------------------------------------------------------
  if (url.find("export.arxiv.org/api/query") != std::string::npos) {
    std::string raw = url_decode(query_param(url, "search_query"));
    if (raw.rfind("all:", 0) == 0) raw = raw.substr(4);
    int limit = std::max(1, std::atoi(query_param(url, "max_results").c_str()));
    std::string feed =
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        "<feed xmlns=\"http://www.w3.org/2005/Atom\" "
        "xmlns:opensearch=\"http://a9.com/-/spec/opensearch/1.1/\" "
        "xmlns:arxiv=\"http://arxiv.org/schemas/atom\">\n";
    int emitted = 0;
    auto matches = corpus.match(raw);
    feed += "<opensearch:totalResults>" + std::to_string(matches.size()) +
            "</opensearch:totalResults>\n";
    for (const auto* paper : matches) {
      if (!paper->in_arxiv || emitted >= limit) continue;
      ++emitted;
      feed += "<entry>\n";
      feed += "<id>http://arxiv.org/abs/" + corpus.arxiv_id(*paper) + "v1</id>\n";
      feed += "<title>" + xml_escape(paper->title) + "</title>\n";
      feed += "<summary>" + xml_escape(paper->abstract_text) + "</summary>\n";
      feed += "<published>" + std::to_string(paper->year) + "-01-15T00:00:00Z</published>\n";
      for (const auto& author : paper->authors) {
        feed += "<author><name>" + xml_escape(author) + "</name></author>\n";
      }
      feed += "<arxiv:primary_category term=\"" + xml_escape(paper->venue) + "\"/>\n";
      feed += "</entry>\n";
    }
    feed += "</feed>\n";
    HttpResponse response;
    response.status = 200;
    response.body = feed;
    return response;
  }

  // ---- PubMed -----------------------------------------------------------------
  if (url.find("eutils.ncbi.nlm.nih.gov/entrez/eutils/esearch.fcgi") != std::string::npos) {
    std::string term = url_decode(query_param(url, "term"));
    int limit = std::max(1, std::atoi(query_param(url, "retmax").c_str()));
    int from_year = year_of(url_decode(query_param(url, "mindate")));
    std::string maxdate = url_decode(query_param(url, "maxdate"));
    int to_year = maxdate.empty() ? 9999 : year_of(maxdate);
    json idlist = json::array();
    for (const auto* paper : corpus.match(term)) {
      if (!paper->in_pubmed) continue;
      if (paper->year < from_year || paper->year > to_year) continue;
      idlist.push_back(corpus.pmid(*paper));
      if (static_cast<int>(idlist.size()) >= limit) break;
    }
    return json_response(
        {{"esearchresult",
          {{"count", std::to_string(idlist.size())}, {"idlist", idlist}}}});
  }
  if (url.find("eutils.ncbi.nlm.nih.gov/entrez/eutils/efetch.fcgi") != std::string::npos) {
    std::string ids = url_decode(query_param(url, "id"));
    std::string xml = "<?xml version=\"1.0\"?>\n<PubmedArticleSet>\n";
    std::size_t pos = 0;
    while (pos <= ids.size()) {
      std::size_t comma = ids.find(',', pos);
      if (comma == std::string::npos) comma = ids.size();
      std::string pmid = ids.substr(pos, comma - pos);
      pos = comma + 1;
      for (const auto& paper : corpus.papers) {
        if (corpus.pmid(paper) != pmid || !paper.in_pubmed) continue;
        xml += "<PubmedArticle><MedlineCitation><PMID>" + pmid + "</PMID>\n";
        xml += "<Article>\n<ArticleTitle>" + xml_escape(paper.title) +
               "</ArticleTitle>\n";
        xml += "<Abstract><AbstractText>" + xml_escape(paper.abstract_text) +
               "</AbstractText></Abstract>\n";
        xml += "<AuthorList>";
        for (const auto& author : paper.authors) {
          auto space = author.find(' ');
          std::string fore = space == std::string::npos ? "" : author.substr(0, space);
          std::string last = space == std::string::npos ? author : author.substr(space + 1);
          xml += "<Author><LastName>" + xml_escape(last) + "</LastName><ForeName>" +
                 xml_escape(fore) + "</ForeName></Author>";
        }
        xml += "</AuthorList>\n";
        xml += "<Journal><Title>" + xml_escape(paper.venue) +
               "</Title><JournalIssue><PubDate><Year>" + std::to_string(paper.year) +
               "</Year></PubDate></JournalIssue></Journal>\n";
        xml += "</Article></MedlineCitation>\n<PubmedData><ArticleIdList>";
        xml += "<ArticleId IdType=\"pubmed\">" + pmid + "</ArticleId>";
        if (!paper.doi.empty()) {
          xml += "<ArticleId IdType=\"doi\">" + xml_escape(paper.doi) + "</ArticleId>";
        }
        xml += "</ArticleIdList></PubmedData></PubmedArticle>\n";
      }
    }
    xml += "</PubmedArticleSet>\n";
    HttpResponse response;
    response.status = 200;
    response.body = xml;
    return response;
  }

  return not_found();
}

void StubHttpClient::add(const std::string& url, std::string body, int status) {
  HttpResponse response;
  response.status = status;
  response.body = std::move(body);
  responses_[url] = std::move(response);
}

HttpResponse StubHttpClient::get(const std::string& url,
                                 const std::map<std::string, std::string>&) {
  requested.push_back(url);
  auto it = responses_.find(url);
  if (it == responses_.end()) {
    throw spar::TransportError("StubHttpClient has no response for " + url);
  }
  return it->second;
}

HttpResponse FailingHttpClient::get(const std::string& url,
                                    const std::map<std::string, std::string>&) {
  throw spar::TransportError("network disabled in this test: " + url);
}

std::string url_decode(const std::string& text) {
  std::string out;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '%' && i + 2 < text.size()) {
      out.push_back(static_cast<char>(std::stoi(text.substr(i + 1, 2), nullptr, 16)));
      i += 2;
    } else if (text[i] == '+') {
      out.push_back(' ');
    } else {
      out.push_back(text[i]);
    }
  }
  return out;
}

std::string query_param(const std::string& url, const std::string& name) {
  auto question = url.find('?');
  if (question == std::string::npos) return "";
  std::string params = url.substr(question + 1);
  std::size_t pos = 0;
  while (pos <= params.size()) {
    std::size_t amp = params.find('&', pos);
    if (amp == std::string::npos) amp = params.size();
    std::string pair = params.substr(pos, amp - pos);
    pos = amp + 1;
    auto equals = pair.find('=');
    if (equals == std::string::npos) continue;
    if (pair.substr(0, equals) == name) return pair.substr(equals + 1);
  }
  return "";
}

}  // namespace spar::testing
