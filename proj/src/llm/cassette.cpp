#include "spar/llm/cassette.hpp"

#include <fstream>

#include <json.hpp>

#include "spar/errors.hpp"

namespace spar::llm {

Cassette Cassette::load(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw FileNotFoundError("cannot open cassette: " + file.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigParseError("malformed cassette " + file.string() + ": " + e.what());
  }
  Cassette cassette;
  for (const auto& [key, value] : doc.items()) {
    Entry entry;
    entry.template_name = value.value("template", "");
    entry.response = value.value("response", "");
    cassette.entries_[key] = std::move(entry);
  }
  return cassette;
}

void Cassette::save(const std::filesystem::path& file) const {
  std::lock_guard lock(mutex_);
  nlohmann::json doc = nlohmann::json::object();
  for (const auto& [key, entry] : entries_) {
    doc[key] = {{"template", entry.template_name}, {"response", entry.response}};
  }
  if (file.has_parent_path()) std::filesystem::create_directories(file.parent_path());
  std::ofstream out(file);
  if (!out) throw Error("cannot write cassette: " + file.string());
  out << doc.dump(2) << "\n";
}

std::optional<std::string> Cassette::lookup(const std::string& fingerprint) const {
  std::lock_guard lock(mutex_);
  auto it = entries_.find(fingerprint);
  if (it == entries_.end()) return std::nullopt;
  return it->second.response;
}

void Cassette::insert(const std::string& fingerprint, const std::string& template_name,
                      const std::string& response) {
  std::lock_guard lock(mutex_);
  entries_[fingerprint] = Entry{template_name, response};
}

std::size_t Cassette::size() const {
  std::lock_guard lock(mutex_);
  return entries_.size();
}

}  // namespace spar::llm
