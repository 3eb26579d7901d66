#pragma once

#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <string>

namespace spar::llm {

/// Recorded responses keyed by request fingerprint. The on-disk form is a
/// JSON object with sorted keys so recordings diff cleanly.
class Cassette {
 public:
  Cassette() = default;

  static Cassette load(const std::filesystem::path& file);

  void save(const std::filesystem::path& file) const;

  std::optional<std::string> lookup(const std::string& fingerprint) const;

  /// Replaces any existing entry for the fingerprint. `template_name` is
  /// stored alongside the response for human readers of the file.
  void insert(const std::string& fingerprint, const std::string& template_name,
              const std::string& response);

  std::size_t size() const;

 private:
  struct Entry {
    std::string template_name;
    std::string response;
  };
  mutable std::mutex mutex_;
  std::map<std::string, Entry> entries_;
};

}  // namespace spar::llm
