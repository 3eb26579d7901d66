#pragma once

#include <atomic>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>

#include "spar/llm/cassette.hpp"
#include "spar/llm/template.hpp"
#include "spar/llm/transport.hpp"

namespace spar::llm {

enum class LlmMode { Live, Record, Replay };

std::string to_string(LlmMode mode);

struct GenerationParams {
  double temperature = 0.0;
  int max_tokens = 1024;
  std::string model;
};

/// Stable identity of a templated request: template id + sorted bindings +
/// decoding parameters. Template wording fixes intentionally do not change
/// fingerprints; binding or parameter changes do.
std::string request_fingerprint(TemplateId id, const Bindings& bindings,
                                const GenerationParams& params);

/// Single entry point for all model calls. Live sends to the transport,
/// Record sends and stores the response, Replay serves recorded bytes and
/// never touches the transport.
class LlmGateway {
 public:
  struct Options {
    LlmMode mode = LlmMode::Replay;
    std::optional<std::filesystem::path> cassette_file;
    int retries = 1;           // transport retries on Transport/Timeout
    int retry_backoff_ms = 200;
  };

  LlmGateway(Options options, std::shared_ptr<ChatTransport> transport);
  ~LlmGateway();

  /// Renders the template and completes it under the configured mode.
  std::string complete(TemplateId id, const Bindings& bindings,
                       const GenerationParams& params);

  /// Lower-level form for pre-rendered prompts; the caller supplies the
  /// fingerprint under which the exchange is recorded or replayed.
  std::string complete_request(const ChatRequest& request, const std::string& fingerprint,
                               const std::string& label = "raw");

  /// Persists the cassette (Record mode). Also runs on destruction.
  void flush();

  LlmMode mode() const { return options_.mode; }
  int64_t transport_calls() const { return transport_calls_.load(); }

 private:
  Options options_;
  std::shared_ptr<ChatTransport> transport_;
  Cassette cassette_;
  std::atomic<int64_t> transport_calls_{0};
  std::atomic<bool> dirty_{false};
};

}  // namespace spar::llm
