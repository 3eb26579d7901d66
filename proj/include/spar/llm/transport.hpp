#pragma once

#include <memory>
#include <string>

namespace spar::llm {

struct ChatRequest {
  std::string prompt;
  double temperature = 0.0;
  int max_tokens = 1024;
  std::string model;

  void validate() const;  // prompt nonempty, temperature >= 0, max_tokens > 0
};

/// One round trip against a chat-completion endpoint. Implementations must
/// be safe to call from multiple threads.
class ChatTransport {
 public:
  virtual ~ChatTransport() = default;
  virtual std::string complete(const ChatRequest& request) = 0;
};

/// Speaks the common chat-completion wire format: POST a JSON document with
/// model / messages / temperature / max_tokens, read choices[0].message.content.
class HttpChatTransport : public ChatTransport {
 public:
  struct Options {
    std::string endpoint;  // e.g. "https://host/v1/chat/completions"
    std::string api_key;   // sent as a bearer token when nonempty
    int timeout_seconds = 60;
  };

  explicit HttpChatTransport(Options options);
  std::string complete(const ChatRequest& request) override;

 private:
  Options options_;
};

}  // namespace spar::llm
