#include "spar/llm/gateway.hpp"

#include <chrono>
#include <cstdio>
#include <thread>

#include "spar/errors.hpp"

namespace spar::llm {

namespace {

// FNV-1a, 64-bit. Stable across platforms, which is all a cassette key needs.
uint64_t fnv1a(const std::string& data) {
  uint64_t hash = 1469598103934665603ull;
  for (unsigned char c : data) {
    hash ^= c;
    hash *= 1099511628211ull;
  }
  return hash;
}

std::string hex64(uint64_t value) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(value));
  return buf;
}

}  // namespace

std::string to_string(LlmMode mode) {
  switch (mode) {
    case LlmMode::Live: return "live";
    case LlmMode::Record: return "record";
    case LlmMode::Replay: return "replay";
  }
  return "replay";
}

std::string request_fingerprint(TemplateId id, const Bindings& bindings,
                                const GenerationParams& params) {
  std::string material = to_string(id);
  material.push_back('\x1e');
  for (const auto& [key, value] : bindings) {  // std::map iterates sorted
    material += key;
    material.push_back('\x1f');
    material += value;
    material.push_back('\x1e');
  }
  char decoding[96];
  std::snprintf(decoding, sizeof(decoding), "t=%.6g;mt=%d;m=", params.temperature,
                params.max_tokens);
  material += decoding;
  material += params.model;
  return to_string(id) + "-" + hex64(fnv1a(material));
}

LlmGateway::LlmGateway(Options options, std::shared_ptr<ChatTransport> transport)
    : options_(std::move(options)), transport_(std::move(transport)) {
  if (options_.cassette_file && std::filesystem::exists(*options_.cassette_file)) {
    cassette_ = Cassette::load(*options_.cassette_file);
  } else if (options_.mode == LlmMode::Replay && options_.cassette_file) {
    throw FileNotFoundError("replay cassette missing: " + options_.cassette_file->string());
  }
}

LlmGateway::~LlmGateway() {
  try {
    flush();
  } catch (...) {
    // Destructor must not throw; an unsaved cassette surfaces as a replay miss.
  }
}

std::string LlmGateway::complete(TemplateId id, const Bindings& bindings,
                                 const GenerationParams& params) {
  ChatRequest request;
  request.prompt = render(id, bindings);
  request.temperature = params.temperature;
  request.max_tokens = params.max_tokens;
  request.model = params.model;
  return complete_request(request, request_fingerprint(id, bindings, params),
                          to_string(id));
}

std::string LlmGateway::complete_request(const ChatRequest& request,
                                         const std::string& fingerprint,
                                         const std::string& label) {
  request.validate();

  if (options_.mode == LlmMode::Replay) {
    auto recorded = cassette_.lookup(fingerprint);
    if (!recorded) throw CassetteMissError("no recording for " + fingerprint);
    return *recorded;
  }

  std::string response;
  int attempts_left = options_.retries + 1;
  for (;;) {
    try {
      ++transport_calls_;
      response = transport_->complete(request);
      break;
    } catch (const TransportError&) {
      if (--attempts_left <= 0) throw;
      std::this_thread::sleep_for(std::chrono::milliseconds(options_.retry_backoff_ms));
    }
  }

  if (options_.mode == LlmMode::Record) {
    cassette_.insert(fingerprint, label, response);
    dirty_ = true;
  }
  return response;
}

void LlmGateway::flush() {
  if (options_.mode == LlmMode::Record && options_.cassette_file && dirty_.exchange(false)) {
    cassette_.save(*options_.cassette_file);
  }
}

}  // namespace spar::llm
