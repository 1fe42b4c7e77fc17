#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "groc/llm.hpp"
#include "groc/metrics.hpp"

namespace groc {

struct Url {
  std::string scheme;  // "http" or "https"
  std::string host;
  int port = 0;
  std::string path;  // starts with '/'
};

/// Throws Error "invalid-url".
Url parse_url(std::string_view url);

struct HttpChatConfig {
  std::string endpoint = "http://127.0.0.1:8089/v1/chat/completions";
  std::string model = "llama-2-70b-chat";
  double temperature = 0.0;
  std::optional<std::int64_t> seed;
  std::string api_key_env = "GROC_API_KEY";
  std::chrono::seconds timeout{120};
};

/// OpenAI-style chat completions over HTTP(S). Sends a bearer token when the
/// environment variable named by `api_key_env` is set. Each call opens its own
/// connection, so one instance can be shared across worker threads.
class HttpChatClient final : public ChatClient {
 public:
  explicit HttpChatClient(HttpChatConfig config);
  std::string complete(std::span<const ChatMessage> messages) override;

 private:
  HttpChatConfig config_;
  Url url_;
};

/// POST {"texts": [...]} -> {"vectors": [[...]]}.
Embedder http_embedder(const std::string& endpoint, std::chrono::seconds timeout = std::chrono::seconds{60});

struct FixtureResponse {
  int status = 200;
  std::string body;  // assistant content when status is 200
};

/// Scripted model answers, one JSON object per line:
///   {"key": "<fnv1a of final user content>", "responses": [...]}
///   {"user": "<exact final user content>", "responses": [...]}
///   {"contains": "<substring of final user content>", "responses": [...]}
///   {"default": true, "responses": [...]}
/// A response is a string (the assistant content) or {"status": n, "body": s}.
/// Lookup order is key, user, contains (file order), default. Each entry
/// hands out its responses in sequence and then repeats the last one.
class FixtureStore {
 public:
  static std::shared_ptr<FixtureStore> parse(std::string_view jsonl);
  static std::shared_ptr<FixtureStore> load_file(const std::string& path);

  /// nullopt when nothing matches.
  std::optional<FixtureResponse> next(std::string_view final_user_content);

  std::size_t size() const { return entries_.size(); }

 private:
  struct Entry {
    std::string kind;
    std::string pattern;
    std::vector<FixtureResponse> responses;
    std::size_t cursor = 0;
  };

  std::vector<Entry> entries_;
  std::mutex mu_;
};

/// Hash used by fixture "key" entries.
std::string request_key(std::string_view final_user_content);

/// In-process client backed by a FixtureStore. A missing fixture or a
/// non-200 scripted status surfaces as TransportError.
class ReplayChatClient final : public ChatClient {
 public:
  explicit ReplayChatClient(std::shared_ptr<FixtureStore> store) : store_(std::move(store)) {}
  std::string complete(std::span<const ChatMessage> messages) override;
  std::size_t calls() const { return calls_.load(); }

 private:
  std::shared_ptr<FixtureStore> store_;
  std::atomic<std::size_t> calls_{0};
};

/// Deterministic bag-of-stems embedding used by the mock embeddings route.
std::vector<double> mock_embedding(std::string_view text, std::size_t dims = 64);

/// Local HTTP server speaking the chat wire protocol from a FixtureStore, plus
/// POST /v1/embeddings backed by mock_embedding.
class MockChatServer {
 public:
  explicit MockChatServer(std::shared_ptr<FixtureStore> store);
  ~MockChatServer();
  MockChatServer(const MockChatServer&) = delete;
  MockChatServer& operator=(const MockChatServer&) = delete;

  /// Binds (port 0 picks a free port) and serves on a background thread.
  int start(const std::string& host = "127.0.0.1", int port = 0);
  /// Blocks until the server stops.
  void wait();
  void stop();

  int port() const { return port_; }
  std::size_t requests() const { return requests_.load(); }

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  std::shared_ptr<FixtureStore> store_;
  std::thread thread_;
  int port_ = 0;
  std::atomic<std::size_t> requests_{0};
};

}  // namespace groc
