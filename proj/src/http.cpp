#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>

#include "groc/http.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "groc/canonical_json.hpp"
#include "groc/ingest.hpp"

namespace groc {

using nlohmann::json;

Url parse_url(std::string_view url) {
  Url out;
  const auto sep = url.find("://");
  if (sep == std::string_view::npos) throw Error("invalid-url", "missing scheme in '" + std::string(url) + "'");
  out.scheme = std::string(url.substr(0, sep));
  if (out.scheme != "http" && out.scheme != "https") {
    throw Error("invalid-url", "unsupported scheme '" + out.scheme + "'");
  }
  auto rest = url.substr(sep + 3);
  const auto slash = rest.find('/');
  auto authority = rest.substr(0, slash);
  out.path = slash == std::string_view::npos ? "/" : std::string(rest.substr(slash));
  out.port = out.scheme == "https" ? 443 : 80;
  const auto colon = authority.rfind(':');
  if (colon != std::string_view::npos && authority.find(']') == std::string_view::npos) {
    const std::string port(authority.substr(colon + 1));
    char* end = nullptr;
    const long p = std::strtol(port.c_str(), &end, 10);
    if (port.empty() || *end != '\0' || p <= 0 || p > 65535) {
      throw Error("invalid-url", "bad port in '" + std::string(url) + "'");
    }
    out.port = static_cast<int>(p);
    authority = authority.substr(0, colon);
  }
  if (authority.empty()) throw Error("invalid-url", "missing host in '" + std::string(url) + "'");
  out.host = std::string(authority);
  return out;
}

namespace {

std::unique_ptr<httplib::Client> make_client(const Url& url, std::chrono::seconds timeout) {
  auto cli = std::make_unique<httplib::Client>(url.scheme + "://" + url.host + ":" + std::to_string(url.port));
  cli->set_connection_timeout(timeout);
  cli->set_read_timeout(timeout);
  cli->set_write_timeout(timeout);
  return cli;
}

json post_json(const Url& url, std::chrono::seconds timeout, const json& body, const httplib::Headers& headers) {
  auto cli = make_client(url, timeout);
  auto res = cli->Post(url.path, headers, body.dump(), "application/json");
  if (!res) {
    throw TransportError("POST " + url.host + url.path + " failed: " + httplib::to_string(res.error()));
  }
  if (res->status != 200) {
    throw TransportError("POST " + url.host + url.path + " returned HTTP " + std::to_string(res->status));
  }
  try {
    return json::parse(res->body);
  } catch (const json::parse_error& e) {
    throw TransportError(std::string("response is not JSON: ") + e.what());
  }
}

std::string final_user_content(std::span<const ChatMessage> messages) {
  for (auto it = messages.rbegin(); it != messages.rend(); ++it) {
    if (it->role == Role::User) return it->content;
  }
  return {};
}

}  // namespace

HttpChatClient::HttpChatClient(HttpChatConfig config) : config_(std::move(config)), url_(parse_url(config_.endpoint)) {}

std::string HttpChatClient::complete(std::span<const ChatMessage> messages) {
  json msgs = json::array();
  for (const auto& m : messages) msgs.push_back({{"role", to_string(m.role)}, {"content", m.content}});
  json body = {{"model", config_.model}, {"messages", msgs}, {"temperature", config_.temperature}};
  if (config_.seed) body["seed"] = *config_.seed;

  httplib::Headers headers;
  if (const char* key = std::getenv(config_.api_key_env.c_str()); key != nullptr && *key != '\0') {
    headers.emplace("Authorization", std::string("Bearer ") + key);
  }
  const auto res = post_json(url_, config_.timeout, body, headers);
  try {
    return res.at("choices").at(0).at("message").at("content").get<std::string>();
  } catch (const json::exception&) {
    throw TransportError("response has no choices[0].message.content");
  }
}

Embedder http_embedder(const std::string& endpoint, std::chrono::seconds timeout) {
  const Url url = parse_url(endpoint);
  return [url, timeout](const std::vector<std::string>& texts) {
    const auto res = post_json(url, timeout, json{{"texts", texts}}, {});
    try {
      auto vectors = res.at("vectors").get<std::vector<std::vector<double>>>();
      if (vectors.size() != texts.size()) throw TransportError("embedding count mismatch");
      return vectors;
    } catch (const json::exception&) {
      throw TransportError("response has no vectors array");
    }
  };
}

std::string request_key(std::string_view final_user_content) { return fnv1a_hex(final_user_content); }

std::shared_ptr<FixtureStore> FixtureStore::parse(std::string_view jsonl) {
  auto store = std::make_shared<FixtureStore>();
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= jsonl.size()) {
    auto end = jsonl.find('\n', pos);
    if (end == std::string_view::npos) end = jsonl.size();
    const auto line = jsonl.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw ParseError(line_no, "", e.what());
    }
    if (!j.is_object()) throw ParseError(line_no, "", "fixture entry must be an object");
    Entry e;
    for (const char* kind : {"key", "user", "contains"}) {
      if (j.contains(kind)) {
        if (!j[kind].is_string()) throw ParseError(line_no, std::string("/") + kind, "must be a string");
        e.kind = kind;
        e.pattern = j[kind].get<std::string>();
        break;
      }
    }
    if (e.kind.empty()) {
      if (j.value("default", false) != true) throw ParseError(line_no, "", "entry needs key, user, contains or default");
      e.kind = "default";
    }
    if (!j.contains("responses") || !j["responses"].is_array() || j["responses"].empty()) {
      throw ParseError(line_no, "/responses", "must be a non-empty array");
    }
    for (const auto& r : j["responses"]) {
      if (r.is_string()) {
        e.responses.push_back({200, r.get<std::string>()});
      } else if (r.is_object() && r.contains("status") && r["status"].is_number_integer()) {
        e.responses.push_back({r["status"].get<int>(), r.value("body", std::string())});
      } else {
        throw ParseError(line_no, "/responses", "response must be a string or {status, body}");
      }
    }
    store->entries_.push_back(std::move(e));
  }
  return store;
}

std::shared_ptr<FixtureStore> FixtureStore::load_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("io", "cannot open fixture file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

std::optional<FixtureResponse> FixtureStore::next(std::string_view content) {
  const std::string key = request_key(content);
  Entry* hit = nullptr;
  auto find = [&](auto&& pred) {
    for (auto& e : entries_) {
      if (pred(e)) return &e;
    }
    return static_cast<Entry*>(nullptr);
  };
  hit = find([&](const Entry& e) { return e.kind == "key" && e.pattern == key; });
  if (!hit) hit = find([&](const Entry& e) { return e.kind == "user" && e.pattern == content; });
  if (!hit) hit = find([&](const Entry& e) { return e.kind == "contains" && content.find(e.pattern) != std::string_view::npos; });
  if (!hit) hit = find([](const Entry& e) { return e.kind == "default"; });
  if (!hit) return std::nullopt;
  std::lock_guard lock(mu_);
  const auto& r = hit->responses[std::min(hit->cursor, hit->responses.size() - 1)];
  ++hit->cursor;
  return r;
}

std::string ReplayChatClient::complete(std::span<const ChatMessage> messages) {
  ++calls_;
  const auto content = final_user_content(messages);
  const auto r = store_->next(content);
  if (!r) throw TransportError("no fixture for request " + request_key(content));
  if (r->status != 200) throw TransportError("scripted HTTP " + std::to_string(r->status));
  return r->body;
}

std::vector<double> mock_embedding(std::string_view text, std::size_t dims) {
  std::vector<double> v(dims, 0.0);
  for (const auto& tok : tokenize(text)) {
    if (is_punctuation(tok)) continue;
    const auto h = std::stoull(fnv1a_hex(porter_stem(tok)), nullptr, 16);
    v[h % dims] += 1.0;
  }
  return v;
}

struct MockChatServer::Impl {
  httplib::Server server;
};

MockChatServer::MockChatServer(std::shared_ptr<FixtureStore> store)
    : impl_(std::make_unique<Impl>()), store_(std::move(store)) {
  auto& srv = impl_->server;
  srv.Post("/v1/chat/completions", [this](const httplib::Request& req, httplib::Response& res) {
    ++requests_;
    json body;
    try {
      body = json::parse(req.body);
    } catch (const json::parse_error&) {
      res.status = 400;
      res.set_content(R"({"error":"invalid json"})", "application/json");
      return;
    }
    std::vector<ChatMessage> messages;
    try {
      for (const auto& m : body.at("messages")) {
        const auto role = role_from_string(m.at("role").get<std::string>());
        if (!role) throw Error("bad-role", "unknown role");
        messages.push_back({*role, m.at("content").get<std::string>()});
      }
    } catch (const std::exception&) {
      res.status = 400;
      res.set_content(R"({"error":"invalid messages"})", "application/json");
      return;
    }
    const auto content = final_user_content(messages);
    const auto r = store_->next(content);
    if (!r) {
      res.status = 404;
      res.set_content(json{{"error", "no fixture"}, {"key", request_key(content)}}.dump(), "application/json");
      return;
    }
    if (r->status != 200) {
      res.status = r->status;
      res.set_content(json{{"error", r->body}}.dump(), "application/json");
      return;
    }
    const json out = {
        {"id", "mock-" + request_key(content)},
        {"object", "chat.completion"},
        {"model", body.value("model", std::string("mock"))},
        {"choices", json::array({{{"index", 0},
                                  {"message", {{"role", "assistant"}, {"content", r->body}}},
                                  {"finish_reason", "stop"}}})},
    };
    res.set_content(out.dump(), "application/json");
  });
  srv.Post("/v1/embeddings", [this](const httplib::Request& req, httplib::Response& res) {
    ++requests_;
    try {
      const auto body = json::parse(req.body);
      json vectors = json::array();
      for (const auto& t : body.at("texts")) vectors.push_back(mock_embedding(t.get<std::string>()));
      res.set_content(json{{"vectors", vectors}}.dump(), "application/json");
    } catch (const std::exception&) {
      res.status = 400;
      res.set_content(R"({"error":"expected {texts: [string]}"})", "application/json");
    }
  });
}

MockChatServer::~MockChatServer() { stop(); }

int MockChatServer::start(const std::string& host, int port) {
  auto& srv = impl_->server;
  if (port == 0) {
    port_ = srv.bind_to_any_port(host);
  } else {
    port_ = srv.bind_to_port(host, port) ? port : -1;
  }
  if (port_ <= 0) throw Error("bind", "cannot bind " + host + ":" + std::to_string(port));
  thread_ = std::thread([&srv] { srv.listen_after_bind(); });
  srv.wait_until_ready();
  return port_;
}

void MockChatServer::wait() {
  if (thread_.joinable()) thread_.join();
}

void MockChatServer::stop() {
  if (impl_) impl_->server.stop();
  if (thread_.joinable()) thread_.join();
}

}  // namespace groc
