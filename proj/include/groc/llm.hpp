#pragma once

#include <chrono>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "groc/core.hpp"
#include "groc/ingest.hpp"

namespace groc {

enum class Role { System, User, Assistant };

std::string_view to_string(Role role);
std::optional<Role> role_from_string(std::string_view name);

struct ChatMessage {
  Role role = Role::User;
  std::string content;

  bool operator==(const ChatMessage&) const = default;
};

/// Network or protocol failure talking to a model endpoint.
class TransportError : public Error {
 public:
  explicit TransportError(const std::string& message) : Error("transport", message) {}
};

/// A model answer that does not have the expected shape. `code()` is one of
/// no-dictionary, no-caption-key, no-category-key, malformed-caption,
/// no-phrases, unknown-category.
class ResponseRejected : public Error {
 public:
  ResponseRejected(std::string code, const std::string& message) : Error(std::move(code), message) {}
};

/// Chat-completion endpoint. Implementations must be safe to call from
/// several threads at once.
class ChatClient {
 public:
  virtual ~ChatClient() = default;
  /// Returns the assistant content of the first choice; throws TransportError.
  virtual std::string complete(std::span<const ChatMessage> messages) = 0;
};

struct AggregatedCaption {
  TaggedCaption caption;
  std::string raw_response;
};

/// A frame-level phrase and the video-level phrase it was classified into;
/// `assigned` is empty for the None class.
struct PhraseAssignment {
  int frame_index = 0;
  std::string frame_phrase;
  std::optional<std::string> assigned;

  bool operator==(const PhraseAssignment&) const = default;
};

struct RetryPolicy {
  int retries = 2;
  std::chrono::milliseconds backoff{500};
};

std::vector<ChatMessage> build_stage2_prompt(std::string_view svo_block);
AggregatedCaption parse_stage2_response(std::string_view text);

/// Renders categories as "[`a woman', `her hair']".
std::string render_categories(std::span<const std::string> categories);
std::vector<ChatMessage> build_stage3_prompt(std::string_view frame_phrase,
                                             std::span<const std::string> categories);
/// Returns the chosen category, or nullopt for the None class.
std::optional<std::string> parse_stage3_response(std::string_view text,
                                                 std::span<const std::string> categories);

struct AggregationOutcome {
  std::optional<AggregatedCaption> caption;
  std::optional<Reason> rejection;
  int attempts = 0;
};

/// Stage 2 for one video: one request, re-prompted on parse failure and
/// retried with exponential backoff on transport failure, up to
/// `policy.retries` extra attempts.
AggregationOutcome aggregate_video(std::span<const SvoFrame> frames, ChatClient& client,
                                   const RetryPolicy& policy = {});

struct FramePhrase {
  int frame_index = 0;
  std::string phrase;
  BoundingBox box;
};

struct TrackingOutcome {
  std::vector<PhraseAssignment> assignments;  // parallel to the input objects
  std::vector<Reason> warnings;
  int model_calls = 0;
};

/// Stage 3 for one video. Each distinct frame phrase is classified once;
/// phrases equal to a video phrase are assigned without a model call. A
/// phrase whose classification is rejected falls into the None class.
TrackingOutcome track_by_language(std::span<const FramePhrase> frame_objects,
                                  std::span<const std::string> video_phrases, ChatClient& client,
                                  const RetryPolicy& policy = {});

}  // namespace groc
