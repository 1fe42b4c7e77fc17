#include "groc/llm.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <thread>

#include "groc/svo.hpp"

namespace groc {
namespace {

constexpr std::string_view kStage2System =
    "Generate a dynamic, video-level description based on frame-level inputs. The inputs include "
    "actions performed in individual frames in the form of Subject-Verb-Object (SVO) triplets along "
    "with prepositions and prepositional objects. The SVO triplets describe how actions are performed "
    "and how objects interact. Your output should be a concise narrative in 1 sentence, focusing on "
    "the most salient actions depicted across the frames. Enclose the exact text of relevant objects "
    "within <p></p> tags.\n"
    "\n"
    "Input format:\n"
    "[[`subject': `subject_text', `verb': `action_text', `object': `object_text',\n"
    "`prepositions_objects': [('preposition', `prepositional_object')],],]\n"
    "\n"
    "Output format:\n"
    "A Python dictionary with a key `CAPTION', and as a value a dynamic description of the video "
    "content.\n"
    "\n"
    "Infer motion from static descriptions. E.g. `image shows a person holding a spoon and a bowl' "
    "implies `person is stirring food in a bowl'. Enclose the human and the most frequent object "
    "that is used to perform the action within <p></p> tags. If there is no human, enclose the two "
    "most frequent objects within <p></p> tags.";

constexpr std::string_view kStage2User1 =
    "SVO:\n"
    "[[`image', `shows', `cup'], [`bowl', `is']],\n"
    "[[`person', `holding', `spoon'], [`spoon', `is', `bowl'],\n"
    "[[`image', `shows', `spoon', (`inside', `bowl')]],\n"
    "[[`person', `seen'], [`person', `holding', `spoon'], [`spoon', `used'],\n"
    " [`spoon', `stir', `food', (`in', `bowl')]],\n"
    "[[`person', `holding', `spoon'], [`spoon', `is', `bowl']],\n"
    "[[`person', `holding', `spoon'], [`spoon', `is', `bowl']],\n"
    "[[`person', `holding', `spoon'], [`spoon', `is', `bowl']],\n"
    "[`image', `shows', `spoon', (`in', `bowl')]],\n"
    "[[`image', `shows', `bottle'], [`bottle', `positioned', (`beside', `bowl')]],\n"
    "[[`image', `shows', `bottle'], [`bottle', `positioned', (`beside', `cup')]],\n"
    "[[`image', `shows', `bottle'], [`image', `placed', (`on', `counter')],\n"
    " [`bottle', `positioned', (`beside', `bowl')]]]";

constexpr std::string_view kStage2Assistant1 =
    "{`CAPTION': `<p>A person</p> is stirring <p>food in a bowl</p> using a spoon'}";

constexpr std::string_view kStage2User2 =
    "SVO:\n"
    "[[`hand', `using', `cutting board']],\n"
    "[[`woman', `using', `cutting board'], [`woman', `make', `craft project']],\n"
    "[[`child', `using', `craft cutter'], [`child', `cut', `object']],\n"
    "[[`child', `using', `craft cutter'], [`child', `cut', `paper']],\n"
    "[[`woman', `using', `craft cutter'], [`woman', `cut', `object']],\n"
    "[[`woman', `using', `scissors pair'], [`woman', `cut', `piece', (`of', `paper')]],\n"
    "[[`hand', `using', `scissors pair'], [`hand', `cut', `piece', (`of', `paper')]],\n"
    "[[`woman', `using', `scissors pair'], [`woman', `cut', `piece', (`of', `paper')]],\n"
    "[[`woman', `using', `craft cutter'], [`woman', `cut', `object']],\n"
    "[[`woman', `using', `craft cutter'], [`woman', `cut', `plate']]]";

constexpr std::string_view kStage2Assistant2 =
    "{`CAPTION': `<p>A woman</p> is cutting <p>an object</p> using a craft cutter'}";

constexpr std::string_view kStage3System =
    "You are tasked with classifying humans and objects to a set of given categories.\n"
    "\n"
    "Input format:\n"
    "Human/Object (string), set of categories (lists of strings).\n"
    "\n"
    "Output format:\n"
    "\n"
    "A Python dictionary with a key `CATEGORY', and as a value the predicted category of the "
    "human/object.\n"
    "\n"
    "Use `None' if the human/object doesn`t belong to any of the categories. DO NEVER classify a "
    "human as the object category and vice versa.";

struct Shot {
  std::string_view user;
  std::string_view assistant;
};

// The first example keeps its closing backtick as printed.
constexpr Shot kStage3Shots[] = {
    {"Input: `person`\nCategories: [`a woman', `her hair']", "{`CATEGORY': `a woman'}"},
    {"Input: `table'\nCategories: [`a person', `a bowl']", "{`CATEGORY': `None'}"},
    {"Input: `a piece of food on a plate'\nCategories: [`a woman', `a meal']", "{`CATEGORY': `a meal'}"},
    {"Input: `a hand'\nCategories: [`a person', `food on a plate']", "{`CATEGORY': `a person'}"},
    {"Input: `a man in a white shirt and black apron is also present'\nCategories: [`a person', `food']",
     "{`CATEGORY': `a person'}"},
};

bool is_quote(char c) { return c == '\'' || c == '"' || c == '`'; }

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::string unescape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '\\' && i + 1 < s.size() && (is_quote(s[i + 1]) || s[i + 1] == '\\')) {
      out.push_back(s[++i]);
    } else {
      out.push_back(s[i]);
    }
  }
  return out;
}

/// Pulls the value stored under `key` out of a dictionary-shaped answer.
/// Accepts backtick/apostrophe pairs as well as standard quotes, and tolerates
/// prose around the dictionary. Returns nullopt for an unquoted Python None.
std::optional<std::string> extract_dict_value(std::string_view text, std::string_view key,
                                              const std::string& missing_key_code) {
  const auto open = text.find('{');
  const auto close = text.rfind('}');
  if (open == std::string_view::npos || close == std::string_view::npos || close < open) {
    throw ResponseRejected("no-dictionary", "response contains no dictionary");
  }
  const std::string_view body = text.substr(open + 1, close - open - 1);

  std::size_t search = 0;
  while (true) {
    const auto at = body.find(key, search);
    if (at == std::string_view::npos) {
      throw ResponseRejected(missing_key_code, "dictionary has no " + std::string(key) + " key");
    }
    search = at + 1;
    if (at == 0 || !is_quote(body[at - 1])) continue;
    std::size_t p = at + key.size();
    if (p >= body.size() || !is_quote(body[p])) continue;
    ++p;
    while (p < body.size() && std::isspace(static_cast<unsigned char>(body[p]))) ++p;
    if (p >= body.size() || body[p] != ':') continue;
    ++p;
    while (p < body.size() && std::isspace(static_cast<unsigned char>(body[p]))) ++p;
    if (body.substr(p, 4) == "None") return std::nullopt;
    if (p >= body.size() || !is_quote(body[p])) {
      throw ResponseRejected(missing_key_code, std::string(key) + " value is not a quoted string");
    }
    const std::size_t value_start = p + 1;
    std::size_t value_end = std::string_view::npos;
    for (std::size_t q = body.size(); q > value_start; --q) {
      if (is_quote(body[q - 1])) {
        value_end = q - 1;
        break;
      }
    }
    if (value_end == std::string_view::npos) {
      throw ResponseRejected(missing_key_code, std::string(key) + " value is not terminated");
    }
    return unescape(body.substr(value_start, value_end - value_start));
  }
}

}  // namespace

std::string_view to_string(Role role) {
  switch (role) {
    case Role::System: return "system";
    case Role::User: return "user";
    case Role::Assistant: return "assistant";
  }
  return "user";
}

std::optional<Role> role_from_string(std::string_view name) {
  if (name == "system") return Role::System;
  if (name == "user") return Role::User;
  if (name == "assistant") return Role::Assistant;
  return std::nullopt;
}

std::vector<ChatMessage> build_stage2_prompt(std::string_view svo_block) {
  return {
      {Role::System, std::string(kStage2System)},
      {Role::User, std::string(kStage2User1)},
      {Role::Assistant, std::string(kStage2Assistant1)},
      {Role::User, std::string(kStage2User2)},
      {Role::Assistant, std::string(kStage2Assistant2)},
      {Role::User, "SVO: " + std::string(svo_block)},
  };
}

AggregatedCaption parse_stage2_response(std::string_view text) {
  auto value = extract_dict_value(text, "CAPTION", "no-caption-key");
  if (!value) throw ResponseRejected("no-caption-key", "CAPTION is None");
  AggregatedCaption out;
  out.raw_response = std::string(text);
  try {
    out.caption = parse_tagged_caption(trim(*value));
  } catch (const MalformedCaptionError& e) {
    throw ResponseRejected("malformed-caption", e.what());
  }
  if (out.caption.phrases.empty()) {
    throw ResponseRejected("no-phrases", "caption has no <p></p> tagged phrase");
  }
  return out;
}

std::string render_categories(std::span<const std::string> categories) {
  std::string out = "[";
  for (std::size_t i = 0; i < categories.size(); ++i) {
    if (i > 0) out += ", ";
    out += "`" + categories[i] + "'";
  }
  out += "]";
  return out;
}

std::vector<ChatMessage> build_stage3_prompt(std::string_view frame_phrase,
                                             std::span<const std::string> categories) {
  if (categories.empty()) throw Error("empty-categories", "stage 3 needs at least one category");
  std::vector<ChatMessage> messages;
  messages.push_back({Role::System, std::string(kStage3System)});
  for (const auto& shot : kStage3Shots) {
    messages.push_back({Role::User, std::string(shot.user)});
    messages.push_back({Role::Assistant, std::string(shot.assistant)});
  }
  messages.push_back({Role::User, "Input: `" + std::string(frame_phrase) + "'\nCategories: " +
                                      render_categories(categories)});
  return messages;
}

std::optional<std::string> parse_stage3_response(std::string_view text,
                                                 std::span<const std::string> categories) {
  auto value = extract_dict_value(text, "CATEGORY", "no-category-key");
  if (!value) return std::nullopt;
  const std::string v = trim(*value);
  for (const auto& c : categories) {
    if (trim(c) == v) return c;
  }
  if (v == "None") return std::nullopt;
  throw ResponseRejected("unknown-category", "'" + v + "' is not one of the given categories");
}

namespace {

/// Runs `attempt` until it succeeds or the retry budget is spent. Transport
/// failures back off exponentially; parse failures re-prompt immediately.
template <typename T, typename Fn>
std::pair<std::optional<T>, Reason> with_retries(const RetryPolicy& policy, int& attempts, Fn&& attempt) {
  Reason last{"transport", "no attempt made"};
  for (int i = 0; i <= std::max(policy.retries, 0); ++i) {
    ++attempts;
    try {
      return {attempt(), {}};
    } catch (const TransportError& e) {
      last = {e.code(), e.what()};
      if (i < policy.retries && policy.backoff.count() > 0) {
        std::this_thread::sleep_for(policy.backoff * (1 << std::min(i, 10)));
      }
    } catch (const ResponseRejected& e) {
      last = {e.code(), e.what()};
    }
  }
  return {std::nullopt, last};
}

}  // namespace

AggregationOutcome aggregate_video(std::span<const SvoFrame> frames, ChatClient& client,
                                   const RetryPolicy& policy) {
  const auto messages = build_stage2_prompt(render_svo_block(frames));
  AggregationOutcome out;
  auto [caption, why] = with_retries<AggregatedCaption>(policy, out.attempts, [&] {
    return parse_stage2_response(client.complete(messages));
  });
  if (caption) {
    out.caption = std::move(caption);
  } else {
    out.rejection = std::move(why);
  }
  return out;
}

TrackingOutcome track_by_language(std::span<const FramePhrase> frame_objects,
                                  std::span<const std::string> video_phrases, ChatClient& client,
                                  const RetryPolicy& policy) {
  TrackingOutcome out;
  std::map<std::string, std::optional<std::string>> memo;
  for (const auto& obj : frame_objects) {
    auto hit = memo.find(obj.phrase);
    if (hit == memo.end()) {
      std::optional<std::string> assigned;
      const auto exact = std::find(video_phrases.begin(), video_phrases.end(), obj.phrase);
      if (exact != video_phrases.end()) {
        assigned = *exact;
      } else if (!video_phrases.empty()) {
        const auto messages = build_stage3_prompt(obj.phrase, video_phrases);
        int attempts = 0;
        auto [choice, why] = with_retries<std::optional<std::string>>(policy, attempts, [&] {
          return parse_stage3_response(client.complete(messages), video_phrases);
        });
        out.model_calls += attempts;
        if (choice) {
          assigned = *choice;
        } else {
          out.warnings.push_back({why.code, "phrase '" + obj.phrase + "' set to None: " + why.message});
        }
      }
      hit = memo.emplace(obj.phrase, std::move(assigned)).first;
    }
    out.assignments.push_back({obj.frame_index, obj.phrase, hit->second});
  }
  return out;
}

}  // namespace groc
