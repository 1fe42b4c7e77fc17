#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "groc/core.hpp"

namespace groc {

/// Coarse part-of-speech tagset used by the SVO extractor.
enum class Pos { Noun, Propn, Verb, Aux, Adp, Det, Adj, Pron, Other };

std::string_view to_string(Pos pos);
std::optional<Pos> pos_from_string(std::string_view name);

struct TaggedToken {
  std::string text;
  Pos pos = Pos::Other;

  bool operator==(const TaggedToken&) const = default;
};

/// Word -> tag table. Keys are lowercase.
class Lexicon {
 public:
  /// The lexicon compiled into the library (data/lexicon.tsv).
  static const Lexicon& builtin();
  /// One `token<TAB>POS` per line; `#` starts a comment line.
  static Lexicon parse(std::string_view tsv);
  static Lexicon load_file(const std::string& path);

  std::optional<Pos> lookup(std::string_view lowercase_word) const;
  std::size_t size() const { return entries_.size(); }

 private:
  std::unordered_map<std::string, Pos> entries_;
};

class PosTagger {
 public:
  virtual ~PosTagger() = default;
  virtual std::vector<TaggedToken> tag(std::string_view sentence) const = 0;
};

/// Lexicon lookup, then suffix heuristics for unknown words, then a few
/// left-to-right context repairs (noun compounds such as "cutting board",
/// possessive "'s", object pronoun "her").
class RuleTagger final : public PosTagger {
 public:
  RuleTagger() : lexicon_(&Lexicon::builtin()) {}
  explicit RuleTagger(const Lexicon& lexicon) : lexicon_(&lexicon) {}

  std::vector<TaggedToken> tag(std::string_view sentence) const override;

 private:
  Pos lookup_or_guess(std::string_view word, bool sentence_initial) const;

  const Lexicon* lexicon_;
};

/// Whitespace split with leading/trailing punctuation and a trailing "'s"
/// peeled off as separate tokens.
std::vector<std::string> split_tokens(std::string_view sentence);

/// Tags with the default RuleTagger.
std::vector<TaggedToken> pos_tag(std::string_view sentence);

/// Shallow pattern-based relation extraction over tagged tokens. Relation
/// strings are lowercased; contiguous noun runs are kept as one head.
SvoFrame extract_svo(std::span<const TaggedToken> tokens, int frame_index);

/// Frames rendered as backtick-quoted nested lists, one frame per line,
/// e.g. "[[`person', `holding', `spoon']]". Frames without relations are left
/// out; a block with nothing to show is "[]".
std::string render_svo_block(std::span<const SvoFrame> frames);

}  // namespace groc
