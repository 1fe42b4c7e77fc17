#include "groc/svo.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <sstream>

namespace groc {

extern const std::string_view kBuiltinLexiconTsv;

namespace {

constexpr std::array<std::pair<Pos, std::string_view>, 9> kPosNames{{
    {Pos::Noun, "NOUN"},
    {Pos::Propn, "PROPN"},
    {Pos::Verb, "VERB"},
    {Pos::Aux, "AUX"},
    {Pos::Adp, "ADP"},
    {Pos::Det, "DET"},
    {Pos::Adj, "ADJ"},
    {Pos::Pron, "PRON"},
    {Pos::Other, "OTHER"},
}};

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

bool is_word_char(char c) {
  const auto u = static_cast<unsigned char>(c);
  return std::isalnum(u) || c == '\'' || c == '-' || u >= 0x80;
}

bool is_punct_token(std::string_view s) {
  return !s.empty() && std::none_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || static_cast<unsigned char>(c) >= 0x80;
  });
}

bool is_nominal(Pos p) { return p == Pos::Noun || p == Pos::Propn; }

}  // namespace

std::string_view to_string(Pos pos) {
  for (const auto& [p, name] : kPosNames) {
    if (p == pos) return name;
  }
  return "OTHER";
}

std::optional<Pos> pos_from_string(std::string_view name) {
  for (const auto& [p, n] : kPosNames) {
    if (n == name) return p;
  }
  return std::nullopt;
}

const Lexicon& Lexicon::builtin() {
  static const Lexicon lex = Lexicon::parse(kBuiltinLexiconTsv);
  return lex;
}

Lexicon Lexicon::parse(std::string_view tsv) {
  Lexicon lex;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < tsv.size()) {
    std::size_t nl = tsv.find('\n', pos);
    if (nl == std::string_view::npos) nl = tsv.size();
    std::string_view line = tsv.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string_view::npos || tab == 0) {
      throw Error("lexicon-format", "lexicon line " + std::to_string(line_no) + ": expected token<TAB>POS");
    }
    const auto tag = pos_from_string(line.substr(tab + 1));
    if (!tag) {
      throw Error("lexicon-format", "lexicon line " + std::to_string(line_no) + ": unknown tag '" +
                                        std::string(line.substr(tab + 1)) + "'");
    }
    lex.entries_[lower(line.substr(0, tab))] = *tag;
  }
  return lex;
}

Lexicon Lexicon::load_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("io", "cannot open lexicon file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

std::optional<Pos> Lexicon::lookup(std::string_view word) const {
  auto it = entries_.find(std::string(word));
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::string> split_tokens(std::string_view sentence) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < sentence.size()) {
    while (i < sentence.size() && std::isspace(static_cast<unsigned char>(sentence[i]))) ++i;
    std::size_t j = i;
    while (j < sentence.size() && !std::isspace(static_cast<unsigned char>(sentence[j]))) ++j;
    std::string_view chunk = sentence.substr(i, j - i);
    i = j;
    if (chunk.empty()) continue;

    std::vector<std::string> trailing;
    std::size_t b = 0, e = chunk.size();
    while (b < e && (!is_word_char(chunk[b]) || chunk[b] == '\'' || chunk[b] == '-')) {
      out.emplace_back(1, chunk[b]);
      ++b;
    }
    while (e > b && (!is_word_char(chunk[e - 1]) || chunk[e - 1] == '\'' || chunk[e - 1] == '-')) {
      trailing.emplace_back(1, chunk[e - 1]);
      --e;
    }
    std::string_view core = chunk.substr(b, e - b);
    if (core.size() > 2 && (ends_with(core, "'s") || ends_with(core, "'S"))) {
      out.emplace_back(core.substr(0, core.size() - 2));
      out.emplace_back(core.substr(core.size() - 2));
    } else if (!core.empty()) {
      out.emplace_back(core);
    }
    out.insert(out.end(), trailing.rbegin(), trailing.rend());
  }
  return out;
}

Pos RuleTagger::lookup_or_guess(std::string_view word, bool sentence_initial) const {
  if (is_punct_token(word)) return Pos::Other;
  const std::string w = lower(word);
  if (auto hit = lexicon_->lookup(w)) return *hit;
  if (std::all_of(w.begin(), w.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)) || c == '.'; })) {
    return Pos::Adj;
  }
  if (!sentence_initial && std::isupper(static_cast<unsigned char>(word.front()))) return Pos::Propn;
  if (auto dash = w.rfind('-'); dash != std::string::npos && dash + 1 < w.size()) {
    if (auto hit = lexicon_->lookup(w.substr(dash + 1))) {
      return *hit == Pos::Verb ? Pos::Adj : *hit;
    }
  }
  if (w.size() > 4 && ends_with(w, "ing")) return Pos::Verb;
  if (w.size() > 3 && ends_with(w, "ed")) return Pos::Verb;
  if (w.size() > 3 && ends_with(w, "ly")) return Pos::Other;
  for (std::string_view suffix : {"ous", "ful", "ive", "able", "ible", "ish", "less", "ical", "ic"}) {
    if (w.size() > suffix.size() + 2 && ends_with(w, suffix)) return Pos::Adj;
  }
  return Pos::Noun;
}

std::vector<TaggedToken> RuleTagger::tag(std::string_view sentence) const {
  std::vector<TaggedToken> tokens;
  for (auto& word : split_tokens(sentence)) {
    const Pos p = lookup_or_guess(word, tokens.empty());
    tokens.push_back({std::move(word), p});
  }
  const auto pos_at = [&](std::size_t k) {
    return k < tokens.size() ? std::optional<Pos>(tokens[k].pos) : std::nullopt;
  };
  for (std::size_t k = 0; k < tokens.size(); ++k) {
    auto& t = tokens[k];
    const Pos prev = k > 0 ? tokens[k - 1].pos : Pos::Other;
    const auto next = pos_at(k + 1);
    const std::string w = lower(t.text);
    const bool after_modifier = prev == Pos::Det || prev == Pos::Adj;
    if (t.pos == Pos::Verb && after_modifier) {
      if (next && is_nominal(*next)) {
        // "a cutting board", "the chopped onions"
        t.pos = ends_with(w, "ing") ? Pos::Noun : Pos::Adj;
      } else if (next && *next == Pos::Adj) {
        t.pos = Pos::Adj;
      } else if (prev == Pos::Det) {
        t.pos = Pos::Noun;  // "a cut", "the cook"
      }
    }
    if ((w == "'s" || w == "’s") && next && (is_nominal(*next) || *next == Pos::Adj)) {
      t.pos = Pos::Det;
    }
  }
  for (std::size_t k = 0; k < tokens.size(); ++k) {
    auto& t = tokens[k];
    if (t.pos != Pos::Det) continue;
    const auto next = pos_at(k + 1);
    const bool heads_phrase = next && (is_nominal(*next) || *next == Pos::Adj || *next == Pos::Det);
    if (!heads_phrase) {
      const std::string w = lower(t.text);
      if (w == "her" || w == "that" || w == "this" || w == "these" || w == "those" || w == "some" ||
          w == "all" || w == "both" || w == "each" || w == "one") {
        t.pos = Pos::Pron;
      }
    }
  }
  return tokens;
}

std::vector<TaggedToken> pos_tag(std::string_view sentence) {
  static const RuleTagger tagger;
  return tagger.tag(sentence);
}

namespace {

bool is_clause_link(const TaggedToken& t) {
  if (t.pos != Pos::Other) return false;
  const std::string w = lower(t.text);
  return w == "and" || w == "or" || w == "while" || w == "then" || w == "but" || w == "," ||
         w == ";" || w == "as" || w == "whilst";
}

bool is_adverb(const TaggedToken& t) {
  if (t.pos != Pos::Other) return false;
  const std::string w = lower(t.text);
  return w == "not" || w == "n't" || w == "also" || w == "still" || w == "just" || w == "now" ||
         w == "currently" || (w.size() > 3 && ends_with(w, "ly"));
}

std::string join_lower(std::span<const TaggedToken> toks, std::size_t b, std::size_t e) {
  std::string out;
  for (std::size_t k = b; k < e; ++k) {
    if (!out.empty()) out.push_back(' ');
    out += lower(toks[k].text);
  }
  return out;
}

/// Parses a noun phrase starting at `k`; returns its head and advances `k`.
/// The head is the last contiguous NOUN/PROPN run, or a lone pronoun.
std::optional<std::string> noun_phrase(std::span<const TaggedToken> toks, std::size_t& k) {
  std::size_t j = k;
  while (j < toks.size() && (toks[j].pos == Pos::Det || toks[j].pos == Pos::Adj || is_adverb(toks[j]))) ++j;
  if (j < toks.size() && toks[j].pos == Pos::Pron) {
    k = j + 1;
    return lower(toks[j].text);
  }
  std::optional<std::string> head;
  while (j < toks.size() && (is_nominal(toks[j].pos) || toks[j].pos == Pos::Adj || toks[j].pos == Pos::Det)) {
    if (is_nominal(toks[j].pos)) {
      std::size_t e = j;
      while (e < toks.size() && is_nominal(toks[e].pos)) ++e;
      head = join_lower(toks, j, e);
      j = e;
    } else if (toks[j].pos == Pos::Det && lower(toks[j].text) != "'s") {
      break;  // a new determiner starts a new phrase
    } else {
      ++j;
    }
  }
  if (!head) return std::nullopt;
  k = j;
  return head;
}

bool starts_noun_phrase(Pos p) {
  return p == Pos::Det || p == Pos::Adj || p == Pos::Noun || p == Pos::Propn || p == Pos::Pron;
}

}  // namespace

SvoFrame extract_svo(std::span<const TaggedToken> toks, int frame_index) {
  SvoFrame frame;
  frame.frame_index = frame_index;

  std::optional<std::string> pending;  // noun phrase awaiting a verb
  std::optional<std::size_t> current;  // index of the open relation
  std::optional<std::size_t> deferred; // relation whose subject is still missing
  bool linked = false;                 // a clause link ("and", ",") since the last phrase

  std::size_t k = 0;
  while (k < toks.size()) {
    const auto& t = toks[k];
    if (starts_noun_phrase(t.pos)) {
      std::size_t j = k;
      auto head = noun_phrase(toks, j);
      if (!head) {
        k = std::max(j, k + 1);
        continue;
      }
      k = j;
      linked = false;
      if (deferred) {
        frame.relations[*deferred].subject = *head;
        current = deferred;
        deferred.reset();
        continue;
      }
      if (current) {
        auto& rel = frame.relations[*current];
        if (!rel.object && rel.adpositions.empty() && !pending) {
          rel.object = *head;
          continue;
        }
      }
      pending = std::move(head);
      continue;
    }
    if (t.pos == Pos::Aux || t.pos == Pos::Verb) {
      const bool infinitive = k > 0 && toks[k - 1].pos == Pos::Adp && lower(toks[k - 1].text) == "to";
      std::size_t j = k;
      std::optional<std::size_t> aux, verb;
      while (j < toks.size()) {
        if (toks[j].pos == Pos::Aux && !verb) {
          aux = j;
        } else if (toks[j].pos == Pos::Verb && !verb) {
          verb = j;
        } else if (!is_adverb(toks[j])) {
          break;
        }
        ++j;
        if (verb) break;
      }
      const std::size_t main = verb ? *verb : *aux;
      k = j;

      std::string subject;
      if ((linked || infinitive) && current) {
        subject = frame.relations[*current].subject;
      } else if (pending) {
        subject = *pending;
      } else if (current && frame.relations[*current].object) {
        subject = *frame.relations[*current].object;
      } else if (current) {
        subject = frame.relations[*current].subject;
      }
      pending.reset();
      linked = false;
      SvoRelation rel;
      rel.subject = subject;
      rel.verb = lower(toks[main].text);
      frame.relations.push_back(std::move(rel));
      if (subject.empty()) {
        deferred = frame.relations.size() - 1;
        current.reset();
      } else {
        current = frame.relations.size() - 1;
        deferred.reset();
      }
      continue;
    }
    if (t.pos == Pos::Adp) {
      std::size_t j = k + 1;
      auto head = j < toks.size() ? noun_phrase(toks, j) : std::nullopt;
      if (head && current && !pending) {
        frame.relations[*current].adpositions.push_back({lower(t.text), *head});
        k = j;
      } else if (head) {
        k = j;  // modifier of a subject phrase; not attached
      } else {
        ++k;
      }
      continue;
    }
    if (is_clause_link(t)) linked = true;
    ++k;
  }
  std::erase_if(frame.relations, [](const SvoRelation& r) { return r.subject.empty() || r.verb.empty(); });
  return frame;
}

namespace {

void quote(std::string& out, std::string_view s) {
  out.push_back('`');
  out.append(s);
  out.push_back('\'');
}

}  // namespace

std::string render_svo_block(std::span<const SvoFrame> frames) {
  std::string out;
  for (std::size_t f = 0; f < frames.size(); ++f) {
    if (frames[f].relations.empty()) continue;
    if (!out.empty()) out += ",\n";
    out.push_back('[');
    const auto& rels = frames[f].relations;
    for (std::size_t r = 0; r < rels.size(); ++r) {
      if (r > 0) out += ", ";
      out.push_back('[');
      quote(out, rels[r].subject);
      out += ", ";
      quote(out, rels[r].verb);
      if (rels[r].object) {
        out += ", ";
        quote(out, *rels[r].object);
      }
      for (const auto& a : rels[r].adpositions) {
        out += ", (";
        quote(out, a.adposition);
        out += ", ";
        quote(out, a.object);
        out.push_back(')');
      }
      out.push_back(']');
    }
    out.push_back(']');
  }
  return out.empty() ? "[]" : out;
}

}  // namespace groc
