#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace wssim {

enum class Pos : std::uint8_t { noun, verb, adj, adv };

inline constexpr Pos kAllPos[] = {Pos::noun, Pos::verb, Pos::adj, Pos::adv};

char pos_letter(Pos p);
std::string_view pos_name(Pos p);

/// Identifies a synset by part of speech and its byte offset in data.<pos>.
struct SynsetId {
  Pos pos = Pos::noun;
  std::uint32_t offset = 0;

  friend bool operator==(const SynsetId&, const SynsetId&) = default;
  friend auto operator<=>(const SynsetId&, const SynsetId&) = default;

  /// "n:02084071" style rendering used in logs and JSON.
  std::string str() const;
};

struct SynsetIdHash {
  std::size_t operator()(const SynsetId& id) const noexcept {
    return std::hash<std::uint64_t>{}((static_cast<std::uint64_t>(id.pos) << 32) | id.offset);
  }
};

struct Synset {
  SynsetId id;
  std::vector<std::string> words;     ///< lemmas as stored in the data file
  std::string gloss;
  std::vector<SynsetId> hypernyms;    ///< '@' and '@i' pointers, noun/verb only
  int depth = 0;                      ///< 1 for roots; 0 for adj/adv (no taxonomy)
};

/// Restricts lookups to a subset of parts of speech.
struct PosFilter {
  bool noun = true, verb = true, adj = true, adv = true;

  static PosFilter all() { return {}; }
  static PosFilter only(Pos p) {
    PosFilter f{false, false, false, false};
    f.set(p, true);
    return f;
  }
  static PosFilter taxonomic() { return {true, true, false, false}; }

  bool allows(Pos p) const;
  void set(Pos p, bool on);
};

class LexiconError : public std::runtime_error {
public:
  enum class Kind { missing_file, malformed_record, dangling_offset };

  LexiconError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

private:
  Kind kind_;
};

/// Immutable in-memory view of a Princeton WordNet 3.x database.
///
/// Senses returned by lookup() keep the order of the index files, which
/// WordNet sorts by tagged frequency, so the first sense of a lemma is its
/// most frequent one. Hypernym depths (root = 1) are computed once at load.
class Lexicon {
public:
  /// Reads index.{noun,verb,adj,adv}, data.{noun,verb,adj,adv} and, when
  /// present, the {noun,verb,adj,adv}.exc morphological exception lists.
  static Lexicon load(const std::filesystem::path& dir);

  /// Frequency-ordered senses after morphological normalisation. Parts of
  /// speech are visited noun, verb, adj, adv. Unknown lemma -> empty.
  std::vector<const Synset*> lookup(std::string_view lemma, PosFilter filter = PosFilter::all()) const;

  /// Base forms of `word` for one part of speech that exist in the index,
  /// in the order exact form, exception list, suffix detachment.
  std::vector<std::string> morph(std::string_view word, Pos pos) const;

  bool contains(std::string_view lemma) const { return !lookup(lemma).empty(); }

  const Synset* find(SynsetId id) const;
  const Synset& at(SynsetId id) const;

  /// Wu-Palmer similarity 2*N3 / (N1 + N2 + 2*N3), where N3 is the depth of
  /// a common hypernym ancestor (a synset is its own ancestor) and N1, N2 are
  /// the shortest hypernym distances from `a` and `b` up to it. When the
  /// ancestor lies on both minimal paths this is 2*depth(lcs) /
  /// (depth(a)+depth(b)). The ancestor maximising the score is used. 0 when
  /// there is none, which includes cross-POS pairs and distinct
  /// adjective/adverb synsets. Any synset compared with itself gives 1.
  double wu_palmer(const Synset& a, const Synset& b) const;

  /// All hypernym ancestors of `s` (including `s`) in breadth-first order.
  std::vector<const Synset*> ancestors(const Synset& s) const;

  /// Ancestors paired with their shortest hypernym distance from `s`.
  std::vector<std::pair<const Synset*, int>> hypernym_distances(const Synset& s) const;

  std::size_t synset_count() const { return synsets_.size(); }
  std::size_t lemma_count(Pos pos) const { return index_[static_cast<int>(pos)].size(); }

  /// Every synset of one part of speech, in file order.
  std::vector<const Synset*> synsets(Pos pos) const;

private:
  using SenseIndex = std::unordered_map<std::string, std::vector<std::uint32_t>>;
  using ExceptionMap = std::unordered_map<std::string, std::vector<std::string>>;

  std::vector<Synset> synsets_;
  std::unordered_map<SynsetId, std::size_t, SynsetIdHash> by_id_;
  SenseIndex index_[4];
  ExceptionMap exceptions_[4];
};

} // namespace wssim
