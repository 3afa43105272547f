#pragma once

#include <wssim/lexicon.hpp>
#include <wssim/text.hpp>

#include <functional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>

namespace wssim {

/// Disambiguation context: lowercase words with stopwords removed.
class Context {
public:
  Context() = default;
  Context(const TokenList& tokens, const StopwordList& sw);

  const std::set<std::string>& tokens() const { return tokens_; }
  bool empty() const { return tokens_.empty(); }

private:
  std::set<std::string> tokens_;
};

inline constexpr double kDefaultOverlapThreshold = 0.5;

/// Counts (signature word, context word) pairs whose Jaro-Winkler
/// similarity is strictly above `threshold`. Pairs are counted, not
/// distinct words.
std::size_t compute_overlap(const TokenList& signature, const Context& ctx,
                            double threshold = kDefaultOverlapThreshold);

/// Stopword-filtered gloss tokens plus the synset's member lemmas, without
/// duplicates.
TokenList lesk_signature(const Synset& s, const StopwordList& sw);

/// Simplified Lesk. Starts from the most frequent sense and only moves to a
/// later sense whose overlap is strictly larger. Returns nullptr when the
/// word has no sense under `filter`.
const Synset* disambiguate(const Lexicon& lex, std::string_view word, const Context& ctx,
                           PosFilter filter = PosFilter::all(), const StopwordList& sw = StopwordList::defaults(),
                           double threshold = kDefaultOverlapThreshold);

/// Same selection rule with signatures supplied by the caller (e.g. from a
/// cache).
using SignatureFn = std::function<const TokenList&(const Synset&)>;
const Synset* disambiguate(const Lexicon& lex, std::string_view word, const Context& ctx, PosFilter filter,
                           const SignatureFn& signature, double threshold = kDefaultOverlapThreshold);

/// Per-context memo for disambiguate(). Not thread-safe; create one per
/// comparison.
class SenseCache {
public:
  SenseCache(const Lexicon& lex, const Context& ctx, PosFilter filter, const StopwordList& sw, double threshold)
      : lex_(lex), ctx_(ctx), filter_(filter), sw_(sw), threshold_(threshold) {}

  const Synset* sense(const std::string& word);

private:
  const Lexicon& lex_;
  const Context& ctx_;
  PosFilter filter_;
  const StopwordList& sw_;
  double threshold_;
  std::unordered_map<std::string, const Synset*> memo_;
};

} // namespace wssim
