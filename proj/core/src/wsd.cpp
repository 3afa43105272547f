#include <wssim/wsd.hpp>

#include <algorithm>

namespace wssim {

Context::Context(const TokenList& tokens, const StopwordList& sw) {
  for (const auto& t : tokens) {
    if (!t.empty() && !sw.contains(t)) tokens_.insert(t);
  }
}

std::size_t compute_overlap(const TokenList& signature, const Context& ctx, double threshold) {
  std::size_t count = 0;
  for (const auto& w1 : signature) {
    for (const auto& w2 : ctx.tokens()) {
      if (jaro_winkler(w1, w2) > threshold) ++count;
    }
  }
  return count;
}

TokenList lesk_signature(const Synset& s, const StopwordList& sw) {
  TokenList raw = tokenize_text(s.gloss);
  for (const auto& word : s.words) {
    for (auto& t : tokenize_text(word)) raw.push_back(std::move(t));
  }
  TokenList out;
  for (auto& t : remove_stopwords(raw, sw)) {
    if (std::find(out.begin(), out.end(), t) == out.end()) out.push_back(std::move(t));
  }
  return out;
}

const Synset* disambiguate(const Lexicon& lex, std::string_view word, const Context& ctx, PosFilter filter,
                           const StopwordList& sw, double threshold) {
  TokenList scratch;
  return disambiguate(
      lex, word, ctx, filter,
      [&](const Synset& s) -> const TokenList& {
        scratch = lesk_signature(s, sw);
        return scratch;
      },
      threshold);
}

const Synset* disambiguate(const Lexicon& lex, std::string_view word, const Context& ctx, PosFilter filter,
                           const SignatureFn& signature, double threshold) {
  const auto senses = lex.lookup(word, filter);
  if (senses.empty()) return nullptr;
  const Synset* best = senses.front();
  if (ctx.empty()) return best;
  std::size_t max_overlap = 0;
  for (const Synset* sense : senses) {
    const std::size_t overlap = compute_overlap(signature(*sense), ctx, threshold);
    if (overlap > max_overlap) {
      max_overlap = overlap;
      best = sense;
    }
  }
  return best;
}

const Synset* SenseCache::sense(const std::string& word) {
  if (auto it = memo_.find(word); it != memo_.end()) return it->second;
  const Synset* s = disambiguate(lex_, word, ctx_, filter_, sw_, threshold_);
  memo_.emplace(word, s);
  return s;
}

} // namespace wssim
