#pragma once

#include <wssim/lexicon.hpp>
#include <wssim/text.hpp>
#include <wssim/wsd.hpp>
#include <wssim/wsdl_model.hpp>

#include <map>
#include <memory>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace wssim {

/// Operation-level weights: inputs, outputs, operation name.
struct Weights {
  double input = 1.0;
  double output = 1.0;
  double name = 2.0;

  double total() const { return input + output + name; }
  /// Throws std::invalid_argument unless all weights are finite, non-negative
  /// and not all zero.
  void validate() const;
  /// Parses "p1,p2,p3".
  static Weights parse(std::string_view text);
};

/// The three scores that make up an operation similarity.
struct OpComponents {
  double input = 0.0;
  double output = 0.0;
  double name = 0.0;
};

/// (p1*input + p2*output + p3*name) / (p1+p2+p3).
double combine(const Weights& w, const OpComponents& c);

/// Lesk signatures by synset, shared by every comparison of a Similarity.
class SignatureCache {
public:
  explicit SignatureCache(const StopwordList& sw) : sw_(sw) {}
  const TokenList& get(const Synset& s) const;

private:
  const StopwordList& sw_;
  mutable std::shared_mutex mutex_;
  mutable std::unordered_map<SynsetId, std::unique_ptr<TokenList>, SynsetIdHash> cache_;
};

/// Disambiguation context of one operation pair plus per-pair memo tables.
/// Built from the union of both operations' tokens, so it is the same for
/// (f, g) and (g, f). Not thread-safe; one instance per pair.
class ComparisonContext {
public:
  ComparisonContext() = default;
  explicit ComparisonContext(Context ctx) : ctx_(std::move(ctx)) {}

  const Context& context() const { return ctx_; }

private:
  friend class Similarity;
  Context ctx_;
  std::unordered_map<std::string, const Synset*> senses_;
  std::map<std::pair<std::string, std::string>, double> word_scores_;
};

/// An operation with its name tokens and flattened parameter sets.
struct PreparedOperation {
  std::string name;
  Sentence name_tokens;
  FlattenedParamSet input;
  FlattenedParamSet output;
};

struct PreparedService {
  std::string name;
  std::vector<PreparedOperation> operations;
};

struct SimilarityOptions {
  Weights weights;
  double wsd_overlap_threshold = kDefaultOverlapThreshold;
};

/// Layered similarity: word -> sentence -> parameter set -> operation ->
/// service. Each level above words is the min of the two directed
/// best-match averages. Holds only read-only state plus a thread-safe
/// signature cache, so one instance can serve concurrent comparisons.
class Similarity {
public:
  Similarity(const Lexicon& lex, const StopwordList& sw, SimilarityOptions options = {});

  const SimilarityOptions& options() const { return options_; }
  const Lexicon& lexicon() const { return lex_; }

  PreparedOperation prepare(const OperationDef& op) const;
  PreparedService prepare(const ServiceDescription& service) const;

  ComparisonContext context_for(const PreparedOperation& f, const PreparedOperation& g) const;
  ComparisonContext context_for(const TokenList& tokens) const;

  /// Wu-Palmer between the disambiguated senses when both words are in the
  /// lexicon and their senses share a hypernym ancestor; Jaro-Winkler
  /// otherwise.
  double word_sim(std::string_view w1, std::string_view w2, ComparisonContext& ctx) const;

  /// Sentences are compared as word sets. Throws std::invalid_argument on an
  /// empty sentence.
  double sentence_sim(const Sentence& s1, const Sentence& s2, ComparisonContext& ctx) const;

  /// (empty, empty) -> 1, (empty, non-empty) -> 0.
  double set_sim(const FlattenedParamSet& e1, const FlattenedParamSet& e2, ComparisonContext& ctx) const;

  OpComponents op_components(const PreparedOperation& f, const PreparedOperation& g) const;
  double op_sim(const PreparedOperation& f, const PreparedOperation& g) const;
  double op_sim(const OperationDef& f, const OperationDef& g) const;

  double service_sim(const PreparedService& a, const PreparedService& b) const;
  double service_sim(const ServiceDescription& a, const ServiceDescription& b) const;

private:
  const Synset* sense(const std::string& word, ComparisonContext& ctx) const;

  const Lexicon& lex_;
  const StopwordList& sw_;
  SimilarityOptions options_;
  SignatureCache signatures_;
};

} // namespace wssim
