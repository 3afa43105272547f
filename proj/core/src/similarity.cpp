#include <wssim/similarity.hpp>

#include <wssim/hausdorff.hpp>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <span>
#include <stdexcept>

namespace wssim {

void Weights::validate() const {
  for (double w : {input, output, name}) {
    if (!std::isfinite(w) || w < 0.0) throw std::invalid_argument("weights must be finite and non-negative");
  }
  if (total() <= 0.0) throw std::invalid_argument("weights must not all be zero");
}

Weights Weights::parse(std::string_view text) {
  std::vector<double> values;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find(',', start);
    if (end == std::string_view::npos) end = text.size();
    const std::string field(text.substr(start, end - start));
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(field, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad weight '" + field + "'");
    }
    if (used != field.size()) throw std::invalid_argument("bad weight '" + field + "'");
    values.push_back(v);
    start = end + 1;
  }
  if (values.size() != 3) throw std::invalid_argument("expected three comma-separated weights");
  Weights w{values[0], values[1], values[2]};
  w.validate();
  return w;
}

double combine(const Weights& w, const OpComponents& c) {
  return (w.input * c.input + w.output * c.output + w.name * c.name) / w.total();
}

const TokenList& SignatureCache::get(const Synset& s) const {
  {
    std::shared_lock lock(mutex_);
    if (auto it = cache_.find(s.id); it != cache_.end()) return *it->second;
  }
  auto sig = std::make_unique<TokenList>(lesk_signature(s, sw_));
  std::unique_lock lock(mutex_);
  auto [it, inserted] = cache_.try_emplace(s.id, std::move(sig));
  return *it->second;
}

Similarity::Similarity(const Lexicon& lex, const StopwordList& sw, SimilarityOptions options)
    : lex_(lex), sw_(sw), options_(options), signatures_(sw) {
  options_.weights.validate();
}

namespace {

// Function words carry no meaning in identifiers ("GetWeatherByZip").
// A sentence made only of stopwords keeps its tokens.
Sentence content_words(Sentence tokens, const StopwordList& sw) {
  Sentence kept = remove_stopwords(tokens, sw);
  return kept.empty() ? tokens : kept;
}

FlattenedParamSet content_words(FlattenedParamSet set, const StopwordList& sw) {
  for (auto& s : set.sentences) s = content_words(std::move(s), sw);
  return set;
}

} // namespace

PreparedOperation Similarity::prepare(const OperationDef& op) const {
  return PreparedOperation{op.name, content_words(tokenize_identifier(op.name), sw_),
                           content_words(flatten(op.input), sw_), content_words(flatten(op.output), sw_)};
}

PreparedService Similarity::prepare(const ServiceDescription& service) const {
  PreparedService out{service.name, {}};
  out.operations.reserve(service.operations.size());
  for (const auto& op : service.operations) out.operations.push_back(prepare(op));
  return out;
}

ComparisonContext Similarity::context_for(const TokenList& tokens) const {
  return ComparisonContext(Context(tokens, sw_));
}

ComparisonContext Similarity::context_for(const PreparedOperation& f, const PreparedOperation& g) const {
  TokenList all;
  for (const PreparedOperation* op : {&f, &g}) {
    all.insert(all.end(), op->name_tokens.begin(), op->name_tokens.end());
    for (const auto* set : {&op->input, &op->output}) {
      for (const auto& sentence : set->sentences) all.insert(all.end(), sentence.begin(), sentence.end());
    }
  }
  return context_for(all);
}

const Synset* Similarity::sense(const std::string& word, ComparisonContext& ctx) const {
  if (auto it = ctx.senses_.find(word); it != ctx.senses_.end()) return it->second;
  const Synset* s = disambiguate(
      lex_, word, ctx.ctx_, PosFilter::taxonomic(),
      [this](const Synset& syn) -> const TokenList& { return signatures_.get(syn); }, options_.wsd_overlap_threshold);
  ctx.senses_.emplace(word, s);
  return s;
}

double Similarity::word_sim(std::string_view w1, std::string_view w2, ComparisonContext& ctx) const {
  if (w1 == w2) return 1.0;
  auto key = w1 < w2 ? std::make_pair(std::string(w1), std::string(w2)) : std::make_pair(std::string(w2), std::string(w1));
  if (auto it = ctx.word_scores_.find(key); it != ctx.word_scores_.end()) return it->second;

  double score = 0.0;
  if (!lex_.contains(key.first) || !lex_.contains(key.second)) {
    score = jaro_winkler(key.first, key.second);
  } else {
    const Synset* s1 = sense(key.first, ctx);
    const Synset* s2 = sense(key.second, ctx);
    const double wp = s1 && s2 ? lex_.wu_palmer(*s1, *s2) : 0.0;
    // No shared hypernym ancestor (cross-POS, disjoint verb trees, or
    // adjective/adverb-only words): fall back to the syntactic measure.
    score = wp > 0.0 ? wp : jaro_winkler(key.first, key.second);
  }
  ctx.word_scores_.emplace(std::move(key), score);
  return score;
}

namespace {

std::vector<std::string> unique_tokens(const Sentence& s) {
  std::vector<std::string> out;
  for (const auto& t : s) {
    if (std::find(out.begin(), out.end(), t) == out.end()) out.push_back(t);
  }
  return out;
}

} // namespace

double Similarity::sentence_sim(const Sentence& s1, const Sentence& s2, ComparisonContext& ctx) const {
  if (s1.empty() || s2.empty()) throw std::invalid_argument("sentence_sim: empty sentence");
  const auto a = unique_tokens(s1);
  const auto b = unique_tokens(s2);
  return set_similarity(std::span<const std::string>(a), std::span<const std::string>(b),
                        [&](const std::string& x, const std::string& y) { return word_sim(x, y, ctx); });
}

double Similarity::set_sim(const FlattenedParamSet& e1, const FlattenedParamSet& e2, ComparisonContext& ctx) const {
  if (e1.empty() && e2.empty()) return 1.0;
  if (e1.empty() || e2.empty()) return 0.0;
  return set_similarity(std::span<const Sentence>(e1.sentences), std::span<const Sentence>(e2.sentences),
                        [&](const Sentence& x, const Sentence& y) { return sentence_sim(x, y, ctx); });
}

OpComponents Similarity::op_components(const PreparedOperation& f, const PreparedOperation& g) const {
  ComparisonContext ctx = context_for(f, g);
  OpComponents c;
  c.input = set_sim(f.input, g.input, ctx);
  c.output = set_sim(f.output, g.output, ctx);
  if (f.name_tokens.empty() && g.name_tokens.empty()) {
    c.name = 1.0;
  } else if (f.name_tokens.empty() || g.name_tokens.empty()) {
    c.name = 0.0;
  } else {
    c.name = sentence_sim(f.name_tokens, g.name_tokens, ctx);
  }
  return c;
}

double Similarity::op_sim(const PreparedOperation& f, const PreparedOperation& g) const {
  return combine(options_.weights, op_components(f, g));
}

double Similarity::op_sim(const OperationDef& f, const OperationDef& g) const {
  return op_sim(prepare(f), prepare(g));
}

double Similarity::service_sim(const PreparedService& a, const PreparedService& b) const {
  if (a.operations.empty() || b.operations.empty()) throw std::invalid_argument("service_sim: service without operations");
  // Each unordered operation pair is scored once and reused for both directions.
  std::map<std::pair<const PreparedOperation*, const PreparedOperation*>, double> memo;
  auto score = [&](const PreparedOperation* f, const PreparedOperation* g) {
    auto key = f < g ? std::make_pair(f, g) : std::make_pair(g, f);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    const double s = op_sim(*f, *g);
    memo.emplace(key, s);
    return s;
  };
  std::vector<const PreparedOperation*> lhs, rhs;
  for (const auto& op : a.operations) lhs.push_back(&op);
  for (const auto& op : b.operations) rhs.push_back(&op);
  return set_similarity(std::span<const PreparedOperation* const>(lhs), std::span<const PreparedOperation* const>(rhs),
                        score);
}

double Similarity::service_sim(const ServiceDescription& a, const ServiceDescription& b) const {
  return service_sim(prepare(a), prepare(b));
}

} // namespace wssim
