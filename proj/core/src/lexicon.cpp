#include <wssim/lexicon.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <deque>
#include <fstream>
#include <span>
#include <sstream>
#include <unordered_set>

namespace wssim {

namespace {

constexpr std::string_view kPosFileSuffix[] = {"noun", "verb", "adj", "adv"};

struct Suffix {
  std::string_view from;
  std::string_view to;
};

// WordNet morphy detachment rules.
constexpr Suffix kNounRules[] = {{"s", ""},     {"ses", "s"},  {"xes", "x"}, {"zes", "z"},
                                 {"ches", "ch"}, {"shes", "sh"}, {"men", "man"}, {"ies", "y"}};
constexpr Suffix kVerbRules[] = {{"s", ""},  {"ies", "y"}, {"es", "e"},  {"es", ""},
                                 {"ed", "e"}, {"ed", ""},   {"ing", "e"}, {"ing", ""}};
constexpr Suffix kAdjRules[] = {{"er", ""}, {"est", ""}, {"er", "e"}, {"est", "e"}};

std::span<const Suffix> rules_for(Pos p) {
  switch (p) {
  case Pos::noun: return kNounRules;
  case Pos::verb: return kVerbRules;
  case Pos::adj: return kAdjRules;
  case Pos::adv: return {};
  }
  return {};
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw LexiconError(LexiconError::Kind::missing_file, "missing WordNet file: " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return std::move(ss).str();
}

// Whitespace tokenizer over one record.
class Fields {
public:
  explicit Fields(std::string_view line) : rest_(line) {}

  std::optional<std::string_view> next() {
    while (!rest_.empty() && rest_.front() == ' ') rest_.remove_prefix(1);
    if (rest_.empty()) return std::nullopt;
    const auto end = rest_.find(' ');
    auto tok = rest_.substr(0, end);
    rest_.remove_prefix(end == std::string_view::npos ? rest_.size() : end);
    return tok;
  }

  std::string_view remainder() const { return rest_; }

private:
  std::string_view rest_;
};

template <typename Int>
std::optional<Int> parse_int(std::string_view s, int base = 10) {
  Int v{};
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v, base);
  if (ec != std::errc{} || p != s.data() + s.size()) return std::nullopt;
  return v;
}

template <typename Int>
std::optional<Int> next_int(Fields& f, int base = 10) {
  const auto tok = f.next();
  if (!tok) return std::nullopt;
  return parse_int<Int>(*tok, base);
}

std::optional<Pos> pos_from_letter(char c) {
  switch (c) {
  case 'n': return Pos::noun;
  case 'v': return Pos::verb;
  case 'a':
  case 's': return Pos::adj;
  case 'r': return Pos::adv;
  default: return std::nullopt;
  }
}

std::string normalise_lemma(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    if (c == ' ') c = '_';
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  return out;
}

template <typename Fn>
void for_each_record(const std::string& text, Fn&& fn) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    ++line_no;
    std::string_view line(text.data() + pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    pos = end + 1;
    // License preamble lines start with two spaces.
    if (line.empty() || line.front() == ' ') continue;
    fn(line, line_no);
  }
}

[[noreturn]] void malformed(const std::filesystem::path& file, std::size_t line_no, std::string_view why) {
  throw LexiconError(LexiconError::Kind::malformed_record,
                     file.filename().string() + ":" + std::to_string(line_no) + ": " + std::string(why));
}

} // namespace

char pos_letter(Pos p) {
  constexpr char letters[] = {'n', 'v', 'a', 'r'};
  return letters[static_cast<int>(p)];
}

std::string_view pos_name(Pos p) { return kPosFileSuffix[static_cast<int>(p)]; }

std::string SynsetId::str() const {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%c:%08u", pos_letter(pos), offset);
  return buf;
}

bool PosFilter::allows(Pos p) const {
  switch (p) {
  case Pos::noun: return noun;
  case Pos::verb: return verb;
  case Pos::adj: return adj;
  case Pos::adv: return adv;
  }
  return false;
}

void PosFilter::set(Pos p, bool on) {
  switch (p) {
  case Pos::noun: noun = on; break;
  case Pos::verb: verb = on; break;
  case Pos::adj: adj = on; break;
  case Pos::adv: adv = on; break;
  }
}

Lexicon Lexicon::load(const std::filesystem::path& dir) {
  Lexicon lex;

  for (Pos pos : kAllPos) {
    const auto file = dir / ("data." + std::string(pos_name(pos)));
    const std::string text = read_file(file);
    for_each_record(text, [&](std::string_view line, std::size_t line_no) {
      const auto bar = line.find(" | ");
      Fields f(line.substr(0, bar));
      Synset s;
      const auto offset = next_int<std::uint32_t>(f);
      if (!offset) malformed(file, line_no, "bad synset offset");
      s.id = {pos, *offset};
      f.next(); // lex_filenum
      const auto ss_type = f.next();
      if (!ss_type || ss_type->size() != 1 || pos_from_letter((*ss_type)[0]) != pos)
        malformed(file, line_no, "bad ss_type at offset " + std::to_string(*offset));
      const auto w_cnt = next_int<unsigned>(f, 16);
      if (!w_cnt || *w_cnt == 0) malformed(file, line_no, "bad w_cnt at offset " + std::to_string(*offset));
      for (unsigned i = 0; i < *w_cnt; ++i) {
        auto word = f.next();
        if (!word || !f.next()) malformed(file, line_no, "truncated word list at offset " + std::to_string(*offset));
        // Adjective syntactic markers: "galore(ip)".
        auto paren = word->find('(');
        s.words.emplace_back(word->substr(0, paren));
      }
      const auto p_cnt = next_int<unsigned>(f);
      if (!p_cnt) malformed(file, line_no, "bad p_cnt at offset " + std::to_string(*offset));
      for (unsigned i = 0; i < *p_cnt; ++i) {
        const auto symbol = f.next();
        const auto target = next_int<std::uint32_t>(f);
        const auto target_pos = f.next();
        const auto source_target = f.next();
        if (!symbol || !target || !target_pos || !source_target || target_pos->size() != 1)
          malformed(file, line_no, "bad pointer at offset " + std::to_string(*offset));
        if ((*symbol == "@" || *symbol == "@i") && (pos == Pos::noun || pos == Pos::verb)) {
          const auto tp = pos_from_letter((*target_pos)[0]);
          if (!tp) malformed(file, line_no, "bad pointer pos at offset " + std::to_string(*offset));
          s.hypernyms.push_back({*tp, *target});
        }
      }
      if (bar != std::string_view::npos) {
        auto gloss = line.substr(bar + 3);
        while (!gloss.empty() && gloss.back() == ' ') gloss.remove_suffix(1);
        s.gloss = std::string(gloss);
      }
      lex.by_id_.emplace(s.id, lex.synsets_.size());
      lex.synsets_.push_back(std::move(s));
    });
  }

  for (Pos pos : kAllPos) {
    const auto file = dir / ("index." + std::string(pos_name(pos)));
    const std::string text = read_file(file);
    auto& index = lex.index_[static_cast<int>(pos)];
    for_each_record(text, [&](std::string_view line, std::size_t line_no) {
      Fields f(line);
      const auto lemma = f.next();
      f.next(); // pos
      const auto synset_cnt = next_int<unsigned>(f);
      const auto p_cnt = next_int<unsigned>(f);
      if (!lemma || !synset_cnt || !p_cnt) malformed(file, line_no, "bad index header");
      for (unsigned i = 0; i < *p_cnt; ++i) f.next();
      f.next(); // sense_cnt
      f.next(); // tagsense_cnt
      std::vector<std::uint32_t> offsets;
      offsets.reserve(*synset_cnt);
      for (unsigned i = 0; i < *synset_cnt; ++i) {
        const auto off = next_int<std::uint32_t>(f);
        if (!off) malformed(file, line_no, "bad synset offset for '" + std::string(*lemma) + "'");
        if (!lex.by_id_.contains({pos, *off}))
          throw LexiconError(LexiconError::Kind::dangling_offset,
                             file.filename().string() + ":" + std::to_string(line_no) + ": '" + std::string(*lemma) +
                                 "' refers to missing synset " + SynsetId{pos, *off}.str());
        offsets.push_back(*off);
      }
      index.emplace(std::string(*lemma), std::move(offsets));
    });

    const auto exc_file = dir / (std::string(pos_name(pos)) + ".exc");
    if (std::filesystem::exists(exc_file)) {
      const std::string exc = read_file(exc_file);
      auto& exceptions = lex.exceptions_[static_cast<int>(pos)];
      for_each_record(exc, [&](std::string_view line, std::size_t) {
        Fields f(line);
        const auto inflected = f.next();
        if (!inflected) return;
        auto& bases = exceptions[std::string(*inflected)];
        while (auto base = f.next()) bases.emplace_back(*base);
      });
    }
  }

  for (const auto& s : lex.synsets_) {
    for (const auto& h : s.hypernyms) {
      if (!lex.by_id_.contains(h))
        throw LexiconError(LexiconError::Kind::dangling_offset,
                           "synset " + s.id.str() + " has hypernym pointer to missing synset " + h.str());
    }
  }

  // Depth = length of the shortest hypernym path to a root (root = 1), found
  // by breadth-first search down the hyponym edges from every root. WordNet
  // 3.0 has verb synsets whose hypernyms form a cycle with no root above it
  // (restrain/inhibit). Every ancestor of a synset left unreached is also
  // unreached, so climbing first hypernyms from it must revisit a node; that
  // cycle member becomes depth 1 for the component.
  std::vector<std::vector<std::size_t>> hyponyms(lex.synsets_.size());
  std::deque<std::size_t> queue;
  for (std::size_t i = 0; i < lex.synsets_.size(); ++i) {
    auto& s = lex.synsets_[i];
    if (s.id.pos != Pos::noun && s.id.pos != Pos::verb) continue;
    for (const auto& h : s.hypernyms) hyponyms[lex.by_id_.at(h)].push_back(i);
    if (s.hypernyms.empty()) {
      s.depth = 1;
      queue.push_back(i);
    }
  }
  auto drain = [&] {
    while (!queue.empty()) {
      const std::size_t i = queue.front();
      queue.pop_front();
      for (std::size_t child : hyponyms[i]) {
        if (lex.synsets_[child].depth == 0) {
          lex.synsets_[child].depth = lex.synsets_[i].depth + 1;
          queue.push_back(child);
        }
      }
    }
  };
  drain();
  for (std::size_t i = 0; i < lex.synsets_.size(); ++i) {
    auto& s = lex.synsets_[i];
    if ((s.id.pos != Pos::noun && s.id.pos != Pos::verb) || s.depth != 0) continue;
    std::vector<bool> seen(lex.synsets_.size(), false);
    std::size_t entry = i;
    while (!seen[entry]) {
      seen[entry] = true;
      entry = lex.by_id_.at(lex.synsets_[entry].hypernyms.front());
    }
    lex.synsets_[entry].depth = 1;
    queue.push_back(entry);
    drain();
  }
  return lex;
}

std::vector<std::string> Lexicon::morph(std::string_view word, Pos pos) const {
  const std::string w = normalise_lemma(word);
  const auto& index = index_[static_cast<int>(pos)];
  std::vector<std::string> forms;
  auto add = [&](std::string form) {
    if (index.contains(form) && std::find(forms.begin(), forms.end(), form) == forms.end())
      forms.push_back(std::move(form));
  };
  add(w);
  const auto& exceptions = exceptions_[static_cast<int>(pos)];
  if (auto it = exceptions.find(w); it != exceptions.end()) {
    for (const auto& base : it->second) add(base);
  }
  for (const auto& rule : rules_for(pos)) {
    if (w.size() > rule.from.size() && w.ends_with(rule.from)) {
      add(w.substr(0, w.size() - rule.from.size()) + std::string(rule.to));
    }
  }
  return forms;
}

std::vector<const Synset*> Lexicon::lookup(std::string_view lemma, PosFilter filter) const {
  std::vector<const Synset*> out;
  if (lemma.empty()) return out;
  for (Pos pos : kAllPos) {
    if (!filter.allows(pos)) continue;
    const auto& index = index_[static_cast<int>(pos)];
    for (const auto& form : morph(lemma, pos)) {
      for (std::uint32_t off : index.at(form)) {
        const Synset* s = &synsets_[by_id_.at({pos, off})];
        if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
      }
    }
  }
  return out;
}

const Synset* Lexicon::find(SynsetId id) const {
  auto it = by_id_.find(id);
  return it == by_id_.end() ? nullptr : &synsets_[it->second];
}

const Synset& Lexicon::at(SynsetId id) const {
  const Synset* s = find(id);
  if (!s) throw std::out_of_range("unknown synset " + id.str());
  return *s;
}

std::vector<std::pair<const Synset*, int>> Lexicon::hypernym_distances(const Synset& s) const {
  std::vector<std::pair<const Synset*, int>> out{{&s, 0}};
  std::unordered_set<const Synset*> seen{&s};
  for (std::size_t i = 0; i < out.size(); ++i) {
    const auto [node, dist] = out[i];
    for (const auto& h : node->hypernyms) {
      const Synset* parent = &at(h);
      if (seen.insert(parent).second) out.emplace_back(parent, dist + 1);
    }
  }
  return out;
}

std::vector<const Synset*> Lexicon::ancestors(const Synset& s) const {
  std::vector<const Synset*> out;
  for (const auto& [node, dist] : hypernym_distances(s)) out.push_back(node);
  return out;
}

double Lexicon::wu_palmer(const Synset& a, const Synset& b) const {
  if (a.id == b.id) return 1.0;
  if (a.depth == 0 || b.depth == 0 || a.id.pos != b.id.pos) return 0.0;
  std::unordered_map<const Synset*, int> up_a;
  for (const auto& [node, dist] : hypernym_distances(a)) up_a.emplace(node, dist);
  double best = 0.0;
  for (const auto& [node, dist_b] : hypernym_distances(b)) {
    auto it = up_a.find(node);
    if (it == up_a.end()) continue;
    const double lcs = node->depth;
    best = std::max(best, 2.0 * lcs / (2.0 * lcs + it->second + dist_b));
  }
  return best;
}

std::vector<const Synset*> Lexicon::synsets(Pos pos) const {
  std::vector<const Synset*> out;
  for (const auto& s : synsets_) {
    if (s.id.pos == pos) out.push_back(&s);
  }
  return out;
}

} // namespace wssim
