#include <wssim/text.hpp>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <stdexcept>

namespace wssim {

namespace {

enum class CharClass { separator, lower, upper, digit };

CharClass classify(char c) {
  const auto u = static_cast<unsigned char>(c);
  if (std::islower(u)) return CharClass::lower;
  if (std::isupper(u)) return CharClass::upper;
  if (std::isdigit(u)) return CharClass::digit;
  return CharClass::separator;
}

std::string lowercase(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

// Keep in sync with core/data/stopwords.txt (a unit test compares them).
constexpr const char* kDefaultStopwords[] = {
    "the",  "of",   "to",    "and",  "a",    "in",    "is",    "it",    "you",  "that",
    "he",   "was",  "for",   "on",   "are",  "with",  "as",    "i",     "his",  "they",
    "be",   "at",   "this",  "have", "from", "or",    "had",   "by",    "but",  "not",
    "what", "all",  "were",  "we",   "when", "your",  "can",   "said",  "there", "an",
    "each", "which", "she",  "do",   "how",  "their", "if",    "will",  "so",   "its"};

} // namespace

TokenList tokenize_identifier(std::string_view s) {
  TokenList out;
  std::size_t i = 0;
  const std::size_t n = s.size();
  while (i < n) {
    if (classify(s[i]) == CharClass::separator) {
      ++i;
      continue;
    }
    std::size_t j = i + 1;
    const CharClass start = classify(s[i]);
    if (start == CharClass::digit) {
      while (j < n && classify(s[j]) == CharClass::digit) ++j;
    } else if (start == CharClass::lower) {
      while (j < n && classify(s[j]) == CharClass::lower) ++j;
    } else {
      // Upper: either a capitalised word ("Weather") or an acronym run
      // ("HTTP" in "HTTPResponse", where the last capital starts the next word).
      if (j < n && classify(s[j]) == CharClass::lower) {
        while (j < n && classify(s[j]) == CharClass::lower) ++j;
      } else {
        while (j < n && classify(s[j]) == CharClass::upper) ++j;
        if (j < n && classify(s[j]) == CharClass::lower && j - i > 1) --j;
      }
    }
    out.push_back(lowercase(s.substr(i, j - i)));
    i = j;
  }
  return out;
}

TokenList tokenize_text(std::string_view s) {
  TokenList out;
  std::string cur;
  for (char c : s) {
    if (classify(c) == CharClass::separator) {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

double jaro(std::string_view a, std::string_view b) {
  if (a.empty() && b.empty()) return 1.0;
  if (a.empty() || b.empty()) return 0.0;
  // Greedy matching depends on argument order; canonicalise so that
  // jaro(a,b) and jaro(b,a) are bit-identical.
  if (b < a) std::swap(a, b);

  const std::size_t la = a.size();
  const std::size_t lb = b.size();
  const std::size_t longest = std::max(la, lb);
  const std::size_t window = longest / 2 > 0 ? longest / 2 - 1 : 0;

  std::vector<bool> a_matched(la, false);
  std::vector<bool> b_matched(lb, false);
  std::size_t matches = 0;
  for (std::size_t i = 0; i < la; ++i) {
    const std::size_t lo = i > window ? i - window : 0;
    const std::size_t hi = std::min(lb, i + window + 1);
    for (std::size_t j = lo; j < hi; ++j) {
      if (!b_matched[j] && a[i] == b[j]) {
        a_matched[i] = b_matched[j] = true;
        ++matches;
        break;
      }
    }
  }
  if (matches == 0) return 0.0;

  std::size_t out_of_order = 0;
  for (std::size_t i = 0, k = 0; i < la; ++i) {
    if (!a_matched[i]) continue;
    while (!b_matched[k]) ++k;
    if (a[i] != b[k]) ++out_of_order;
    ++k;
  }
  const double m = static_cast<double>(matches);
  const double t = static_cast<double>(out_of_order) / 2.0;
  return (m / static_cast<double>(la) + m / static_cast<double>(lb) + (m - t) / m) / 3.0;
}

double jaro_winkler(std::string_view a, std::string_view b) {
  const double j = jaro(a, b);
  std::size_t prefix = 0;
  const std::size_t cap = std::min({a.size(), b.size(), kWinklerPrefixCap});
  while (prefix < cap && a[prefix] == b[prefix]) ++prefix;
  return j + static_cast<double>(prefix) * kWinklerPrefixScale * (1.0 - j);
}

const StopwordList& StopwordList::defaults() {
  static const StopwordList list{
      std::set<std::string, std::less<>>(std::begin(kDefaultStopwords), std::end(kDefaultStopwords))};
  return list;
}

StopwordList StopwordList::load(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot read stopword file: " + file.string());
  std::set<std::string, std::less<>> words;
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) line.pop_back();
    std::size_t start = 0;
    while (start < line.size() && std::isspace(static_cast<unsigned char>(line[start]))) ++start;
    line.erase(0, start);
    if (line.empty() || line.front() == '#') continue;
    words.insert(lowercase(line));
  }
  return StopwordList{std::move(words)};
}

TokenList remove_stopwords(const TokenList& tokens, const StopwordList& sw) {
  TokenList out;
  out.reserve(tokens.size());
  std::copy_if(tokens.begin(), tokens.end(), std::back_inserter(out),
               [&](const std::string& t) { return !sw.contains(t); });
  return out;
}

} // namespace wssim
