#pragma once

#include <filesystem>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace wssim {

/// Ordered list of lowercase alphanumeric tokens.
using TokenList = std::vector<std::string>;

/// Splits an identifier into lowercase words.
///
/// Boundaries are non-alphanumeric separators, lower-to-upper case changes
/// ("getWeather"), the end of an upper-case run that is followed by a
/// lower-case letter ("HTTPResponse" -> http, response) and letter/digit
/// changes ("user_id2" -> user, id, 2).
TokenList tokenize_identifier(std::string_view s);

/// Splits free text (glosses, descriptions) on anything that is not a
/// letter or digit. No camelCase handling; lowercases every token.
TokenList tokenize_text(std::string_view s);

/// Jaro similarity in [0,1]. Both empty -> 1, exactly one empty -> 0.
double jaro(std::string_view a, std::string_view b);

/// Jaro-Winkler similarity with prefix scale 0.1 and a prefix cap of 4.
double jaro_winkler(std::string_view a, std::string_view b);

inline constexpr double kWinklerPrefixScale = 0.1;
inline constexpr std::size_t kWinklerPrefixCap = 4;

class StopwordList {
public:
  StopwordList() = default;
  explicit StopwordList(std::set<std::string, std::less<>> words) : words_(std::move(words)) {}

  /// The built-in 50-word list (identical to core/data/stopwords.txt).
  static const StopwordList& defaults();

  /// One lowercase word per line. Blank lines and lines starting with '#'
  /// are skipped. Throws std::runtime_error if the file cannot be read.
  static StopwordList load(const std::filesystem::path& file);

  bool contains(std::string_view w) const { return words_.find(w) != words_.end(); }
  std::size_t size() const { return words_.size(); }
  const std::set<std::string, std::less<>>& words() const { return words_; }

private:
  std::set<std::string, std::less<>> words_;
};

/// Order-preserving removal of every token found in `sw`.
TokenList remove_stopwords(const TokenList& tokens, const StopwordList& sw);

} // namespace wssim
