#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace wssim {

/// The five expert categories. Intervals are lower-inclusive and
/// upper-exclusive except the last: [0,.2) [.2,.5) [.5,.7) [.7,.9) [.9,1].
enum class Bucket { dissimilar, little_similar, averagely_similar, very_similar, identic };

inline constexpr Bucket kAllBuckets[] = {Bucket::dissimilar, Bucket::little_similar, Bucket::averagely_similar,
                                         Bucket::very_similar, Bucket::identic};

struct Interval {
  double lo;
  double hi;
};

Interval bucket_interval(Bucket b);
std::string_view bucket_name(Bucket b);

/// Accepts the canonical names and the spelled-out forms used in expert
/// sheets ("Averagely similar", "very-similar", "Identic"). Case-insensitive.
std::optional<Bucket> parse_bucket(std::string_view text);

class EvalError : public std::runtime_error {
public:
  enum class Kind { out_of_range, empty_list, missing_score, unknown_service, bad_input };

  EvalError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

private:
  Kind kind_;
};

/// Throws EvalError(out_of_range) unless 0 <= score <= 1.
Bucket bucketize(double score);

/// 0 inside the expert interval, else the distance to its nearest endpoint.
double pair_error(double score, Bucket expert);

/// Arithmetic mean. Throws EvalError(empty_list) on an empty list.
double domain_error(const std::vector<double>& errors);

/// Unordered service pair; constructor stores the ids sorted.
struct ServicePair {
  std::string a;
  std::string b;

  ServicePair() = default;
  ServicePair(std::string x, std::string y);
  friend bool operator==(const ServicePair&, const ServicePair&) = default;
  friend auto operator<=>(const ServicePair&, const ServicePair&) = default;
};

struct LabeledPair {
  std::string service_a;
  std::string service_b;
  Bucket label;
};

struct ExpertLabelSet {
  std::vector<LabeledPair> entries;

  /// labels.csv: header "service_a,service_b,label".
  static ExpertLabelSet load(const std::filesystem::path& file);
  static ExpertLabelSet parse(std::string_view csv);
};

struct ReplayRow {
  std::string service_a;
  std::string service_b;
  double score;
  Bucket label;
};

/// replay.csv: header "service_a,service_b,score,label".
std::vector<ReplayRow> load_replay(const std::filesystem::path& file);
std::vector<ReplayRow> parse_replay(std::string_view csv);

struct ClassificationOptions {
  double threshold = 0.5; ///< score >= threshold predicts "similar"
  std::vector<Bucket> positive_labels{Bucket::averagely_similar, Bucket::very_similar, Bucket::identic};
};

struct PairResult {
  std::string service_a;
  std::string service_b;
  double score;
  Bucket predicted;
  Bucket expert;
  double error;
};

struct EvalReport {
  std::vector<PairResult> per_pair;
  double domain_error = 0.0;
  double bucket_accuracy = 0.0;
  std::size_t true_positives = 0;
  std::size_t false_positives = 0;
  std::size_t false_negatives = 0;
  std::size_t true_negatives = 0;
  double precision = 1.0; ///< 1 when nothing is predicted positive
  double recall = 1.0;    ///< 1 when no expert label is positive
};

using ScoreTable = std::map<ServicePair, double>;

/// Throws EvalError(empty_list) for no labels, EvalError(missing_score)
/// when a labeled pair has no score.
EvalReport classification_report(const ExpertLabelSet& labels, const ScoreTable& scores,
                                 const ClassificationOptions& options = {});

/// Replay mode: scores and labels come from the same rows.
EvalReport replay_report(const std::vector<ReplayRow>& rows, const ClassificationOptions& options = {});

std::string report_to_json(const EvalReport& report, int indent = 2);
std::string report_to_table(const EvalReport& report);
std::string report_to_csv(const EvalReport& report);

} // namespace wssim
