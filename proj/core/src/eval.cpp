#include <wssim/eval.hpp>

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace wssim {

namespace {

constexpr Interval kIntervals[] = {{0.0, 0.2}, {0.2, 0.5}, {0.5, 0.7}, {0.7, 0.9}, {0.9, 1.0}};
constexpr std::string_view kNames[] = {"dissimilar", "little_similar", "averagely_similar", "very_similar", "identic"};

std::string read_all(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw EvalError(EvalError::Kind::bad_input, "cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return std::move(ss).str();
}

std::string trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return std::string(s);
}

// RFC 4180 subset: quoted fields with doubled quotes, no embedded newlines.
std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur.push_back('"');
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(trim(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  fields.push_back(trim(cur));
  return fields;
}

// Returns data rows (header validated and dropped).
std::vector<std::vector<std::string>> read_csv(std::string_view csv, const std::vector<std::string>& header) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in{std::string(csv)};
  std::string line;
  bool seen_header = false;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    auto fields = split_csv_line(line);
    if (!seen_header) {
      if (fields != header) {
        std::string expected;
        for (const auto& h : header) expected += (expected.empty() ? "" : ",") + h;
        throw EvalError(EvalError::Kind::bad_input, "expected CSV header '" + expected + "'");
      }
      seen_header = true;
      continue;
    }
    if (fields.size() != header.size())
      throw EvalError(EvalError::Kind::bad_input, "line " + std::to_string(line_no) + ": expected " +
                                                      std::to_string(header.size()) + " fields");
    rows.push_back(std::move(fields));
  }
  return rows;
}

Bucket require_bucket(const std::string& text) {
  auto b = parse_bucket(text);
  if (!b) throw EvalError(EvalError::Kind::bad_input, "unknown label '" + text + "'");
  return *b;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

} // namespace

Interval bucket_interval(Bucket b) { return kIntervals[static_cast<int>(b)]; }

std::string_view bucket_name(Bucket b) { return kNames[static_cast<int>(b)]; }

std::optional<Bucket> parse_bucket(std::string_view text) {
  std::string norm;
  for (char c : trim(text)) {
    if (c == ' ' || c == '-') c = '_';
    norm.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  if (norm == "identical") norm = "identic";
  for (Bucket b : kAllBuckets) {
    if (norm == bucket_name(b)) return b;
  }
  return std::nullopt;
}

Bucket bucketize(double score) {
  if (!(score >= 0.0 && score <= 1.0))
    throw EvalError(EvalError::Kind::out_of_range, "score " + format_double(score) + " outside [0,1]");
  for (Bucket b : kAllBuckets) {
    if (score < bucket_interval(b).hi) return b;
  }
  return Bucket::identic;
}

double pair_error(double score, Bucket expert) {
  const Interval iv = bucket_interval(expert);
  if (score < iv.lo) return iv.lo - score;
  if (score > iv.hi) return score - iv.hi;
  return 0.0;
}

double domain_error(const std::vector<double>& errors) {
  if (errors.empty()) throw EvalError(EvalError::Kind::empty_list, "domain_error: no pair errors");
  double sum = 0.0;
  for (double e : errors) sum += e;
  return sum / static_cast<double>(errors.size());
}

ServicePair::ServicePair(std::string x, std::string y) {
  if (y < x) std::swap(x, y);
  a = std::move(x);
  b = std::move(y);
}

ExpertLabelSet ExpertLabelSet::parse(std::string_view csv) {
  ExpertLabelSet set;
  std::set<ServicePair> seen;
  for (auto& row : read_csv(csv, {"service_a", "service_b", "label"})) {
    if (!seen.insert(ServicePair(row[0], row[1])).second)
      throw EvalError(EvalError::Kind::bad_input, "duplicate pair " + row[0] + "/" + row[1]);
    set.entries.push_back({row[0], row[1], require_bucket(row[2])});
  }
  return set;
}

ExpertLabelSet ExpertLabelSet::load(const std::filesystem::path& file) { return parse(read_all(file)); }

std::vector<ReplayRow> parse_replay(std::string_view csv) {
  std::vector<ReplayRow> out;
  for (auto& row : read_csv(csv, {"service_a", "service_b", "score", "label"})) {
    std::size_t used = 0;
    double score = 0.0;
    try {
      score = std::stod(row[2], &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != row[2].size()) throw EvalError(EvalError::Kind::bad_input, "bad score '" + row[2] + "'");
    out.push_back({row[0], row[1], score, require_bucket(row[3])});
  }
  return out;
}

std::vector<ReplayRow> load_replay(const std::filesystem::path& file) { return parse_replay(read_all(file)); }

namespace {

EvalReport build_report(const std::vector<ReplayRow>& rows, const ClassificationOptions& options) {
  if (rows.empty()) throw EvalError(EvalError::Kind::empty_list, "no labeled pairs");
  EvalReport r;
  std::vector<double> errors;
  std::size_t matches = 0;
  for (const auto& row : rows) {
    PairResult p{row.service_a, row.service_b, row.score, bucketize(row.score), row.label, pair_error(row.score, row.label)};
    errors.push_back(p.error);
    if (p.predicted == p.expert) ++matches;
    const bool predicted_pos = p.score >= options.threshold;
    const bool expert_pos = std::find(options.positive_labels.begin(), options.positive_labels.end(), p.expert) !=
                            options.positive_labels.end();
    if (predicted_pos && expert_pos) ++r.true_positives;
    else if (predicted_pos) ++r.false_positives;
    else if (expert_pos) ++r.false_negatives;
    else ++r.true_negatives;
    r.per_pair.push_back(std::move(p));
  }
  r.domain_error = domain_error(errors);
  r.bucket_accuracy = static_cast<double>(matches) / static_cast<double>(rows.size());
  const auto predicted = r.true_positives + r.false_positives;
  const auto relevant = r.true_positives + r.false_negatives;
  r.precision = predicted == 0 ? 1.0 : static_cast<double>(r.true_positives) / static_cast<double>(predicted);
  r.recall = relevant == 0 ? 1.0 : static_cast<double>(r.true_positives) / static_cast<double>(relevant);
  return r;
}

} // namespace

EvalReport classification_report(const ExpertLabelSet& labels, const ScoreTable& scores,
                                 const ClassificationOptions& options) {
  if (labels.entries.empty()) throw EvalError(EvalError::Kind::empty_list, "empty label set");
  std::vector<ReplayRow> rows;
  for (const auto& e : labels.entries) {
    auto it = scores.find(ServicePair(e.service_a, e.service_b));
    if (it == scores.end())
      throw EvalError(EvalError::Kind::missing_score, "no score for pair " + e.service_a + "/" + e.service_b);
    rows.push_back({e.service_a, e.service_b, it->second, e.label});
  }
  return build_report(rows, options);
}

EvalReport replay_report(const std::vector<ReplayRow>& rows, const ClassificationOptions& options) {
  return build_report(rows, options);
}

std::string report_to_json(const EvalReport& report, int indent) {
  nlohmann::ordered_json j;
  j["per_pair"] = nlohmann::ordered_json::array();
  for (const auto& p : report.per_pair) {
    j["per_pair"].push_back({{"service_a", p.service_a},
                             {"service_b", p.service_b},
                             {"score", p.score},
                             {"predicted", bucket_name(p.predicted)},
                             {"expert", bucket_name(p.expert)},
                             {"error", p.error}});
  }
  j["domain_error"] = report.domain_error;
  j["bucket_accuracy"] = report.bucket_accuracy;
  j["precision"] = report.precision;
  j["recall"] = report.recall;
  j["confusion"] = {{"tp", report.true_positives},
                    {"fp", report.false_positives},
                    {"fn", report.false_negatives},
                    {"tn", report.true_negatives}};
  return j.dump(indent);
}

std::string report_to_table(const EvalReport& report) {
  std::size_t wa = 9, wb = 9;
  for (const auto& p : report.per_pair) {
    wa = std::max(wa, p.service_a.size());
    wb = std::max(wb, p.service_b.size());
  }
  std::ostringstream out;
  char line[512];
  std::snprintf(line, sizeof line, "%-*s  %-*s  %-10s  %-17s  %-17s  %s\n", static_cast<int>(wa), "service_a",
                static_cast<int>(wb), "service_b", "score", "predicted", "expert", "error");
  out << line;
  for (const auto& p : report.per_pair) {
    std::snprintf(line, sizeof line, "%-*s  %-*s  %-10.6f  %-17s  %-17s  %.4f\n", static_cast<int>(wa),
                  p.service_a.c_str(), static_cast<int>(wb), p.service_b.c_str(), p.score,
                  std::string(bucket_name(p.predicted)).c_str(), std::string(bucket_name(p.expert)).c_str(), p.error);
    out << line;
  }
  std::snprintf(line, sizeof line, "domain_error     %.4f (%.2f%%)\nbucket_accuracy  %.4f\nprecision        %.4f\nrecall           %.4f\n",
                report.domain_error, 100.0 * report.domain_error, report.bucket_accuracy, report.precision,
                report.recall);
  out << line;
  return out.str();
}

std::string report_to_csv(const EvalReport& report) {
  std::ostringstream out;
  out << "service_a,service_b,score,predicted,expert,error\n";
  for (const auto& p : report.per_pair) {
    out << p.service_a << ',' << p.service_b << ',' << format_double(p.score) << ',' << bucket_name(p.predicted) << ','
        << bucket_name(p.expert) << ',' << format_double(p.error) << '\n';
  }
  return out.str();
}

} // namespace wssim
