#include "cli.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

namespace wssim::cli {

namespace fs = std::filesystem;

namespace {

std::string full_precision(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

ParseOptions parse_options(const RunConfig& cfg) {
  ParseOptions o;
  o.max_depth = cfg.max_depth;
  return o;
}

ServiceDescription parse_or_throw(const fs::path& file, const RunConfig& cfg) {
  try {
    return parse_wsdl_file(file, parse_options(cfg));
  } catch (const WsdlError& e) {
    throw CliError(kInputError, file.string() + ": " + e.what());
  }
}

std::shared_ptr<const Lexicon> load_lexicon(const RunConfig& cfg) {
  const fs::path dir = resolve_wordnet_dir(cfg.wordnet_dir);
  try {
    return std::make_shared<const Lexicon>(Lexicon::load(dir));
  } catch (const LexiconError& e) {
    throw CliError(kEnvironmentError, std::string("cannot load WordNet: ") + e.what());
  }
}

// Runs fn(i) for i in [0, n) on up to `threads` workers.
template <typename Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  if (threads == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::jthread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

void write_output(const std::string& text, const std::optional<fs::path>& file, std::ostream& out) {
  if (!file) {
    out << text;
    return;
  }
  std::ofstream f(*file, std::ios::binary);
  if (!f) throw CliError(kInputError, "cannot write " + file->string());
  f << text;
}

template <typename Fn>
int guarded(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const CliError& e) {
    err << "wssim: " << e.what() << '\n';
    return e.code();
  } catch (const EvalError& e) {
    err << "wssim: " << e.what() << '\n';
    return kInputError;
  } catch (const std::invalid_argument& e) {
    err << "wssim: " << e.what() << '\n';
    return kInputError;
  } catch (const std::runtime_error& e) {
    err << "wssim: " << e.what() << '\n';
    return kInputError;
  }
}

} // namespace

fs::path resolve_wordnet_dir(const std::optional<fs::path>& flag) {
  fs::path dir;
  if (flag) {
    dir = *flag;
  } else if (const char* env = std::getenv("WSSIM_WORDNET_DIR"); env && *env) {
    dir = env;
  } else {
    throw CliError(kEnvironmentError, "WordNet directory not set (use --wordnet-dir or WSSIM_WORDNET_DIR)");
  }
  if (!fs::is_directory(dir)) throw CliError(kEnvironmentError, "WordNet directory not found: " + dir.string());
  return dir;
}

Session::Session(const RunConfig& cfg) : Session(load_lexicon(cfg), cfg) {}

Session::Session(std::shared_ptr<const Lexicon> lex, const RunConfig& cfg) : lex_(std::move(lex)) {
  if (cfg.stopword_file) {
    try {
      stopwords_ = StopwordList::load(*cfg.stopword_file);
    } catch (const std::runtime_error& e) {
      throw CliError(kInputError, e.what());
    }
  } else {
    stopwords_ = StopwordList::defaults();
  }
  SimilarityOptions options;
  options.weights = cfg.weights;
  options.wsd_overlap_threshold = cfg.wsd_overlap_threshold;
  sim_ = std::make_unique<Similarity>(*lex_, stopwords_, options);
}

std::vector<NamedService> load_corpus(const fs::path& dir, const ParseOptions& options, std::ostream& warn) {
  if (!fs::is_directory(dir)) throw CliError(kInputError, "not a directory: " + dir.string());
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".wsdl") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end(),
            [](const fs::path& a, const fs::path& b) { return a.filename() < b.filename(); });
  std::vector<NamedService> out;
  for (const auto& f : files) {
    try {
      out.push_back({f.stem().string(), f, parse_wsdl_file(f, options)});
    } catch (const WsdlError& e) {
      warn << "wssim: warning: skipping " << f.string() << ": " << e.what() << '\n';
    }
  }
  return out;
}

ScoreMatrix score_matrix(const std::vector<NamedService>& services, const Similarity& sim, unsigned parallelism) {
  const std::size_t n = services.size();
  ScoreMatrix m;
  for (const auto& s : services) m.ids.push_back(s.id);
  m.values.assign(n, std::vector<double>(n, 1.0));

  std::vector<PreparedService> prepared;
  prepared.reserve(n);
  for (const auto& s : services) prepared.push_back(sim.prepare(s.service));

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  }
  std::vector<double> scores(pairs.size());
  parallel_for(pairs.size(), parallelism, [&](std::size_t k) {
    scores[k] = sim.service_sim(prepared[pairs[k].first], prepared[pairs[k].second]);
  });
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const auto [i, j] = pairs[k];
    m.values[i][j] = m.values[j][i] = scores[k];
  }
  return m;
}

std::vector<RankEntry> rank_candidates(const ServiceDescription& target, const std::vector<NamedService>& candidates,
                                       const Similarity& sim, unsigned parallelism) {
  const PreparedService t = sim.prepare(target);
  std::vector<RankEntry> out(candidates.size());
  parallel_for(candidates.size(), parallelism, [&](std::size_t k) {
    out[k] = {candidates[k].id, candidates[k].file, sim.service_sim(t, sim.prepare(candidates[k].service))};
  });
  std::sort(out.begin(), out.end(), [](const RankEntry& a, const RankEntry& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.id < b.id;
  });
  return out;
}

std::string matrix_to_json(const ScoreMatrix& m) {
  nlohmann::ordered_json j;
  j["services"] = m.ids;
  j["matrix"] = m.values;
  return j.dump(2) + "\n";
}

std::string matrix_to_csv(const ScoreMatrix& m) {
  std::ostringstream out;
  out << "service";
  for (const auto& id : m.ids) out << ',' << id;
  out << '\n';
  for (std::size_t i = 0; i < m.ids.size(); ++i) {
    out << m.ids[i];
    for (double v : m.values[i]) out << ',' << full_precision(v);
    out << '\n';
  }
  return out.str();
}

std::string matrix_to_table(const ScoreMatrix& m) {
  std::size_t w = 7;
  for (const auto& id : m.ids) w = std::max(w, id.size());
  std::ostringstream out;
  char cell[64];
  std::snprintf(cell, sizeof cell, "%-*s", static_cast<int>(w), "");
  out << cell;
  for (const auto& id : m.ids) {
    std::snprintf(cell, sizeof cell, "  %*s", static_cast<int>(w), id.c_str());
    out << cell;
  }
  out << '\n';
  for (std::size_t i = 0; i < m.ids.size(); ++i) {
    std::snprintf(cell, sizeof cell, "%-*s", static_cast<int>(w), m.ids[i].c_str());
    out << cell;
    for (double v : m.values[i]) {
      std::snprintf(cell, sizeof cell, "  %*.4f", static_cast<int>(w), v);
      out << cell;
    }
    out << '\n';
  }
  return out.str();
}

int cmd_sim(const fs::path& a, const fs::path& b, const RunConfig& cfg, std::ostream& out, std::ostream& err,
            std::shared_ptr<const Lexicon> lex) {
  return guarded(err, [&] {
    const auto wa = parse_or_throw(a, cfg);
    const auto wb = parse_or_throw(b, cfg);
    Session session(lex ? lex : load_lexicon(cfg), cfg);
    const double score = session.similarity().service_sim(wa, wb);
    const auto bucket = bucket_name(bucketize(score));
    switch (cfg.format.value_or(Format::table)) {
    case Format::json: {
      nlohmann::ordered_json j{{"service_a", a.string()}, {"service_b", b.string()}, {"score", score}, {"bucket", bucket}};
      out << j.dump(2) << '\n';
      break;
    }
    case Format::csv:
      out << "service_a,service_b,score,bucket\n" << a.string() << ',' << b.string() << ',' << full_precision(score)
          << ',' << bucket << '\n';
      break;
    case Format::table: out << full_precision(score) << '\t' << bucket << '\n'; break;
    }
    return static_cast<int>(kOk);
  });
}

int cmd_matrix(const fs::path& dir, const std::optional<fs::path>& out_file, const RunConfig& cfg, std::ostream& out,
               std::ostream& err, std::shared_ptr<const Lexicon> lex) {
  return guarded(err, [&] {
    const auto services = load_corpus(dir, parse_options(cfg), err);
    if (services.size() < 2) throw CliError(kInputError, "need at least two parseable WSDL files in " + dir.string());
    Session session(lex ? lex : load_lexicon(cfg), cfg);
    const auto m = score_matrix(services, session.similarity(), cfg.parallelism);
    std::string text;
    switch (cfg.format.value_or(Format::json)) {
    case Format::json: text = matrix_to_json(m); break;
    case Format::csv: text = matrix_to_csv(m); break;
    case Format::table: text = matrix_to_table(m); break;
    }
    write_output(text, out_file, out);
    return static_cast<int>(kOk);
  });
}

int cmd_rank(const fs::path& target, const fs::path& dir, std::optional<std::size_t> top, const RunConfig& cfg,
             std::ostream& out, std::ostream& err, std::shared_ptr<const Lexicon> lex) {
  return guarded(err, [&] {
    const auto t = parse_or_throw(target, cfg);
    const auto candidates = load_corpus(dir, parse_options(cfg), err);
    if (candidates.empty()) throw CliError(kInputError, "no parseable candidate WSDL files in " + dir.string());
    Session session(lex ? lex : load_lexicon(cfg), cfg);
    auto ranked = rank_candidates(t, candidates, session.similarity(), cfg.parallelism);
    if (top && *top < ranked.size()) ranked.resize(*top);
    switch (cfg.format.value_or(Format::table)) {
    case Format::json: {
      nlohmann::ordered_json j = nlohmann::ordered_json::array();
      for (const auto& r : ranked)
        j.push_back({{"service", r.id}, {"file", r.file.string()}, {"score", r.score}, {"bucket", bucket_name(bucketize(r.score))}});
      out << j.dump(2) << '\n';
      break;
    }
    case Format::csv:
      out << "rank,service,score,bucket\n";
      for (std::size_t i = 0; i < ranked.size(); ++i)
        out << i + 1 << ',' << ranked[i].id << ',' << full_precision(ranked[i].score) << ','
            << bucket_name(bucketize(ranked[i].score)) << '\n';
      break;
    case Format::table:
      for (std::size_t i = 0; i < ranked.size(); ++i) {
        char line[256];
        std::snprintf(line, sizeof line, "%3zu  %-32s  %.6f  %s\n", i + 1, ranked[i].id.c_str(), ranked[i].score,
                      std::string(bucket_name(bucketize(ranked[i].score))).c_str());
        out << line;
      }
      break;
    }
    return static_cast<int>(kOk);
  });
}

namespace {

void emit_report(const EvalReport& report, const RunConfig& cfg, std::ostream& out) {
  switch (cfg.format.value_or(Format::json)) {
  case Format::json: out << report_to_json(report) << '\n'; break;
  case Format::csv: out << report_to_csv(report); break;
  case Format::table: out << report_to_table(report); break;
  }
}

} // namespace

int cmd_eval(const fs::path& dir, const fs::path& labels_file, double threshold, const RunConfig& cfg,
             std::ostream& out, std::ostream& err, std::shared_ptr<const Lexicon> lex) {
  return guarded(err, [&] {
    const auto labels = ExpertLabelSet::load(labels_file);
    if (labels.entries.empty()) throw EvalError(EvalError::Kind::empty_list, "empty label set");
    const auto services = load_corpus(dir, parse_options(cfg), err);
    auto find = [&](const std::string& id) -> const NamedService& {
      for (const auto& s : services) {
        if (s.id == id || s.file.filename().string() == id) return s;
      }
      throw EvalError(EvalError::Kind::unknown_service, "unknown service id '" + id + "'");
    };
    for (const auto& e : labels.entries) {
      find(e.service_a);
      find(e.service_b);
    }
    Session session(lex ? lex : load_lexicon(cfg), cfg);
    std::vector<double> scores(labels.entries.size());
    parallel_for(labels.entries.size(), cfg.parallelism, [&](std::size_t k) {
      const auto& e = labels.entries[k];
      scores[k] = session.similarity().service_sim(find(e.service_a).service, find(e.service_b).service);
    });
    ScoreTable table;
    for (std::size_t k = 0; k < scores.size(); ++k)
      table.emplace(ServicePair(labels.entries[k].service_a, labels.entries[k].service_b), scores[k]);
    ClassificationOptions options;
    options.threshold = threshold;
    emit_report(classification_report(labels, table, options), cfg, out);
    return static_cast<int>(kOk);
  });
}

int cmd_eval_replay(const fs::path& replay, double threshold, const RunConfig& cfg, std::ostream& out,
                    std::ostream& err) {
  return guarded(err, [&] {
    ClassificationOptions options;
    options.threshold = threshold;
    emit_report(replay_report(load_replay(replay), options), cfg, out);
    return static_cast<int>(kOk);
  });
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Similarity between WSDL-described web services"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string weights = "1,1,2";
  std::string format;
  std::string wordnet_dir, stopword_file;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--wordnet-dir", wordnet_dir, "WordNet 3.x dict directory (default: $WSSIM_WORDNET_DIR)");
    sub->add_option("--weights", weights, "input,output,name weights")->capture_default_str();
    sub->add_option("--stopwords", stopword_file, "stopword list, one word per line");
    sub->add_option("--wsd-threshold", cfg.wsd_overlap_threshold, "Jaro-Winkler threshold for Lesk overlap")
        ->capture_default_str();
    sub->add_option("--max-depth", cfg.max_depth, "parameter tree depth limit")->capture_default_str();
    sub->add_option("-j,--jobs", cfg.parallelism, "worker threads")->capture_default_str()->check(CLI::PositiveNumber);
    sub->add_option("--format", format, "json, csv or table")->check(CLI::IsMember({"json", "csv", "table"}));
  };

  std::string sim_a, sim_b;
  auto* sim = app.add_subcommand("sim", "similarity of two services");
  sim->add_option("a", sim_a, "first WSDL")->required();
  sim->add_option("b", sim_b, "second WSDL")->required();
  add_common(sim);

  std::string matrix_dir, matrix_out;
  auto* matrix = app.add_subcommand("matrix", "pairwise similarity of every WSDL in a directory");
  matrix->add_option("dir", matrix_dir, "directory of .wsdl files")->required();
  matrix->add_option("--out", matrix_out, "write the matrix to a file instead of stdout");
  add_common(matrix);

  std::string rank_target, rank_dir;
  std::size_t top = 0;
  auto* rank = app.add_subcommand("rank", "rank candidate services by similarity to a target");
  rank->add_option("target", rank_target, "target WSDL")->required();
  rank->add_option("dir", rank_dir, "directory of candidate .wsdl files")->required();
  rank->add_option("--top", top, "keep only the first K candidates");
  add_common(rank);

  std::string eval_dir, eval_labels, eval_replay;
  double eval_threshold = 0.5;
  auto* eval = app.add_subcommand("eval", "compare scores with expert labels");
  eval->add_option("dir", eval_dir, "directory of .wsdl files");
  eval->add_option("labels", eval_labels, "labels.csv (service_a,service_b,label)");
  eval->add_option("--replay", eval_replay, "replay.csv (service_a,service_b,score,label)");
  eval->add_option("--threshold", eval_threshold, "score threshold for binary precision/recall")->capture_default_str();
  add_common(eval);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "wssim: " << e.what() << '\n';
    return kInputError;
  }

  try {
    cfg.weights = Weights::parse(weights);
  } catch (const std::invalid_argument& e) {
    err << "wssim: --weights: " << e.what() << '\n';
    return kInputError;
  }
  if (!wordnet_dir.empty()) cfg.wordnet_dir = wordnet_dir;
  if (!stopword_file.empty()) cfg.stopword_file = stopword_file;
  if (format == "json") cfg.format = Format::json;
  else if (format == "csv") cfg.format = Format::csv;
  else if (format == "table") cfg.format = Format::table;

  if (*sim) return cmd_sim(sim_a, sim_b, cfg, out, err);
  if (*matrix)
    return cmd_matrix(matrix_dir, matrix_out.empty() ? std::nullopt : std::optional<fs::path>(matrix_out), cfg, out, err);
  if (*rank) return cmd_rank(rank_target, rank_dir, top ? std::optional<std::size_t>(top) : std::nullopt, cfg, out, err);
  if (*eval) {
    if (!eval_replay.empty()) {
      if (!eval_dir.empty()) {
        err << "wssim: eval: --replay takes no directory or labels argument\n";
        return kInputError;
      }
      return cmd_eval_replay(eval_replay, eval_threshold, cfg, out, err);
    }
    if (eval_dir.empty() || eval_labels.empty()) {
      err << "wssim: eval: expected DIR labels.csv or --replay replay.csv\n";
      return kInputError;
    }
    return cmd_eval(eval_dir, eval_labels, eval_threshold, cfg, out, err);
  }
  return kInputError;
}

} // namespace wssim::cli
