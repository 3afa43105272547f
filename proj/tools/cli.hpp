#pragma once

#include <wssim/eval.hpp>
#include <wssim/lexicon.hpp>
#include <wssim/similarity.hpp>
#include <wssim/text.hpp>
#include <wssim/wsdl_model.hpp>

#include <filesystem>
#include <iosfwd>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace wssim::cli {

enum ExitCode : int { kOk = 0, kInputError = 2, kEnvironmentError = 3 };

enum class Format { json, csv, table };

/// Carries the process exit code for a failed command.
class CliError : public std::runtime_error {
public:
  CliError(int code, const std::string& what) : std::runtime_error(what), code_(code) {}
  int code() const noexcept { return code_; }

private:
  int code_;
};

struct RunConfig {
  std::optional<std::filesystem::path> wordnet_dir;
  std::optional<std::filesystem::path> stopword_file;
  Weights weights;
  double wsd_overlap_threshold = kDefaultOverlapThreshold;
  std::size_t max_depth = 16;
  unsigned parallelism = 1;
  std::optional<Format> format;
};

/// Flag, then $WSSIM_WORDNET_DIR. Throws CliError(kEnvironmentError).
std::filesystem::path resolve_wordnet_dir(const std::optional<std::filesystem::path>& flag);

/// Loaded lexicon, stopwords and the similarity engine for one run.
class Session {
public:
  explicit Session(const RunConfig& cfg);
  Session(std::shared_ptr<const Lexicon> lex, const RunConfig& cfg);

  const Similarity& similarity() const { return *sim_; }
  const Lexicon& lexicon() const { return *lex_; }

private:
  std::shared_ptr<const Lexicon> lex_;
  StopwordList stopwords_;
  std::unique_ptr<Similarity> sim_;
};

struct NamedService {
  std::string id;          ///< file stem
  std::filesystem::path file;
  ServiceDescription service;
};

/// Parses every *.wsdl file in `dir`, sorted by file name. Unparseable files
/// are reported on `warn` and skipped.
std::vector<NamedService> load_corpus(const std::filesystem::path& dir, const ParseOptions& options, std::ostream& warn);

struct ScoreMatrix {
  std::vector<std::string> ids;
  std::vector<std::vector<double>> values;
};

/// Symmetric matrix with unit diagonal. Pairs are scored on `parallelism`
/// threads; each result goes to a fixed slot so output does not depend on
/// scheduling.
ScoreMatrix score_matrix(const std::vector<NamedService>& services, const Similarity& sim, unsigned parallelism);

struct RankEntry {
  std::string id;
  std::filesystem::path file;
  double score;
};

/// Candidates by descending similarity to `target`; ties broken by id.
std::vector<RankEntry> rank_candidates(const ServiceDescription& target, const std::vector<NamedService>& candidates,
                                       const Similarity& sim, unsigned parallelism);

int cmd_sim(const std::filesystem::path& a, const std::filesystem::path& b, const RunConfig& cfg, std::ostream& out,
            std::ostream& err, std::shared_ptr<const Lexicon> lex = nullptr);
int cmd_matrix(const std::filesystem::path& dir, const std::optional<std::filesystem::path>& out_file,
               const RunConfig& cfg, std::ostream& out, std::ostream& err, std::shared_ptr<const Lexicon> lex = nullptr);
int cmd_rank(const std::filesystem::path& target, const std::filesystem::path& dir, std::optional<std::size_t> top,
             const RunConfig& cfg, std::ostream& out, std::ostream& err, std::shared_ptr<const Lexicon> lex = nullptr);
int cmd_eval(const std::filesystem::path& dir, const std::filesystem::path& labels, double threshold,
             const RunConfig& cfg, std::ostream& out, std::ostream& err, std::shared_ptr<const Lexicon> lex = nullptr);
int cmd_eval_replay(const std::filesystem::path& replay, double threshold, const RunConfig& cfg, std::ostream& out,
                    std::ostream& err);

std::string matrix_to_json(const ScoreMatrix& m);
std::string matrix_to_csv(const ScoreMatrix& m);
std::string matrix_to_table(const ScoreMatrix& m);

/// Full command line: `wssim <sim|matrix|rank|eval> ...`. Returns the exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace wssim::cli
