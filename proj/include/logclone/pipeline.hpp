#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "logclone/clone_index.hpp"
#include "logclone/corpus.hpp"
#include "logclone/level_var.hpp"
#include "logclone/location.hpp"
#include "logclone/lsd_model.hpp"
#include "logclone/lsd_suggest.hpp"
#include "logclone/metrics.hpp"
#include "logclone/split.hpp"

namespace logclone {

inline constexpr const char* kReportSchema = "logclone-report/1";

struct EvalConfig {
  // A JSONL corpus file or a directory of sources to ingest.
  std::filesystem::path corpus_path;
  IngestConfig ingest;
  SplitSpec split;
  CloneParams clone;
  LmParams lm;
  HybridParams hybrid;
  LocationOptions location;
  unsigned threads = 0;
};

struct DescriptionItem {
  MethodId target;
  SuggestionSource source = SuggestionSource::kCloneOnly;
  MethodId seed_clone;
  std::uint32_t seed_lps = 0;
  TokenSeq suggestion;
  TokenSeq reference;
  std::uint32_t reference_line = 0;
  std::array<double, 4> bleu{};  // BLEU-1..4
  RougeScore rouge1;
  RougeScore rouge_l;
  std::vector<PredictedVariable> variables;
};

// Macro means over the items of one suggestion source.
struct DescriptionAggregate {
  std::uint64_t items = 0;
  std::array<double, 4> bleu{};
  RougeScore rouge1;
  RougeScore rouge_l;
};

struct LevelItem {
  MethodId target;
  Level predicted = Level::kInfo;
  Level reference = Level::kInfo;
  LevelRule rule = LevelRule::kSingleClone;
  double support = 0.0;
  bool match = false;
};

struct EvalReport {
  EvalConfig config;
  std::uint64_t method_count = 0;
  std::uint64_t train_size = 0;
  std::uint64_t test_size = 0;
  std::uint64_t index_size = 0;
  LocationEvaluation location;

  // True when no test method is both logged and predicted needs_log.
  bool description_empty = true;
  std::uint64_t unscorable_targets = 0;  // logged targets whose LPSs carry no words
  std::vector<DescriptionItem> items;    // sorted by (target, source, seed_lps)
  DescriptionAggregate clone_only;
  DescriptionAggregate hybrid;

  std::vector<LevelItem> levels;
  std::optional<double> level_match_rate;
};

// Level votes for one seed LPS of the evidence clone. Every logged clone in
// the verdict votes with the level of its LPS whose description best matches
// the seed's (BLEU-4, earliest on ties), weighted by pair similarity.
std::vector<LevelVote> level_votes(const Corpus& corpus, const LocationVerdict& verdict,
                                   const LogPrintStatement& seed);

// Scores one suggestion; an empty candidate scores zero everywhere.
DescriptionItem score_suggestion(const TokenSeq& suggestion, const TokenSeq& reference);

DescriptionAggregate aggregate(const std::vector<DescriptionItem>& items, SuggestionSource source);

// Full experiment on an explicit split. The index holds train methods only.
EvalReport evaluate_split(const Corpus& corpus, const Split& split, const EvalConfig& config);

// Splits with config.split, then evaluate_split.
EvalReport evaluate_corpus(const Corpus& corpus, const EvalConfig& config);

// Loads (or ingests) config.corpus_path, then evaluate_corpus. Throws
// CorpusError when the corpus is missing.
EvalReport run_pipeline(const EvalConfig& config);

Corpus load_or_scan(const std::filesystem::path& path, const IngestConfig& ingest);

// JSON report. `timestamp` fills the generated_at field, the only field that
// may differ between two runs of the same configuration.
std::string report_to_json(const EvalReport& report, const std::string& timestamp);

// Several projects in one document with macro means across projects; an
// undefined per-project metric is left out of its mean.
std::string multi_report_to_json(const std::vector<EvalReport>& reports,
                                 const std::string& timestamp);

// Plain-text summary table.
std::string report_summary(const EvalReport& report);

}  // namespace logclone
