#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "logclone/clone_index.hpp"
#include "logclone/corpus.hpp"

namespace logclone {

enum class Verdict { kNeedsLog, kNoLog, kAbstain };
std::string_view to_string(Verdict verdict);

// How logged clones turn into a needs_log verdict.
enum class VoteRule {
  kAnyLogged,  // at least one logged clone
  kMajority,   // strictly more logged than unlogged clones
};

struct Evidence {
  MethodId clone;
  double similarity = 0.0;
};

struct LocationVerdict {
  MethodId target;
  Verdict verdict = Verdict::kNoLog;
  std::optional<Evidence> evidence;  // highest-similarity logged clone
  std::uint32_t logged_clone_count = 0;
  std::uint32_t unlogged_clone_count = 0;
  std::vector<ClonePair> clones;  // as returned by the index, best first
};

struct LocationOptions {
  VoteRule rule = VoteRule::kAnyLogged;
  // Query with the target's log-free bag whatever the index mode. Evaluation
  // sets this so the ground-truth logs never reach the detector.
  bool strip_target_logs = false;
};

// `train` is the corpus the index was built from; it supplies log presence of
// the retrieved clones.
LocationVerdict predict_location(const MethodDefinition& target, const CloneIndex& index,
                                 const Corpus& train, const LocationOptions& options = {});

struct ConfusionCounts {
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  std::uint64_t tn = 0;
  std::uint64_t fn = 0;

  std::uint64_t total() const { return tp + fp + tn + fn; }
  friend bool operator==(const ConfusionCounts&, const ConfusionCounts&) = default;
};

// nullopt marks an undefined value (zero denominator).
struct LocationMetrics {
  std::optional<double> precision;
  std::optional<double> recall;
  std::optional<double> f1;
  std::optional<double> balanced_accuracy;
};

LocationMetrics compute_metrics(const ConfusionCounts& counts);

struct LocationEvaluation {
  ConfusionCounts counts;
  LocationMetrics metrics;
  std::uint64_t abstained = 0;
  std::uint64_t index_size = 0;
  std::vector<LocationVerdict> verdicts;  // one per test method, in id order
};

// Builds the index over `train` only, queries every test method with its logs
// stripped and scores the verdict against log presence. Throws
// EvaluationError for an empty test set.
LocationEvaluation evaluate_location(const Corpus& corpus, std::span<const MethodId> train,
                                     std::span<const MethodId> test, const CloneParams& params,
                                     const LocationOptions& options = {}, unsigned threads = 0);

struct ConsistencyReport {
  std::uint64_t pair_count = 0;
  std::uint64_t presence_agreeing = 0;
  std::uint64_t both_logged = 0;
  std::uint64_t level_matching = 0;
  std::optional<double> presence_consistency;  // agreeing / pairs
  std::optional<double> level_match;           // equal level sets / both-logged pairs
  std::map<CloneType, std::uint64_t> band_counts;

  bool zero_pairs() const { return pair_count == 0; }
  std::optional<double> band_share(CloneType type) const;
};

ConsistencyReport consistency_report(const Corpus& corpus, std::span<const ClonePair> pairs);

}  // namespace logclone
