#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "logclone/corpus.hpp"

namespace logclone {

enum class LevelRule { kSingleClone, kMajority, kSeverityTiebreak };
std::string_view to_string(LevelRule rule);

// One logged clone LPS voting for its level with the pair similarity as weight.
struct LevelVote {
  MethodId clone;
  double similarity = 0.0;
  Level level = Level::kInfo;
};

struct LevelPrediction {
  MethodId target;
  Level level = Level::kInfo;
  LevelRule rule = LevelRule::kSingleClone;
  double support = 0.0;  // chosen weight / total weight
};

// Similarity-weighted vote; equal weights go to the more severe level.
// Throws InvalidArgument on an empty vote list.
LevelPrediction predict_level(MethodId target, std::span<const LevelVote> votes);

enum class VariableProvenance { kMatchedInTarget, kCloneOnly };
std::string_view to_string(VariableProvenance provenance);

struct PredictedVariable {
  std::string name;
  VariableProvenance provenance = VariableProvenance::kCloneOnly;

  friend bool operator==(const PredictedVariable&, const PredictedVariable&) = default;
};

struct VariablePrediction {
  MethodId target;
  std::vector<PredictedVariable> variables;
};

inline constexpr double kMaxVariableDistance = 0.34;

// Levenshtein distance divided by the longer length.
double normalized_edit_distance(std::string_view a, std::string_view b);

// For every variable of the clone LPS: its base identifier if the target uses
// it, else the closest target identifier within kMaxVariableDistance, else the
// clone's expression flagged clone_only. Identifiers inside the target's own
// logging calls are ignored.
VariablePrediction predict_variables(const MethodDefinition& target,
                                     const LogPrintStatement& evidence);

}  // namespace logclone
