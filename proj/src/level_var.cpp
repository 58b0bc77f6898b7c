#include "logclone/level_var.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

#include "logclone/errors.hpp"
#include "logclone/java_lexer.hpp"

namespace logclone {

std::string_view to_string(LevelRule rule) {
  switch (rule) {
    case LevelRule::kSingleClone: return "single_clone";
    case LevelRule::kMajority: return "majority";
    case LevelRule::kSeverityTiebreak: return "severity_tiebreak";
  }
  return "majority";
}

std::string_view to_string(VariableProvenance provenance) {
  return provenance == VariableProvenance::kMatchedInTarget ? "matched_in_target" : "clone_only";
}

LevelPrediction predict_level(MethodId target, std::span<const LevelVote> votes) {
  if (votes.empty()) throw InvalidArgument("level prediction needs at least one logged clone");
  LevelPrediction out;
  out.target = target;
  if (votes.size() == 1) {
    out.level = votes.front().level;
    out.rule = LevelRule::kSingleClone;
    out.support = 1.0;
    return out;
  }
  std::array<double, kAllLevels.size()> weight{};
  double total = 0.0;
  for (const auto& v : votes) {
    weight[static_cast<std::size_t>(v.level)] += v.similarity;
    total += v.similarity;
  }
  // Scan from most to least severe so a tie keeps the more severe level.
  constexpr double kTieTolerance = 1e-12;
  std::size_t best = kAllLevels.size() - 1;
  bool tied = false;
  for (std::size_t i = kAllLevels.size() - 1; i-- > 0;) {
    if (weight[i] > weight[best] + kTieTolerance) {
      best = i;
      tied = false;
    } else if (weight[i] > 0.0 && std::abs(weight[i] - weight[best]) <= kTieTolerance) {
      tied = true;
    }
  }
  out.level = kAllLevels[best];
  out.rule = tied ? LevelRule::kSeverityTiebreak : LevelRule::kMajority;
  out.support = total > 0.0 ? weight[best] / total : 0.0;
  return out;
}

double normalized_edit_distance(std::string_view a, std::string_view b) {
  if (a.empty() && b.empty()) return 0.0;
  std::vector<std::size_t> row(b.size() + 1);
  std::iota(row.begin(), row.end(), 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t up = row[j];
      row[j] = std::min({row[j] + 1, row[j - 1] + 1, diag + (a[i - 1] == b[j - 1] ? 0 : 1)});
      diag = up;
    }
  }
  return static_cast<double>(row[b.size()]) / static_cast<double>(std::max(a.size(), b.size()));
}

VariablePrediction predict_variables(const MethodDefinition& target,
                                     const LogPrintStatement& evidence) {
  VariablePrediction out;
  out.target = target.method_id;
  std::vector<std::string> identifiers;
  for (auto& id : identifiers_outside_logs(target)) {
    if (std::find(identifiers.begin(), identifiers.end(), id) == identifiers.end()) {
      identifiers.push_back(std::move(id));
    }
  }
  for (const auto& expr : evidence.variables) {
    const auto tokens = lex_java(expr).tokens;
    const auto base = std::find_if(tokens.begin(), tokens.end(),
                                   [](const Token& t) { return t.is_identifier(); });
    if (base == tokens.end()) {
      out.variables.push_back({expr, VariableProvenance::kCloneOnly});
      continue;
    }
    if (std::find(identifiers.begin(), identifiers.end(), base->text) != identifiers.end()) {
      out.variables.push_back({base->text, VariableProvenance::kMatchedInTarget});
      continue;
    }
    const std::string* closest = nullptr;
    double closest_distance = kMaxVariableDistance;
    for (const auto& id : identifiers) {
      const double d = normalized_edit_distance(base->text, id);
      if (d < closest_distance || (closest == nullptr && d <= closest_distance)) {
        closest = &id;
        closest_distance = d;
      }
    }
    if (closest != nullptr) {
      out.variables.push_back({*closest, VariableProvenance::kMatchedInTarget});
    } else {
      out.variables.push_back({base->text, VariableProvenance::kCloneOnly});
    }
  }
  return out;
}

}  // namespace logclone
