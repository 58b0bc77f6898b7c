#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "logclone/corpus.hpp"
#include "logclone/lsd_model.hpp"
#include "logclone/metrics.hpp"

namespace logclone {

enum class SuggestionSource { kCloneOnly, kHybrid };
std::string_view to_string(SuggestionSource source);

struct HybridParams {
  // Weight of the clone-indicator feature. At 0.5 or above the clone token can
  // never be outscored, so the default sits below it.
  double lambda = 0.3;
  std::size_t k = 5;
  double tau = 0.0;
  std::size_t max_len = 32;

  void validate() const;
};

struct LsdSuggestion {
  MethodId target;
  TokenSeq tokens;
  SuggestionSource source = SuggestionSource::kCloneOnly;
  MethodId seed_clone;
  std::uint32_t seed_lps = 0;  // lps_id within the seed clone
  std::vector<double> per_token_scores;
};

// The clone's descriptions verbatim, one per LPS in line order. A description
// without words becomes [<var>]. Throws InvalidArgument for an unlogged clone.
std::vector<TokenSeq> suggest_lsd_clone_only(const MethodDefinition& clone);

// Left-to-right generation. At position t the candidates are the clone token
// at t (`</s>` once the clone description is used up) and the model's top-k;
// a candidate scores lambda * [is clone token] + (1 - lambda) * P(token).
// Ties go to the clone token, then to the lexicographically smaller token.
LsdSuggestion suggest_lsd_hybrid(MethodId target, MethodId clone, std::uint32_t clone_lps,
                                 const TokenSeq& clone_lsd, const LsdLanguageModel& model,
                                 const HybridParams& params = {});

// One hybrid suggestion per LPS of the clone, in line order.
std::vector<LsdSuggestion> suggest_lsd_hybrid(const MethodDefinition& target,
                                              const MethodDefinition& clone,
                                              const LsdLanguageModel& model,
                                              const HybridParams& params = {});

}  // namespace logclone
