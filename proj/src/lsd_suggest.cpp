#include "logclone/lsd_suggest.hpp"

#include <algorithm>

#include "logclone/errors.hpp"
#include "logclone/token.hpp"

namespace logclone {
namespace {

TokenSeq description_or_var(const LogPrintStatement& lps) {
  if (lps.lsd_tokens.empty()) return {std::string(kVarToken)};
  return lps.lsd_tokens;
}

}  // namespace

std::string_view to_string(SuggestionSource source) {
  return source == SuggestionSource::kCloneOnly ? "clone_only" : "hybrid";
}

void HybridParams::validate() const {
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw InvalidArgument("lambda must lie in [0, 1]");
  if (k == 0) throw InvalidArgument("k must be positive");
  if (max_len == 0) throw InvalidArgument("max_len must be positive");
}

std::vector<TokenSeq> suggest_lsd_clone_only(const MethodDefinition& clone) {
  if (!clone.has_log()) {
    throw InvalidArgument("clone-only suggestion requested for an unlogged clone");
  }
  std::vector<TokenSeq> out;
  for (const auto& lps : clone.lps_list) out.push_back(description_or_var(lps));
  return out;
}

LsdSuggestion suggest_lsd_hybrid(MethodId target, MethodId clone, std::uint32_t clone_lps,
                                 const TokenSeq& clone_lsd, const LsdLanguageModel& model,
                                 const HybridParams& params) {
  params.validate();
  LsdSuggestion out;
  out.target = target;
  out.source = SuggestionSource::kHybrid;
  out.seed_clone = clone;
  out.seed_lps = clone_lps;

  std::vector<std::string> context(model.params().order - 1, std::string(kBos));
  for (std::size_t t = 0; t < params.max_len; ++t) {
    const bool exhausted = t >= clone_lsd.size();
    const std::string clone_token = exhausted ? std::string(kEos) : clone_lsd[t];
    const auto dist = model.distribution(context);
    auto top = dist;
    std::stable_sort(top.begin(), top.end(), [](const TokenProb& a, const TokenProb& b) {
      if (a.second != b.second) return a.second > b.second;
      return a.first < b.first;
    });
    if (top.size() > params.k) top.resize(params.k);
    if (exhausted && !top.empty() && top.front().second < params.tau) break;

    double clone_prob = 0.0;
    for (const auto& [tok, p] : dist) {
      if (tok == clone_token) {
        clone_prob = p;
        break;
      }
    }
    std::string best = clone_token;
    double best_score = params.lambda + (1.0 - params.lambda) * clone_prob;
    bool best_is_clone = true;
    for (const auto& [tok, p] : top) {
      if (tok == clone_token) continue;
      const double score = (1.0 - params.lambda) * p;
      if (score > best_score || (score == best_score && !best_is_clone && tok < best)) {
        best = tok;
        best_score = score;
        best_is_clone = false;
      }
    }
    if (best == kEos) break;
    out.tokens.push_back(best);
    out.per_token_scores.push_back(best_score);
    context.push_back(best);
  }
  return out;
}

std::vector<LsdSuggestion> suggest_lsd_hybrid(const MethodDefinition& target,
                                              const MethodDefinition& clone,
                                              const LsdLanguageModel& model,
                                              const HybridParams& params) {
  if (!clone.has_log()) throw InvalidArgument("hybrid suggestion requested for an unlogged clone");
  std::vector<LsdSuggestion> out;
  for (const auto& lps : clone.lps_list) {
    out.push_back(suggest_lsd_hybrid(target.method_id, clone.method_id, lps.lps_id,
                                     description_or_var(lps), model, params));
  }
  return out;
}

}  // namespace logclone
