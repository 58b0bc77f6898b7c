#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "logclone/metrics.hpp"

namespace logclone {

inline constexpr std::string_view kBos = "<s>";
inline constexpr std::string_view kEos = "</s>";
inline constexpr std::string_view kUnk = "<unk>";

struct LmParams {
  std::uint32_t order = 3;
  double add_k = 0.01;
  double backoff_weight = 0.4;

  void validate() const;
  friend bool operator==(const LmParams&, const LmParams&) = default;
};

using TokenProb = std::pair<std::string, double>;

// N-gram model over log descriptions. Scores come from the longest observed
// context, multiplied by backoff_weight for every level dropped, with add-k
// smoothing at the unigram level; scores are then normalized over the
// vocabulary so each next-token distribution sums to 1. `<s>` never receives
// mass. A context is looked up verbatim first and, if never observed, with
// the tokens seen at most once in training read as `<unk>`.
class LsdLanguageModel {
 public:
  LsdLanguageModel() = default;

  const LmParams& params() const { return params_; }
  // True when trained on no sequences; such a model always predicts `</s>`.
  bool empty() const { return empty_; }
  // Sorted; always contains <s>, </s>, <var> and <unk>.
  const std::vector<std::string>& vocabulary() const { return vocabulary_; }
  bool in_vocabulary(std::string_view token) const;

  // Full distribution for the next token, sorted by token.
  std::vector<TokenProb> distribution(std::span<const std::string> context) const;
  double probability(std::span<const std::string> context, std::string_view token) const;

  std::string to_json() const;
  static LsdLanguageModel from_json(std::string_view text);

  friend bool operator==(const LsdLanguageModel&, const LsdLanguageModel&) = default;

 private:
  friend LsdLanguageModel train_lsd_lm(std::span<const TokenSeq>, const LmParams&);

  struct Table {
    std::uint64_t total = 0;
    std::map<std::string, std::uint64_t, std::less<>> next;

    friend bool operator==(const Table&, const Table&) = default;
  };

  std::string context_token(const std::string& token) const;
  double raw_score(std::span<const Table* const> tables, std::string_view token,
                   std::size_t longest) const;

  LmParams params_;
  bool empty_ = true;
  std::vector<std::string> vocabulary_;
  std::map<std::string, std::uint64_t, std::less<>> frequency_;
  // counts_[n] maps a context of n tokens (joined by '\x1f') to next-token
  // counts. Contexts holding rare tokens are counted verbatim and again in
  // their <unk> form.
  std::vector<std::map<std::string, Table, std::less<>>> counts_;
};

// Sequences are padded with order-1 `<s>` and one `</s>`. Training sequences
// should come from one project's training split only.
LsdLanguageModel train_lsd_lm(std::span<const TokenSeq> sequences, const LmParams& params = {});

// Top-k of the next-token distribution, by probability descending then token.
std::vector<TokenProb> next_token_distribution(const LsdLanguageModel& model,
                                               std::span<const std::string> context,
                                               std::size_t k);

}  // namespace logclone
