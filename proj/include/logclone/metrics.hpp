#pragma once

#include <string>
#include <vector>

namespace logclone {

using TokenSeq = std::vector<std::string>;

inline constexpr double kBleuEpsilon = 1e-9;

// Sentence-level BLEU: geometric mean of clipped n-gram precisions for
// n = 1..min(max_n, |candidate|) times the brevity penalty. A zero precision
// for n >= 2 is replaced by kBleuEpsilon; no unigram match scores 0.
// Throws InvalidArgument for an empty reference or max_n == 0.
double bleu(const TokenSeq& candidate, const TokenSeq& reference, int max_n = 4);

struct RougeScore {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

// Clipped n-gram overlap. Throws InvalidArgument if n < 1 or the reference
// has fewer than n tokens.
RougeScore rouge_n(const TokenSeq& candidate, const TokenSeq& reference, int n);

// Longest-common-subsequence ROUGE. Throws InvalidArgument on empty input.
RougeScore rouge_l(const TokenSeq& candidate, const TokenSeq& reference);

std::size_t lcs_length(const TokenSeq& a, const TokenSeq& b);

}  // namespace logclone
