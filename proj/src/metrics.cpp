#include "logclone/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "logclone/errors.hpp"

namespace logclone {
namespace {

std::map<TokenSeq, std::size_t> ngram_counts(const TokenSeq& tokens, std::size_t n) {
  std::map<TokenSeq, std::size_t> counts;
  if (tokens.size() < n) return counts;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    ++counts[TokenSeq(tokens.begin() + static_cast<std::ptrdiff_t>(i),
                      tokens.begin() + static_cast<std::ptrdiff_t>(i + n))];
  }
  return counts;
}

std::size_t clipped_overlap(const std::map<TokenSeq, std::size_t>& cand,
                            const std::map<TokenSeq, std::size_t>& ref) {
  std::size_t overlap = 0;
  for (const auto& [gram, count] : cand) {
    const auto it = ref.find(gram);
    if (it != ref.end()) overlap += std::min(count, it->second);
  }
  return overlap;
}

double harmonic(double p, double r) { return p + r > 0.0 ? 2.0 * p * r / (p + r) : 0.0; }

}  // namespace

double bleu(const TokenSeq& candidate, const TokenSeq& reference, int max_n) {
  if (reference.empty()) throw InvalidArgument("bleu: empty reference");
  if (max_n < 1) throw InvalidArgument("bleu: max_n must be >= 1");
  if (candidate.empty()) return 0.0;

  const std::size_t orders = std::min<std::size_t>(static_cast<std::size_t>(max_n), candidate.size());
  double log_sum = 0.0;
  for (std::size_t n = 1; n <= orders; ++n) {
    const auto cand = ngram_counts(candidate, n);
    const std::size_t total = candidate.size() - n + 1;
    const std::size_t matched = clipped_overlap(cand, ngram_counts(reference, n));
    double p = static_cast<double>(matched) / static_cast<double>(total);
    if (matched == 0) {
      if (n == 1) return 0.0;
      p = kBleuEpsilon;
    }
    log_sum += std::log(p) / static_cast<double>(orders);
  }
  const double c = static_cast<double>(candidate.size());
  const double r = static_cast<double>(reference.size());
  const double bp = c >= r ? 1.0 : std::exp(1.0 - r / c);
  return bp * std::exp(log_sum);
}

RougeScore rouge_n(const TokenSeq& candidate, const TokenSeq& reference, int n) {
  if (n < 1) throw InvalidArgument("rouge_n: n must be >= 1");
  const auto order = static_cast<std::size_t>(n);
  if (reference.size() < order) throw InvalidArgument("rouge_n: reference shorter than n");
  const auto cand = ngram_counts(candidate, order);
  const std::size_t overlap = clipped_overlap(cand, ngram_counts(reference, order));
  RougeScore s;
  s.recall = static_cast<double>(overlap) / static_cast<double>(reference.size() - order + 1);
  if (candidate.size() >= order) {
    s.precision = static_cast<double>(overlap) / static_cast<double>(candidate.size() - order + 1);
  }
  s.f1 = harmonic(s.precision, s.recall);
  return s;
}

std::size_t lcs_length(const TokenSeq& a, const TokenSeq& b) {
  std::vector<std::size_t> prev(b.size() + 1, 0);
  std::vector<std::size_t> cur(b.size() + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

RougeScore rouge_l(const TokenSeq& candidate, const TokenSeq& reference) {
  if (candidate.empty() || reference.empty()) throw InvalidArgument("rouge_l: empty sequence");
  const double l = static_cast<double>(lcs_length(candidate, reference));
  RougeScore s;
  s.recall = l / static_cast<double>(reference.size());
  s.precision = l / static_cast<double>(candidate.size());
  s.f1 = harmonic(s.precision, s.recall);
  return s;
}

}  // namespace logclone
