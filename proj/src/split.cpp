#include "logclone/split.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "logclone/errors.hpp"

namespace logclone {
namespace {

// Unbiased draw from [0, bound) by rejection.
std::uint64_t bounded(std::mt19937_64& gen, std::uint64_t bound) {
  const std::uint64_t threshold = (0 - bound) % bound;
  while (true) {
    const std::uint64_t r = gen();
    if (r >= threshold) return r % bound;
  }
}

}  // namespace

Split split_ids(std::vector<MethodId> ids, const SplitSpec& spec) {
  if (!(spec.train_fraction > 0.0 && spec.train_fraction < 1.0)) {
    throw EvaluationError("train fraction must lie strictly between 0 and 1");
  }
  std::sort(ids.begin(), ids.end());
  const std::size_t n = ids.size();
  // The small slack keeps products like 0.7 * 10 from rounding up to 8.
  const auto train_size =
      static_cast<std::size_t>(std::ceil(spec.train_fraction * static_cast<double>(n) - 1e-9));
  if (n == 0 || train_size == 0 || train_size >= n) {
    throw EvaluationError("split of " + std::to_string(n) + " methods leaves an empty side");
  }
  std::mt19937_64 gen(spec.seed);
  for (std::size_t i = n; i > 1; --i) {
    std::swap(ids[i - 1], ids[bounded(gen, i)]);
  }
  Split split;
  split.train.assign(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(train_size));
  split.test.assign(ids.begin() + static_cast<std::ptrdiff_t>(train_size), ids.end());
  std::sort(split.train.begin(), split.train.end());
  std::sort(split.test.begin(), split.test.end());
  return split;
}

Split split_corpus(const Corpus& corpus, const SplitSpec& spec) {
  std::vector<MethodId> ids;
  ids.reserve(corpus.methods.size());
  for (const auto& m : corpus.methods) ids.push_back(m.method_id);
  return split_ids(std::move(ids), spec);
}

}  // namespace logclone
