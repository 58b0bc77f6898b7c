#pragma once

#include <cstdint>
#include <vector>

#include "logclone/corpus.hpp"

namespace logclone {

struct SplitSpec {
  double train_fraction = 0.8;
  std::uint64_t seed = 42;
};

struct Split {
  std::vector<MethodId> train;  // ascending
  std::vector<MethodId> test;   // ascending
};

// Seeded Fisher-Yates shuffle of the canonical method order driven by raw
// mt19937_64 output, so the partition is identical on every platform. The
// first ceil(fraction * N) shuffled methods form the training side. Throws
// EvaluationError if either side would be empty.
Split split_corpus(const Corpus& corpus, const SplitSpec& spec);

// Same partition over an arbitrary id list.
Split split_ids(std::vector<MethodId> ids, const SplitSpec& spec);

}  // namespace logclone
