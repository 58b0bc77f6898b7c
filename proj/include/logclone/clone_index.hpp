#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "logclone/corpus.hpp"

namespace logclone {

// log_aware is LACCP: bags exclude every token of every logging call.
enum class DetectionMode { kLogAware, kLogUnaware };

std::string_view to_string(DetectionMode mode);
std::optional<DetectionMode> parse_detection_mode(std::string_view text);
TokenizeMode bag_mode(DetectionMode mode);

struct CloneParams {
  double theta = 0.7;
  DetectionMode mode = DetectionMode::kLogAware;
  std::uint32_t min_bag_size = 10;

  // Throws InvalidArgument unless 0 < theta <= 1 and min_bag_size > 0.
  void validate() const;
};

// T3 and T4 are reported as one band: token overlap cannot tell them apart.
enum class CloneType { kT1, kT2, kT34 };

std::string_view to_string(CloneType type);
std::optional<CloneType> parse_clone_type(std::string_view text);

struct ClonePair {
  MethodId left;   // left < right
  MethodId right;
  double similarity = 0.0;
  CloneType clone_type = CloneType::kT34;

  MethodId other(MethodId self) const { return self == left ? right : left; }

  friend bool operator==(const ClonePair&, const ClonePair&) = default;
};

// |A ∩ B| / max(|A|, |B|) for multisets; nullopt when either bag is empty.
std::optional<double> similarity(const TokenBag& a, const TokenBag& b);

// Exact-text and identifier/literal-blind renderings of a method's token
// sequence. Equal exact keys mean T1, equal shape keys mean T2.
struct CloneKeys {
  std::string exact;
  std::string shape;
};
CloneKeys clone_keys(const MethodDefinition& method);
CloneType classify_keys(const CloneKeys& a, const CloneKeys& b);

CloneType classify_clone_type(const ClonePair& pair, const Corpus& corpus);

struct CloneQuery {
  enum class Status { kOk, kAbstain };
  Status status = Status::kOk;
  // Sorted by similarity descending, then by the matched method's id.
  std::vector<ClonePair> pairs;

  bool abstained() const { return status == Status::kAbstain; }
};

// Inverted index from token to postings over method bags. Immutable after
// build; queries are const and may run concurrently.
class CloneIndex {
 public:
  CloneIndex() = default;

  const CloneParams& params() const { return params_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  bool contains(MethodId id) const;
  std::vector<MethodId> members() const;

  // Clones of an arbitrary bag. `self` (if any) is never reported.
  CloneQuery query(const TokenBag& bag, const CloneKeys& keys,
                   std::optional<MethodId> self = std::nullopt) const;

  // Every pair of indexed methods with similarity >= theta, canonical and
  // sorted by (left, right).
  std::vector<ClonePair> all_pairs() const;

  // Deterministic JSON rendering of the whole index.
  std::string serialize() const;

 private:
  struct Entry {
    MethodId id;
    std::uint64_t size = 0;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> bag;  // (token id, count)
    CloneKeys keys;
  };
  struct Posting {
    std::uint32_t entry = 0;
    std::uint32_t count = 0;
  };

  friend CloneIndex build_index(const Corpus&, const CloneParams&, std::span<const MethodId>);

  std::vector<std::pair<std::uint32_t, std::uint32_t>> encode(const TokenBag& bag) const;
  std::vector<ClonePair> collect(std::span<const std::pair<std::uint32_t, std::uint32_t>> bag,
                                 std::uint64_t size, MethodId self_id, bool have_self,
                                 const CloneKeys& keys, bool only_greater) const;

  CloneParams params_;
  std::vector<std::string> vocabulary_;  // sorted; token id = position
  std::vector<Entry> entries_;           // sorted by id
  std::vector<std::vector<Posting>> postings_;
};

// Index over the listed corpus methods whose bag size reaches
// params.min_bag_size. The two-argument form indexes the whole corpus.
CloneIndex build_index(const Corpus& corpus, const CloneParams& params,
                       std::span<const MethodId> members);
CloneIndex build_index(const Corpus& corpus, const CloneParams& params);

// Clones of `target` in the index's bag mode; the target itself is excluded.
// Abstains when the target bag is smaller than min_bag_size.
CloneQuery find_clones(const MethodDefinition& target, const CloneIndex& index);

// Exhaustive all-pairs comparison, the ground truth for the index. Pairs are
// canonical, classified and sorted by (left, right).
std::vector<ClonePair> brute_force_clone_pairs(const Corpus& corpus, const CloneParams& params);

}  // namespace logclone
