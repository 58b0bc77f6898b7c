#include "logclone/clone_index.hpp"

#include <algorithm>
#include <map>

#include <json.hpp>

#include "logclone/errors.hpp"

namespace logclone {
namespace {

double overlap_ratio(std::uint64_t overlap, std::uint64_t a, std::uint64_t b) {
  return static_cast<double>(overlap) / static_cast<double>(std::max(a, b));
}

bool is_literal(const Token& t) {
  return t.kind == TokenKind::kNumber || t.kind == TokenKind::kString ||
         t.kind == TokenKind::kChar || t.is("true") || t.is("false") || t.is("null");
}

void sort_pairs(std::vector<ClonePair>& pairs) {
  std::sort(pairs.begin(), pairs.end(), [](const ClonePair& a, const ClonePair& b) {
    return std::tie(a.left, a.right) < std::tie(b.left, b.right);
  });
}

}  // namespace

std::string_view to_string(DetectionMode mode) {
  return mode == DetectionMode::kLogAware ? "log-aware" : "log-unaware";
}

std::optional<DetectionMode> parse_detection_mode(std::string_view text) {
  if (text == "log-aware" || text == "log_aware") return DetectionMode::kLogAware;
  if (text == "log-unaware" || text == "log_unaware") return DetectionMode::kLogUnaware;
  return std::nullopt;
}

TokenizeMode bag_mode(DetectionMode mode) {
  return mode == DetectionMode::kLogAware ? TokenizeMode::kLogAware : TokenizeMode::kFull;
}

void CloneParams::validate() const {
  if (!(theta > 0.0 && theta <= 1.0)) {
    throw InvalidArgument("theta must lie in (0, 1], got " + std::to_string(theta));
  }
  if (min_bag_size == 0) throw InvalidArgument("min_bag_size must be positive");
}

std::string_view to_string(CloneType type) {
  switch (type) {
    case CloneType::kT1: return "T1";
    case CloneType::kT2: return "T2";
    case CloneType::kT34: return "T34";
  }
  return "T34";
}

std::optional<CloneType> parse_clone_type(std::string_view text) {
  if (text == "T1") return CloneType::kT1;
  if (text == "T2") return CloneType::kT2;
  if (text == "T34") return CloneType::kT34;
  return std::nullopt;
}

std::optional<double> similarity(const TokenBag& a, const TokenBag& b) {
  const auto size_a = bag_size(a);
  const auto size_b = bag_size(b);
  if (size_a == 0 || size_b == 0) return std::nullopt;
  std::uint64_t overlap = 0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (ia->first < ib->first) {
      ++ia;
    } else if (ib->first < ia->first) {
      ++ib;
    } else {
      overlap += std::min(ia->second, ib->second);
      ++ia;
      ++ib;
    }
  }
  return overlap_ratio(overlap, size_a, size_b);
}

CloneKeys clone_keys(const MethodDefinition& method) {
  CloneKeys keys;
  for (const Token& t : method.tokens) {
    keys.exact += t.text;
    keys.exact += '\x1f';
    if (t.is_identifier()) {
      keys.shape += "ID";
    } else if (is_literal(t)) {
      keys.shape += "LIT";
    } else {
      keys.shape += t.text;
    }
    keys.shape += '\x1f';
  }
  return keys;
}

CloneType classify_keys(const CloneKeys& a, const CloneKeys& b) {
  if (a.exact == b.exact) return CloneType::kT1;
  if (a.shape == b.shape) return CloneType::kT2;
  return CloneType::kT34;
}

CloneType classify_clone_type(const ClonePair& pair, const Corpus& corpus) {
  return classify_keys(clone_keys(corpus.method(pair.left)), clone_keys(corpus.method(pair.right)));
}

bool CloneIndex::contains(MethodId id) const {
  const auto it = std::lower_bound(entries_.begin(), entries_.end(), id,
                                   [](const Entry& e, MethodId v) { return e.id < v; });
  return it != entries_.end() && it->id == id;
}

std::vector<MethodId> CloneIndex::members() const {
  std::vector<MethodId> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(e.id);
  return out;
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> CloneIndex::encode(const TokenBag& bag) const {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
  for (const auto& [token, count] : bag) {
    const auto it = std::lower_bound(vocabulary_.begin(), vocabulary_.end(), token);
    if (it != vocabulary_.end() && *it == token) {
      out.emplace_back(static_cast<std::uint32_t>(it - vocabulary_.begin()), count);
    }
  }
  return out;
}

std::vector<ClonePair> CloneIndex::collect(
    std::span<const std::pair<std::uint32_t, std::uint32_t>> bag, std::uint64_t size,
    MethodId self_id, bool have_self, const CloneKeys& keys, bool only_greater) const {
  std::vector<std::uint64_t> overlap(entries_.size(), 0);
  std::vector<std::uint32_t> touched;
  for (const auto& [token, count] : bag) {
    for (const Posting& p : postings_[token]) {
      if (overlap[p.entry] == 0) touched.push_back(p.entry);
      overlap[p.entry] += std::min(count, p.count);
    }
  }
  std::vector<ClonePair> out;
  for (std::uint32_t e : touched) {
    const Entry& entry = entries_[e];
    if (have_self && entry.id == self_id) continue;
    if (only_greater && !(self_id < entry.id)) continue;
    const double sim = overlap_ratio(overlap[e], size, entry.size);
    if (sim < params_.theta) continue;
    ClonePair pair;
    pair.left = have_self ? std::min(self_id, entry.id) : entry.id;
    pair.right = have_self ? std::max(self_id, entry.id) : entry.id;
    pair.similarity = sim;
    pair.clone_type = classify_keys(keys, entry.keys);
    out.push_back(pair);
  }
  return out;
}

CloneQuery CloneIndex::query(const TokenBag& bag, const CloneKeys& keys,
                             std::optional<MethodId> self) const {
  CloneQuery result;
  const auto size = bag_size(bag);
  if (size < params_.min_bag_size) {
    result.status = CloneQuery::Status::kAbstain;
    return result;
  }
  const auto encoded = encode(bag);
  // Without a self id the pair still needs a left/right; callers that query
  // foreign bags read the match from pair.right via other().
  const MethodId self_id = self.value_or(MethodId{0xFFFFFFFFu});
  result.pairs = collect(encoded, size, self_id, true, keys, false);
  std::sort(result.pairs.begin(), result.pairs.end(), [&](const ClonePair& a, const ClonePair& b) {
    if (a.similarity != b.similarity) return a.similarity > b.similarity;
    return a.other(self_id) < b.other(self_id);
  });
  return result;
}

std::vector<ClonePair> CloneIndex::all_pairs() const {
  std::vector<ClonePair> out;
  for (const Entry& e : entries_) {
    auto found = collect(e.bag, e.size, e.id, true, e.keys, true);
    out.insert(out.end(), found.begin(), found.end());
  }
  sort_pairs(out);
  return out;
}

std::string CloneIndex::serialize() const {
  nlohmann::json entries = nlohmann::json::array();
  for (const Entry& e : entries_) {
    nlohmann::json bag = nlohmann::json::array();
    for (const auto& [tok, count] : e.bag) bag.push_back({tok, count});
    entries.push_back({{"method_id", e.id.value}, {"size", e.size}, {"bag", std::move(bag)}});
  }
  nlohmann::json postings = nlohmann::json::array();
  for (const auto& list : postings_) {
    nlohmann::json row = nlohmann::json::array();
    for (const Posting& p : list) row.push_back({entries_[p.entry].id.value, p.count});
    postings.push_back(std::move(row));
  }
  const nlohmann::json doc{{"schema", "logclone-index/1"},
                           {"theta", params_.theta},
                           {"mode", to_string(params_.mode)},
                           {"min_bag_size", params_.min_bag_size},
                           {"vocabulary", vocabulary_},
                           {"entries", std::move(entries)},
                           {"postings", std::move(postings)}};
  return doc.dump();
}

CloneIndex build_index(const Corpus& corpus, const CloneParams& params,
                       std::span<const MethodId> members) {
  params.validate();
  std::vector<MethodId> ids(members.begin(), members.end());
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());

  const TokenizeMode mode = bag_mode(params.mode);
  std::vector<TokenBag> bags;
  std::vector<MethodId> kept;
  for (MethodId id : ids) {
    TokenBag bag = tokenize_method(corpus.method(id), mode);
    if (bag_size(bag) < params.min_bag_size) continue;
    bags.push_back(std::move(bag));
    kept.push_back(id);
  }

  CloneIndex index;
  index.params_ = params;
  std::map<std::string_view, std::uint32_t> vocab;
  for (const auto& bag : bags) {
    for (const auto& [token, _] : bag) vocab.emplace(token, 0);
  }
  index.vocabulary_.reserve(vocab.size());
  for (auto& [token, id] : vocab) {
    id = static_cast<std::uint32_t>(index.vocabulary_.size());
    index.vocabulary_.emplace_back(token);
  }
  index.postings_.resize(index.vocabulary_.size());
  for (std::size_t i = 0; i < kept.size(); ++i) {
    CloneIndex::Entry entry;
    entry.id = kept[i];
    entry.size = bag_size(bags[i]);
    entry.keys = clone_keys(corpus.method(kept[i]));
    for (const auto& [token, count] : bags[i]) {
      const std::uint32_t tok = vocab.at(token);
      entry.bag.emplace_back(tok, count);
      index.postings_[tok].push_back(
          CloneIndex::Posting{static_cast<std::uint32_t>(index.entries_.size()), count});
    }
    index.entries_.push_back(std::move(entry));
  }
  return index;
}

CloneIndex build_index(const Corpus& corpus, const CloneParams& params) {
  std::vector<MethodId> all;
  all.reserve(corpus.methods.size());
  for (const auto& m : corpus.methods) all.push_back(m.method_id);
  return build_index(corpus, params, all);
}

CloneQuery find_clones(const MethodDefinition& target, const CloneIndex& index) {
  return index.query(tokenize_method(target, bag_mode(index.params().mode)), clone_keys(target),
                     target.method_id);
}

std::vector<ClonePair> brute_force_clone_pairs(const Corpus& corpus, const CloneParams& params) {
  params.validate();
  const TokenizeMode mode = bag_mode(params.mode);
  struct Item {
    MethodId id;
    std::map<std::string, long> counts;
    long size = 0;
  };
  std::vector<Item> items;
  for (const auto& m : corpus.methods) {
    Item item{m.method_id, {}, 0};
    for (const auto& t : token_sequence(m, mode)) {
      ++item.counts[t];
      ++item.size;
    }
    if (item.size >= static_cast<long>(params.min_bag_size)) items.push_back(std::move(item));
  }
  std::vector<ClonePair> out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    for (std::size_t j = i + 1; j < items.size(); ++j) {
      long common = 0;
      for (const auto& [tok, count] : items[i].counts) {
        const auto it = items[j].counts.find(tok);
        if (it != items[j].counts.end()) common += std::min(count, it->second);
      }
      const double sim = static_cast<double>(common) /
                         static_cast<double>(std::max(items[i].size, items[j].size));
      if (sim >= params.theta) {
        ClonePair pair{std::min(items[i].id, items[j].id), std::max(items[i].id, items[j].id), sim,
                       CloneType::kT34};
        pair.clone_type = classify_clone_type(pair, corpus);
        out.push_back(pair);
      }
    }
  }
  sort_pairs(out);
  return out;
}

}  // namespace logclone
