#include "logclone/location.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "logclone/errors.hpp"
#include "parallel.hpp"

namespace logclone {

std::string_view to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::kNeedsLog: return "needs_log";
    case Verdict::kNoLog: return "no_log";
    case Verdict::kAbstain: return "abstain";
  }
  return "abstain";
}

LocationVerdict predict_location(const MethodDefinition& target, const CloneIndex& index,
                                 const Corpus& train, const LocationOptions& options) {
  LocationVerdict out;
  out.target = target.method_id;
  const TokenizeMode mode =
      options.strip_target_logs ? TokenizeMode::kLogAware : bag_mode(index.params().mode);
  CloneQuery query = index.query(tokenize_method(target, mode), clone_keys(target),
                                 target.method_id);
  if (query.abstained()) {
    out.verdict = Verdict::kAbstain;
    return out;
  }
  for (const ClonePair& pair : query.pairs) {
    const MethodId clone = pair.other(target.method_id);
    if (train.method(clone).has_log()) {
      if (!out.evidence) out.evidence = Evidence{clone, pair.similarity};
      ++out.logged_clone_count;
    } else {
      ++out.unlogged_clone_count;
    }
  }
  out.clones = std::move(query.pairs);
  const bool positive = options.rule == VoteRule::kAnyLogged
                            ? out.logged_clone_count > 0
                            : out.logged_clone_count > out.unlogged_clone_count;
  out.verdict = positive ? Verdict::kNeedsLog : Verdict::kNoLog;
  return out;
}

LocationMetrics compute_metrics(const ConfusionCounts& c) {
  LocationMetrics m;
  auto ratio = [](std::uint64_t num, std::uint64_t den) -> std::optional<double> {
    if (den == 0) return std::nullopt;
    return static_cast<double>(num) / static_cast<double>(den);
  };
  m.precision = ratio(c.tp, c.tp + c.fp);
  m.recall = ratio(c.tp, c.tp + c.fn);
  if (m.precision && m.recall) {
    const double sum = *m.precision + *m.recall;
    m.f1 = sum > 0.0 ? 2.0 * *m.precision * *m.recall / sum : 0.0;
  }
  const auto specificity = ratio(c.tn, c.tn + c.fp);
  if (m.recall && specificity) m.balanced_accuracy = (*m.recall + *specificity) / 2.0;
  return m;
}

LocationEvaluation evaluate_location(const Corpus& corpus, std::span<const MethodId> train,
                                     std::span<const MethodId> test, const CloneParams& params,
                                     const LocationOptions& options, unsigned threads) {
  if (test.empty()) throw EvaluationError("location evaluation needs a non-empty test set");
  const CloneIndex index = build_index(corpus, params, train);
  for (MethodId id : test) {
    if (index.contains(id)) {
      throw std::logic_error("test method " + std::to_string(id.value) + " leaked into the index");
    }
  }
  std::vector<MethodId> ordered(test.begin(), test.end());
  std::sort(ordered.begin(), ordered.end());

  LocationOptions opts = options;
  opts.strip_target_logs = true;
  LocationEvaluation eval;
  eval.index_size = index.size();
  eval.verdicts.resize(ordered.size());
  detail::parallel_for(ordered.size(), threads, [&](std::size_t i) {
    eval.verdicts[i] = predict_location(corpus.method(ordered[i]), index, corpus, opts);
  });
  for (const auto& v : eval.verdicts) {
    const bool actual = corpus.method(v.target).has_log();
    switch (v.verdict) {
      case Verdict::kAbstain: ++eval.abstained; break;
      case Verdict::kNeedsLog: ++(actual ? eval.counts.tp : eval.counts.fp); break;
      case Verdict::kNoLog: ++(actual ? eval.counts.fn : eval.counts.tn); break;
    }
  }
  eval.metrics = compute_metrics(eval.counts);
  return eval;
}

std::optional<double> ConsistencyReport::band_share(CloneType type) const {
  if (pair_count == 0) return std::nullopt;
  const auto it = band_counts.find(type);
  const auto n = it == band_counts.end() ? 0 : it->second;
  return static_cast<double>(n) / static_cast<double>(pair_count);
}

ConsistencyReport consistency_report(const Corpus& corpus, std::span<const ClonePair> pairs) {
  ConsistencyReport r;
  for (CloneType t : {CloneType::kT1, CloneType::kT2, CloneType::kT34}) r.band_counts[t] = 0;
  auto levels = [&](MethodId id) {
    std::set<Level> out;
    for (const auto& lps : corpus.method(id).lps_list) out.insert(lps.level);
    return out;
  };
  for (const ClonePair& p : pairs) {
    ++r.pair_count;
    ++r.band_counts[p.clone_type];
    const bool left = corpus.method(p.left).has_log();
    const bool right = corpus.method(p.right).has_log();
    if (left == right) ++r.presence_agreeing;
    if (left && right) {
      ++r.both_logged;
      if (levels(p.left) == levels(p.right)) ++r.level_matching;
    }
  }
  if (r.pair_count > 0) {
    r.presence_consistency =
        static_cast<double>(r.presence_agreeing) / static_cast<double>(r.pair_count);
  }
  if (r.both_logged > 0) {
    r.level_match = static_cast<double>(r.level_matching) / static_cast<double>(r.both_logged);
  }
  return r;
}

}  // namespace logclone
