#include "logclone/pipeline.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "logclone/corpus_io.hpp"
#include "logclone/errors.hpp"
#include "parallel.hpp"

namespace logclone {
namespace {

using nlohmann::json;

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json rouge_json(const RougeScore& s) {
  return json{{"precision", s.precision}, {"recall", s.recall}, {"f1", s.f1}};
}

json aggregate_json(const DescriptionAggregate& a) {
  return json{{"items", a.items},
              {"bleu", a.bleu},
              {"rouge1", rouge_json(a.rouge1)},
              {"rouge_l", rouge_json(a.rouge_l)}};
}

json config_json(const EvalConfig& c) {
  return json{
      {"corpus", c.corpus_path.generic_string()},
      {"split", {{"train_fraction", c.split.train_fraction}, {"seed", c.split.seed}}},
      {"clone",
       {{"theta", c.clone.theta},
        {"mode", to_string(c.clone.mode)},
        {"min_bag_size", c.clone.min_bag_size}}},
      {"lm",
       {{"order", c.lm.order}, {"add_k", c.lm.add_k}, {"backoff_weight", c.lm.backoff_weight}}},
      {"hybrid",
       {{"lambda", c.hybrid.lambda},
        {"k", c.hybrid.k},
        {"tau", c.hybrid.tau},
        {"max_len", c.hybrid.max_len}}},
      {"location", {{"rule", c.location.rule == VoteRule::kAnyLogged ? "any_logged" : "majority"}}},
      {"ingest",
       {{"min_method_lines", c.ingest.min_method_lines},
        {"logger_patterns", c.ingest.logger_patterns},
        {"extensions", c.ingest.extensions}}}};
}

// Index of the reference with the highest BLEU-4 against `candidate`; the
// earliest wins ties.
std::size_t best_reference(const TokenSeq& candidate,
                           const std::vector<const LogPrintStatement*>& refs) {
  std::size_t best = 0;
  double best_score = -1.0;
  for (std::size_t i = 0; i < refs.size(); ++i) {
    const double s = candidate.empty() ? 0.0 : bleu(candidate, refs[i]->lsd_tokens, 4);
    if (s > best_score) {
      best = i;
      best_score = s;
    }
  }
  return best;
}

struct TargetResult {
  std::vector<DescriptionItem> items;
  std::vector<LevelItem> levels;
  bool scored = false;
  bool unscorable = false;
};

TargetResult describe_target(const Corpus& corpus, const LocationVerdict& verdict,
                             const LsdLanguageModel& model, const EvalConfig& config) {
  TargetResult result;
  const MethodDefinition& target = corpus.method(verdict.target);
  if (!target.has_log() || verdict.verdict != Verdict::kNeedsLog || !verdict.evidence) {
    return result;
  }
  std::vector<const LogPrintStatement*> refs;
  for (const auto& lps : target.lps_list) {
    if (!lps.lsd_tokens.empty()) refs.push_back(&lps);
  }
  if (refs.empty()) {
    result.unscorable = true;
    return result;
  }
  result.scored = true;

  const MethodDefinition& clone = corpus.method(verdict.evidence->clone);
  const auto clone_only = suggest_lsd_clone_only(clone);
  const auto hybrid = suggest_lsd_hybrid(target, clone, model, config.hybrid);

  for (std::size_t k = 0; k < clone.lps_list.size(); ++k) {
    const LogPrintStatement& seed = clone.lps_list[k];
    for (SuggestionSource source : {SuggestionSource::kCloneOnly, SuggestionSource::kHybrid}) {
      const TokenSeq& tokens =
          source == SuggestionSource::kCloneOnly ? clone_only[k] : hybrid[k].tokens;
      const LogPrintStatement& ref = *refs[best_reference(tokens, refs)];
      DescriptionItem item = score_suggestion(tokens, ref.lsd_tokens);
      item.target = target.method_id;
      item.source = source;
      item.seed_clone = clone.method_id;
      item.seed_lps = seed.lps_id;
      item.reference_line = ref.line;
      if (source == SuggestionSource::kCloneOnly) {
        item.variables = predict_variables(target, seed).variables;
        const auto votes = level_votes(corpus, verdict, seed);
        const LevelPrediction level = predict_level(target.method_id, votes);
        LevelItem li;
        li.target = target.method_id;
        li.predicted = level.level;
        li.reference = ref.level;
        li.rule = level.rule;
        li.support = level.support;
        li.match = level.level == ref.level;
        result.levels.push_back(li);
      }
      result.items.push_back(std::move(item));
    }
  }
  return result;
}

std::string fmt(const std::optional<double>& v) {
  if (!v) return "undefined";
  std::ostringstream os;
  os << std::fixed << std::setprecision(4) << *v;
  return os.str();
}

}  // namespace

std::vector<LevelVote> level_votes(const Corpus& corpus, const LocationVerdict& verdict,
                                   const LogPrintStatement& seed) {
  auto match = [&](const TokenSeq& lsd) {
    if (seed.lsd_tokens.empty() || lsd.empty()) {
      return seed.lsd_tokens.empty() && lsd.empty() ? 1.0 : 0.0;
    }
    return bleu(lsd, seed.lsd_tokens, 4);
  };
  std::vector<LevelVote> votes;
  for (const ClonePair& pair : verdict.clones) {
    const MethodDefinition& other = corpus.method(pair.other(verdict.target));
    const LogPrintStatement* best = nullptr;
    double best_score = -1.0;
    for (const auto& lps : other.lps_list) {
      const double s = match(lps.lsd_tokens);
      if (s > best_score) {
        best = &lps;
        best_score = s;
      }
    }
    if (best != nullptr) votes.push_back(LevelVote{other.method_id, pair.similarity, best->level});
  }
  return votes;
}

DescriptionItem score_suggestion(const TokenSeq& suggestion, const TokenSeq& reference) {
  DescriptionItem item;
  item.suggestion = suggestion;
  item.reference = reference;
  if (suggestion.empty()) return item;
  for (int n = 1; n <= 4; ++n) item.bleu[static_cast<std::size_t>(n - 1)] = bleu(suggestion, reference, n);
  item.rouge1 = rouge_n(suggestion, reference, 1);
  item.rouge_l = rouge_l(suggestion, reference);
  return item;
}

DescriptionAggregate aggregate(const std::vector<DescriptionItem>& items, SuggestionSource source) {
  DescriptionAggregate a;
  for (const auto& item : items) {
    if (item.source != source) continue;
    ++a.items;
    for (std::size_t n = 0; n < 4; ++n) a.bleu[n] += item.bleu[n];
    a.rouge1.precision += item.rouge1.precision;
    a.rouge1.recall += item.rouge1.recall;
    a.rouge1.f1 += item.rouge1.f1;
    a.rouge_l.precision += item.rouge_l.precision;
    a.rouge_l.recall += item.rouge_l.recall;
    a.rouge_l.f1 += item.rouge_l.f1;
  }
  if (a.items == 0) return a;
  const double n = static_cast<double>(a.items);
  for (auto& b : a.bleu) b /= n;
  for (RougeScore* s : {&a.rouge1, &a.rouge_l}) {
    s->precision /= n;
    s->recall /= n;
    s->f1 /= n;
  }
  return a;
}

EvalReport evaluate_split(const Corpus& corpus, const Split& split, const EvalConfig& config) {
  config.clone.validate();
  config.lm.validate();
  config.hybrid.validate();
  EvalReport report;
  report.config = config;
  report.method_count = corpus.methods.size();
  report.train_size = split.train.size();
  report.test_size = split.test.size();
  report.location =
      evaluate_location(corpus, split.train, split.test, config.clone, config.location,
                        config.threads);
  report.index_size = report.location.index_size;

  std::vector<TokenSeq> lsds;
  for (MethodId id : split.train) {
    for (const auto& lps : corpus.method(id).lps_list) {
      if (!lps.lsd_tokens.empty()) lsds.push_back(lps.lsd_tokens);
    }
  }
  const LsdLanguageModel model = train_lsd_lm(lsds, config.lm);

  const auto& verdicts = report.location.verdicts;
  std::vector<TargetResult> results(verdicts.size());
  detail::parallel_for(verdicts.size(), config.threads, [&](std::size_t i) {
    results[i] = describe_target(corpus, verdicts[i], model, config);
  });
  for (auto& r : results) {
    if (r.unscorable) ++report.unscorable_targets;
    if (r.scored) report.description_empty = false;
    for (auto& item : r.items) report.items.push_back(std::move(item));
    for (auto& level : r.levels) report.levels.push_back(level);
  }
  report.clone_only = aggregate(report.items, SuggestionSource::kCloneOnly);
  report.hybrid = aggregate(report.items, SuggestionSource::kHybrid);
  if (!report.levels.empty()) {
    const auto matches = std::count_if(report.levels.begin(), report.levels.end(),
                                       [](const LevelItem& l) { return l.match; });
    report.level_match_rate =
        static_cast<double>(matches) / static_cast<double>(report.levels.size());
  }
  return report;
}

EvalReport evaluate_corpus(const Corpus& corpus, const EvalConfig& config) {
  return evaluate_split(corpus, split_corpus(corpus, config.split), config);
}

Corpus load_or_scan(const std::filesystem::path& path, const IngestConfig& ingest) {
  std::error_code ec;
  if (std::filesystem::is_directory(path, ec)) return scan_corpus(path, ingest);
  if (!std::filesystem::exists(path, ec)) throw CorpusError("corpus not found: " + path.string());
  return load_corpus(path);
}

EvalReport run_pipeline(const EvalConfig& config) {
  const Corpus corpus = load_or_scan(config.corpus_path, config.ingest);
  if (corpus.methods.empty()) throw EvaluationError("corpus contains no methods");
  return evaluate_corpus(corpus, config);
}

namespace {

json report_body(const EvalReport& r) {
  json location_records = json::array();
  for (const auto& v : r.location.verdicts) {
    json evidence = nullptr;
    if (v.evidence) evidence = {{"clone", v.evidence->clone.value}, {"similarity", v.evidence->similarity}};
    location_records.push_back({{"target", v.target.value},
                                {"verdict", to_string(v.verdict)},
                                {"evidence", std::move(evidence)},
                                {"logged_clones", v.logged_clone_count},
                                {"unlogged_clones", v.unlogged_clone_count}});
  }
  const auto& c = r.location.counts;
  const auto& m = r.location.metrics;
  json location{{"counts", {{"tp", c.tp}, {"fp", c.fp}, {"tn", c.tn}, {"fn", c.fn}}},
                {"abstained", r.location.abstained},
                {"precision", optional_number(m.precision)},
                {"recall", optional_number(m.recall)},
                {"f1", optional_number(m.f1)},
                {"balanced_accuracy", optional_number(m.balanced_accuracy)},
                {"records", std::move(location_records)}};

  json items = json::array();
  for (const auto& item : r.items) {
    json vars = json::array();
    for (const auto& v : item.variables) {
      vars.push_back({{"name", v.name}, {"provenance", to_string(v.provenance)}});
    }
    items.push_back({{"target", item.target.value},
                     {"source", to_string(item.source)},
                     {"seed_clone", item.seed_clone.value},
                     {"seed_lps", item.seed_lps},
                     {"suggestion", item.suggestion},
                     {"reference", item.reference},
                     {"reference_line", item.reference_line},
                     {"bleu", item.bleu},
                     {"rouge1", rouge_json(item.rouge1)},
                     {"rouge_l", rouge_json(item.rouge_l)},
                     {"variables", std::move(vars)}});
  }
  json description{{"empty", r.description_empty},
                   {"unscorable_targets", r.unscorable_targets},
                   {"clone_only", aggregate_json(r.clone_only)},
                   {"hybrid", aggregate_json(r.hybrid)},
                   {"records", std::move(items)}};

  json level_records = json::array();
  for (const auto& l : r.levels) {
    level_records.push_back({{"target", l.target.value},
                             {"predicted", to_string(l.predicted)},
                             {"reference", to_string(l.reference)},
                             {"rule", to_string(l.rule)},
                             {"support", l.support},
                             {"match", l.match}});
  }
  return json{{"config", config_json(r.config)},
              {"corpus",
               {{"methods", r.method_count},
                {"train", r.train_size},
                {"test", r.test_size},
                {"indexed", r.index_size}}},
              {"location", std::move(location)},
              {"description", std::move(description)},
              {"levels",
               {{"match_rate", optional_number(r.level_match_rate)},
                {"records", std::move(level_records)}}}};
}

}  // namespace

std::string report_to_json(const EvalReport& report, const std::string& timestamp) {
  json doc = report_body(report);
  doc["schema"] = kReportSchema;
  doc["generated_at"] = timestamp;
  return doc.dump(2);
}

std::string multi_report_to_json(const std::vector<EvalReport>& reports,
                                 const std::string& timestamp) {
  json projects = json::array();
  auto mean_of = [&](auto get) -> json {
    double sum = 0.0;
    std::size_t n = 0;
    for (const auto& r : reports) {
      const std::optional<double> v = get(r);
      if (!v) continue;
      sum += *v;
      ++n;
    }
    return n == 0 ? json(nullptr) : json(sum / static_cast<double>(n));
  };
  for (const auto& r : reports) projects.push_back(report_body(r));
  json macro{
      {"precision", mean_of([](const EvalReport& r) { return r.location.metrics.precision; })},
      {"recall", mean_of([](const EvalReport& r) { return r.location.metrics.recall; })},
      {"f1", mean_of([](const EvalReport& r) { return r.location.metrics.f1; })},
      {"balanced_accuracy",
       mean_of([](const EvalReport& r) { return r.location.metrics.balanced_accuracy; })},
      {"level_match_rate", mean_of([](const EvalReport& r) { return r.level_match_rate; })}};
  for (SuggestionSource source : {SuggestionSource::kCloneOnly, SuggestionSource::kHybrid}) {
    auto pick = [source](const EvalReport& r) -> const DescriptionAggregate& {
      return source == SuggestionSource::kCloneOnly ? r.clone_only : r.hybrid;
    };
    json bleu = json::array();
    for (std::size_t n = 0; n < 4; ++n) {
      bleu.push_back(mean_of([&](const EvalReport& r) -> std::optional<double> {
        if (pick(r).items == 0) return std::nullopt;
        return pick(r).bleu[n];
      }));
    }
    macro[std::string(to_string(source))] = {
        {"bleu", std::move(bleu)},
        {"rouge1_f1", mean_of([&](const EvalReport& r) -> std::optional<double> {
           if (pick(r).items == 0) return std::nullopt;
           return pick(r).rouge1.f1;
         })},
        {"rouge_l_f1", mean_of([&](const EvalReport& r) -> std::optional<double> {
           if (pick(r).items == 0) return std::nullopt;
           return pick(r).rouge_l.f1;
         })}};
  }
  const json doc{{"schema", kReportSchema},
                 {"generated_at", timestamp},
                 {"projects", std::move(projects)},
                 {"macro", std::move(macro)}};
  return doc.dump(2);
}

std::string report_summary(const EvalReport& r) {
  std::ostringstream os;
  const auto& c = r.location.counts;
  const auto& m = r.location.metrics;
  os << "corpus: " << r.method_count << " methods (train " << r.train_size << ", test "
     << r.test_size << ", indexed " << r.index_size << ")\n";
  os << "mode: " << to_string(r.config.clone.mode) << "  theta: " << r.config.clone.theta
     << "  lambda: " << r.config.hybrid.lambda << "\n\n";
  os << "location  tp=" << c.tp << " fp=" << c.fp << " tn=" << c.tn << " fn=" << c.fn
     << " abstained=" << r.location.abstained << "\n";
  os << "  precision " << fmt(m.precision) << "  recall " << fmt(m.recall) << "  F1 " << fmt(m.f1)
     << "  BA " << fmt(m.balanced_accuracy) << "\n\n";
  if (r.description_empty) {
    os << "description: no logged test method was predicted needs_log\n";
  } else {
    os << "description   items  BLEU-1  BLEU-2  BLEU-3  BLEU-4  ROUGE-1 F1  ROUGE-L F1\n";
    for (SuggestionSource source : {SuggestionSource::kCloneOnly, SuggestionSource::kHybrid}) {
      const auto& a = source == SuggestionSource::kCloneOnly ? r.clone_only : r.hybrid;
      os << std::left << std::setw(12) << to_string(source) << std::right << std::setw(7)
         << a.items;
      for (double b : a.bleu) os << "  " << fmt(b);
      os << "      " << fmt(a.rouge1.f1) << "      " << fmt(a.rouge_l.f1) << "\n";
    }
  }
  os << "level match rate: " << fmt(r.level_match_rate) << "\n";
  return os.str();
}

}  // namespace logclone
