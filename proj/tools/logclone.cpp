#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>

#include "logclone/clone_index.hpp"
#include "logclone/corpus.hpp"
#include "logclone/corpus_io.hpp"
#include "logclone/errors.hpp"
#include "logclone/level_var.hpp"
#include "logclone/location.hpp"
#include "logclone/lsd_model.hpp"
#include "logclone/lsd_suggest.hpp"
#include "logclone/pipeline.hpp"

namespace {

using namespace logclone;
using nlohmann::json;

enum Exit { kOk = 0, kUsage = 1, kCorpus = 2, kEvaluation = 3 };

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string fixed6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CorpusError("cannot write " + path);
  out << text;
  if (!out) throw CorpusError("write failed: " + path);
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CorpusError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

DetectionMode mode_from(const std::string& text) {
  const auto mode = parse_detection_mode(text);
  if (!mode) throw InvalidArgument("unknown mode '" + text + "' (log-aware or log-unaware)");
  return *mode;
}

// Options shared by the subcommands that read a corpus.
struct Common {
  std::string corpus;
  double theta = 0.7;
  std::string mode = "log-aware";
  std::uint64_t min_bag_size = 10;
  unsigned threads = 0;
  std::vector<std::string> patterns;

  CloneParams clone() const {
    CloneParams p;
    p.theta = theta;
    p.mode = mode_from(mode);
    p.min_bag_size = min_bag_size;
    p.validate();
    return p;
  }
  IngestConfig ingest() const {
    IngestConfig c;
    if (!patterns.empty()) c.logger_patterns = patterns;
    c.threads = threads;
    return c;
  }
};

void add_clone_options(CLI::App* cmd, Common& c) {
  cmd->add_option("--theta", c.theta, "Similarity threshold in (0, 1]")->capture_default_str();
  cmd->add_option("--mode", c.mode, "log-aware or log-unaware")->capture_default_str();
  cmd->add_option("--min-bag-size", c.min_bag_size, "Smallest indexable token bag")
      ->capture_default_str();
}

// Methods of a single Java file with ids past the end of the corpus.
std::vector<MethodDefinition> target_methods(const Corpus& corpus, const std::string& path,
                                             const IngestConfig& ingest) {
  const auto file = make_source_file(static_cast<std::uint32_t>(corpus.files.size()), path,
                                     read_text(path));
  auto extraction =
      extract_methods(file, ingest, MethodId{static_cast<std::uint32_t>(corpus.methods.size())});
  for (const auto& w : extraction.warnings) std::cerr << "warning: " << w << "\n";
  if (extraction.methods.empty()) throw InvalidArgument("no methods found in " + path);
  return std::move(extraction.methods);
}

json verdict_json(const MethodDefinition& target, const LocationVerdict& v) {
  json evidence = nullptr;
  if (v.evidence) {
    evidence = {{"clone", v.evidence->clone.value}, {"similarity", v.evidence->similarity}};
  }
  return json{{"target", target.qualified_name},
              {"start_line", target.start_line},
              {"verdict", to_string(v.verdict)},
              {"evidence", std::move(evidence)},
              {"logged_clones", v.logged_clone_count},
              {"unlogged_clones", v.unlogged_clone_count}};
}

std::string join(const TokenSeq& tokens) {
  std::string out;
  for (const auto& t : tokens) {
    if (!out.empty()) out += ' ';
    out += t;
  }
  return out;
}

int run_ingest(const std::string& root, const std::string& out, const IngestConfig& config) {
  const Corpus corpus = scan_corpus(root, config);
  save_corpus(out, corpus);
  std::size_t logged = 0;
  for (const auto& m : corpus.methods) logged += m.has_log() ? 1 : 0;
  std::cout << "files: " << corpus.files.size() << "  skipped: " << corpus.skipped.size()
            << "  methods: " << corpus.methods.size() << "  logged: " << logged << "\n";
  for (const auto& w : corpus.warnings) std::cerr << "warning: " << w << "\n";
  return kOk;
}

int run_clones(const Common& c, const std::string& out) {
  const Corpus corpus = load_or_scan(c.corpus, c.ingest());
  const auto pairs = build_index(corpus, c.clone()).all_pairs();
  std::string text;
  for (const auto& p : pairs) {
    text += "{\"left\":" + std::to_string(p.left.value) + ",\"right\":" +
            std::to_string(p.right.value) + ",\"similarity\":" + fixed6(p.similarity) +
            ",\"clone_type\":\"" + std::string(to_string(p.clone_type)) + "\"}\n";
  }
  write_text(out, text);
  if (!out.empty() && out != "-") std::cout << pairs.size() << " clone pairs\n";
  return kOk;
}

int run_predict(const Common& c, const std::string& target_file) {
  const Corpus corpus = load_or_scan(c.corpus, c.ingest());
  const CloneIndex index = build_index(corpus, c.clone());
  LocationOptions options;
  options.strip_target_logs = true;
  for (const auto& target : target_methods(corpus, target_file, c.ingest())) {
    const auto v = predict_location(target, index, corpus, options);
    std::cout << target.qualified_name << " (line " << target.start_line
              << "): " << to_string(v.verdict);
    if (v.evidence) {
      std::cout << "  evidence " << corpus.method(v.evidence->clone).qualified_name
                << " similarity " << fixed6(v.evidence->similarity);
    }
    std::cout << "\n" << verdict_json(target, v).dump() << "\n";
  }
  return kOk;
}

int run_suggest(const Common& c, const std::string& target_file, const HybridParams& hybrid) {
  hybrid.validate();
  const Corpus corpus = load_or_scan(c.corpus, c.ingest());
  const CloneIndex index = build_index(corpus, c.clone());
  std::vector<TokenSeq> lsds;
  for (const auto& m : corpus.methods) {
    for (const auto& lps : m.lps_list) {
      if (!lps.lsd_tokens.empty()) lsds.push_back(lps.lsd_tokens);
    }
  }
  const LsdLanguageModel model = train_lsd_lm(lsds);
  LocationOptions options;
  options.strip_target_logs = true;
  for (const auto& target : target_methods(corpus, target_file, c.ingest())) {
    const auto v = predict_location(target, index, corpus, options);
    json record = verdict_json(target, v);
    std::cout << target.qualified_name << ": " << to_string(v.verdict) << "\n";
    if (v.verdict == Verdict::kNeedsLog && v.evidence) {
      const MethodDefinition& clone = corpus.method(v.evidence->clone);
      const auto suggestions = suggest_lsd_hybrid(target, clone, model, hybrid);
      json items = json::array();
      for (std::size_t i = 0; i < suggestions.size(); ++i) {
        const auto vars = predict_variables(target, clone.lps_list[i]);
        const auto level =
            predict_level(target.method_id, level_votes(corpus, v, clone.lps_list[i]));
        json var_json = json::array();
        std::string var_text;
        for (const auto& var : vars.variables) {
          var_json.push_back({{"name", var.name}, {"provenance", to_string(var.provenance)}});
          var_text += " " + var.name + "(" + std::string(to_string(var.provenance)) + ")";
        }
        std::cout << "  lsd: " << join(suggestions[i].tokens) << "\n"
                  << "  level: " << to_string(level.level) << " (support " << fixed6(level.support)
                  << ")\n"
                  << "  variables:" << (var_text.empty() ? " none" : var_text) << "\n";
        items.push_back({{"lsd", suggestions[i].tokens},
                         {"clone_lsd", clone.lps_list[i].lsd_tokens},
                         {"level", to_string(level.level)},
                         {"level_support", level.support},
                         {"variables", std::move(var_json)}});
      }
      record["suggestions"] = std::move(items);
    }
    std::cout << record.dump() << "\n";
  }
  return kOk;
}

EvalConfig eval_config(const Common& c, double split, std::uint64_t seed) {
  EvalConfig config;
  config.corpus_path = c.corpus;
  config.ingest = c.ingest();
  config.split = {split, seed};
  config.clone = c.clone();
  config.threads = c.threads;
  return config;
}

int run_evaluate_location(const Common& c, double split, std::uint64_t seed,
                          const std::string& out) {
  const EvalConfig config = eval_config(c, split, seed);
  const Corpus corpus = load_or_scan(config.corpus_path, config.ingest);
  if (corpus.methods.empty()) throw EvaluationError("corpus contains no methods");
  const Split parts = split_corpus(corpus, config.split);
  EvalReport report;
  report.config = config;
  report.method_count = corpus.methods.size();
  report.train_size = parts.train.size();
  report.test_size = parts.test.size();
  report.location = evaluate_location(corpus, parts.train, parts.test, config.clone,
                                      config.location, config.threads);
  report.index_size = report.location.index_size;
  json doc = json::parse(report_to_json(report, utc_timestamp()));
  doc.erase("description");
  doc.erase("levels");
  doc["config"].erase("lm");
  doc["config"].erase("hybrid");
  write_text(out, doc.dump(2) + "\n");
  const auto& m = report.location.metrics;
  auto show = [](const std::optional<double>& v) { return v ? fixed6(*v) : std::string("undefined"); };
  std::cout << "precision " << show(m.precision) << "  recall " << show(m.recall) << "  F1 "
            << show(m.f1) << "  BA " << show(m.balanced_accuracy) << "  abstained "
            << report.location.abstained << "\n";
  return kOk;
}

int run_evaluate_all(const Common& c, const std::vector<std::string>& corpora, double split,
                     std::uint64_t seed, double lambda, const std::string& out) {
  std::vector<EvalReport> reports;
  for (const auto& path : corpora) {
    Common one = c;
    one.corpus = path;
    EvalConfig config = eval_config(one, split, seed);
    config.hybrid.lambda = lambda;
    reports.push_back(run_pipeline(config));
    if (corpora.size() > 1) std::cout << "== " << path << "\n";
    std::cout << report_summary(reports.back());
  }
  if (out.empty()) return kOk;
  const std::string stamp = utc_timestamp();
  const std::string text = reports.size() == 1 ? report_to_json(reports.front(), stamp)
                                               : multi_report_to_json(reports, stamp);
  write_text(out, text + "\n");
  return kOk;
}

int run_consistency(const Common& c, const std::string& root, const std::string& out) {
  if (c.corpus.empty() == root.empty()) throw InvalidArgument("give exactly one of --corpus, --root");
  const Corpus corpus = load_or_scan(root.empty() ? c.corpus : root, c.ingest());
  const auto pairs = build_index(corpus, c.clone()).all_pairs();
  const auto report = consistency_report(corpus, pairs);
  auto num = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
  json bands = json::object();
  for (CloneType t : {CloneType::kT1, CloneType::kT2, CloneType::kT34}) {
    const auto it = report.band_counts.find(t);
    bands[std::string(to_string(t))] = {
        {"pairs", it == report.band_counts.end() ? 0 : it->second},
        {"share", num(report.band_share(t))}};
  }
  const json doc{{"methods", corpus.methods.size()},
                 {"pairs", report.pair_count},
                 {"presence_agreeing", report.presence_agreeing},
                 {"presence_consistency", num(report.presence_consistency)},
                 {"both_logged", report.both_logged},
                 {"level_matching", report.level_matching},
                 {"level_match", num(report.level_match)},
                 {"bands", std::move(bands)}};
  if (!out.empty()) write_text(out, doc.dump(2) + "\n");
  auto show = [](const std::optional<double>& v) { return v ? fixed6(*v) : std::string("undefined"); };
  std::cout << "methods " << corpus.methods.size() << "  clone pairs " << report.pair_count << "\n"
            << "presence consistency " << show(report.presence_consistency) << "\n"
            << "level match " << show(report.level_match) << " over " << report.both_logged
            << " logged pairs\n";
  for (CloneType t : {CloneType::kT1, CloneType::kT2, CloneType::kT34}) {
    std::cout << to_string(t) << " share " << show(report.band_share(t)) << "\n";
  }
  return kOk;
}

int run_lm(const Common& c, const std::string& out, const LmParams& params) {
  const Corpus corpus = load_or_scan(c.corpus, c.ingest());
  std::vector<TokenSeq> lsds;
  for (const auto& m : corpus.methods) {
    for (const auto& lps : m.lps_list) {
      if (!lps.lsd_tokens.empty()) lsds.push_back(lps.lsd_tokens);
    }
  }
  write_text(out, train_lsd_lm(lsds, params).to_json() + "\n");
  std::cout << lsds.size() << " descriptions\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Clone-based logging statement suggestion"};
  app.require_subcommand(1);

  Common common;
  unsigned threads = 0;
  app.add_option("--threads", threads, "Worker threads (0 = all cores)");

  auto* ingest = app.add_subcommand("ingest", "Extract methods and logging calls into a corpus file");
  std::string root, out;
  std::uint32_t min_lines = 3;
  std::vector<std::string> exts, excludes;
  ingest->add_option("--root", root, "Source tree")->required();
  ingest->add_option("--out", out, "Corpus file (JSON Lines)")->required();
  ingest->add_option("--min-method-lines", min_lines)->capture_default_str();
  ingest->add_option("--logger-pattern", common.patterns, "Logger receiver regex (repeatable)");
  ingest->add_option("--ext", exts, "File extension to include (repeatable)");
  ingest->add_option("--exclude", excludes, "Glob of paths to skip (repeatable)");

  auto* clones = app.add_subcommand("clones", "List clone pairs");
  clones->add_option("--corpus", common.corpus)->required();
  clones->add_option("--out", out, "Pair file (JSON Lines), - for stdout")->required();
  add_clone_options(clones, common);

  std::string target_file;
  auto* predict = app.add_subcommand("predict", "Does each method of a file need a log?");
  predict->add_option("--corpus", common.corpus)->required();
  predict->add_option("--target-file", target_file)->required();
  add_clone_options(predict, common);

  HybridParams hybrid;
  auto* suggest = app.add_subcommand("suggest", "Suggest logging statements for a file");
  suggest->add_option("--corpus", common.corpus)->required();
  suggest->add_option("--target-file", target_file)->required();
  suggest->add_option("--lambda", hybrid.lambda)->capture_default_str();
  suggest->add_option("--k", hybrid.k)->capture_default_str();
  suggest->add_option("--tau", hybrid.tau)->capture_default_str();
  add_clone_options(suggest, common);

  double split = 0.8;
  std::uint64_t seed = 42;
  auto* evaluate = app.add_subcommand("evaluate", "Train/test experiments");
  evaluate->require_subcommand(1);
  auto* eval_loc = evaluate->add_subcommand("location", "Location prediction only");
  eval_loc->add_option("--corpus", common.corpus)->required();
  eval_loc->add_option("--split", split, "Training fraction")->capture_default_str();
  eval_loc->add_option("--seed", seed)->capture_default_str();
  eval_loc->add_option("--out", out, "Report file, - for stdout")->required();
  add_clone_options(eval_loc, common);

  std::vector<std::string> corpora;
  auto* eval_all = evaluate->add_subcommand("all", "Location, description, level and variables");
  eval_all->add_option("--corpus", corpora, "Corpus file or source tree (repeatable)")->required();
  eval_all->add_option("--split", split, "Training fraction")->capture_default_str();
  eval_all->add_option("--seed", seed)->capture_default_str();
  eval_all->add_option("--lambda", hybrid.lambda)->capture_default_str();
  eval_all->add_option("--out", out, "Report file, - for stdout; omitted prints the summary only");
  add_clone_options(eval_all, common);

  auto* consistency = app.add_subcommand("consistency", "Logging consistency among clone pairs");
  consistency->add_option("--corpus", common.corpus);
  consistency->add_option("--root", root, "Source tree to ingest first");
  consistency->add_option("--out", out, "Optional JSON output");
  add_clone_options(consistency, common);

  LmParams lm;
  auto* lm_cmd = app.add_subcommand("lm", "Train and save the description language model");
  lm_cmd->add_option("--corpus", common.corpus)->required();
  lm_cmd->add_option("--out", out)->required();
  lm_cmd->add_option("--order", lm.order)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }
  common.threads = threads;

  try {
    if (ingest->parsed()) {
      IngestConfig config = common.ingest();
      config.min_method_lines = min_lines;
      if (!exts.empty()) config.extensions = exts;
      config.exclude_globs = excludes;
      return run_ingest(root, out, config);
    }
    if (clones->parsed()) return run_clones(common, out);
    if (predict->parsed()) return run_predict(common, target_file);
    if (suggest->parsed()) return run_suggest(common, target_file, hybrid);
    if (eval_loc->parsed()) return run_evaluate_location(common, split, seed, out);
    if (eval_all->parsed()) {
      return run_evaluate_all(common, corpora, split, seed, hybrid.lambda, out);
    }
    if (consistency->parsed()) return run_consistency(common, root, out);
    if (lm_cmd->parsed()) return run_lm(common, out, lm);
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const CorpusError& e) {
    std::cerr << "corpus error: " << e.what() << "\n";
    return kCorpus;
  } catch (const EvaluationError& e) {
    std::cerr << "evaluation error: " << e.what() << "\n";
    return kEvaluation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kCorpus;
  }
  return kUsage;
}
