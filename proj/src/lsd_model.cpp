#include "logclone/lsd_model.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "logclone/errors.hpp"
#include "logclone/token.hpp"

namespace logclone {
namespace {

bool is_special(std::string_view token) {
  return token == kBos || token == kEos || token == kUnk || token == kVarToken;
}

std::string join_context(std::span<const std::string> tokens) {
  std::string key;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) key += '\x1f';
    key += tokens[i];
  }
  return key;
}

}  // namespace

void LmParams::validate() const {
  if (order < 1) throw InvalidArgument("language model order must be >= 1");
  if (!(add_k > 0.0)) throw InvalidArgument("add-k constant must be positive");
  if (!(backoff_weight > 0.0 && backoff_weight <= 1.0)) {
    throw InvalidArgument("backoff weight must lie in (0, 1]");
  }
}

bool LsdLanguageModel::in_vocabulary(std::string_view token) const {
  return std::binary_search(vocabulary_.begin(), vocabulary_.end(), token);
}

std::string LsdLanguageModel::context_token(const std::string& token) const {
  if (is_special(token)) return token;
  const auto it = frequency_.find(token);
  if (it == frequency_.end() || it->second <= 1) return std::string(kUnk);
  return token;
}

double LsdLanguageModel::raw_score(std::span<const Table* const> tables, std::string_view token,
                                   std::size_t longest) const {
  for (std::size_t len = longest; len >= 1; --len) {
    const Table* table = tables[len];
    if (table == nullptr) continue;
    const auto hit = table->next.find(token);
    if (hit != table->next.end()) {
      return std::pow(params_.backoff_weight, static_cast<double>(longest - len)) *
             static_cast<double>(hit->second) / static_cast<double>(table->total);
    }
  }
  const Table& unigram = *tables[0];
  const auto hit = unigram.next.find(token);
  const double count = hit == unigram.next.end() ? 0.0 : static_cast<double>(hit->second);
  // Support excludes <s>.
  const double support = static_cast<double>(vocabulary_.size() - 1);
  return std::pow(params_.backoff_weight, static_cast<double>(longest)) * (count + params_.add_k) /
         (static_cast<double>(unigram.total) + params_.add_k * support);
}

std::vector<TokenProb> LsdLanguageModel::distribution(std::span<const std::string> context) const {
  std::vector<TokenProb> out;
  if (empty_) {
    out.emplace_back(std::string(kEos), 1.0);
    return out;
  }
  const std::size_t keep = std::min<std::size_t>(context.size(), params_.order - 1);
  const auto literal = context.last(keep);
  std::vector<std::string> mapped;
  for (const auto& t : literal) mapped.push_back(context_token(t));

  // tables[n]: counts following the last n context tokens, looked up verbatim
  // first and with rare tokens read as <unk> second.
  std::vector<const Table*> tables(keep + 1, nullptr);
  tables[0] = &counts_[0].begin()->second;
  std::size_t longest = 0;
  for (std::size_t len = 1; len <= keep; ++len) {
    const auto& level = counts_[len];
    auto it = level.find(join_context(literal.last(len)));
    if (it == level.end()) it = level.find(join_context(std::span<const std::string>(mapped).last(len)));
    if (it != level.end()) {
      tables[len] = &it->second;
      longest = len;
    }
  }
  double total = 0.0;
  out.reserve(vocabulary_.size());
  for (const auto& token : vocabulary_) {
    if (token == kBos) continue;
    const double s = raw_score(tables, token, longest);
    out.emplace_back(token, s);
    total += s;
  }
  for (auto& [_, p] : out) p /= total;
  return out;
}

double LsdLanguageModel::probability(std::span<const std::string> context,
                                     std::string_view token) const {
  for (const auto& [t, p] : distribution(context)) {
    if (t == token) return p;
  }
  return 0.0;
}

LsdLanguageModel train_lsd_lm(std::span<const TokenSeq> sequences, const LmParams& params) {
  params.validate();
  LsdLanguageModel model;
  model.params_ = params;
  model.counts_.resize(params.order);
  std::vector<std::string> vocab = {std::string(kBos), std::string(kEos), std::string(kVarToken),
                                    std::string(kUnk)};
  for (const auto& seq : sequences) {
    for (const auto& t : seq) {
      ++model.frequency_[t];
      vocab.push_back(t);
    }
  }
  std::sort(vocab.begin(), vocab.end());
  vocab.erase(std::unique(vocab.begin(), vocab.end()), vocab.end());
  model.vocabulary_ = std::move(vocab);
  model.empty_ = sequences.empty();
  if (model.empty_) return model;

  const std::size_t pad = params.order - 1;
  model.counts_[0][""];  // the unigram table exists even with no tokens
  for (const auto& seq : sequences) {
    std::vector<std::string> padded(pad, std::string(kBos));
    padded.insert(padded.end(), seq.begin(), seq.end());
    padded.emplace_back(kEos);
    std::vector<std::string> mapped;
    mapped.reserve(padded.size());
    for (const auto& t : padded) mapped.push_back(model.context_token(t));
    for (std::size_t i = pad; i < padded.size(); ++i) {
      for (std::size_t len = 0; len <= pad; ++len) {
        const auto literal = join_context(std::span<const std::string>(padded).subspan(i - len, len));
        const auto rare = join_context(std::span<const std::string>(mapped).subspan(i - len, len));
        for (const auto* key : {&literal, &rare}) {
          if (key == &rare && rare == literal) break;
          auto& table = model.counts_[len][*key];
          ++table.total;
          ++table.next[padded[i]];
        }
      }
    }
  }
  return model;
}

std::vector<TokenProb> next_token_distribution(const LsdLanguageModel& model,
                                               std::span<const std::string> context,
                                               std::size_t k) {
  auto dist = model.distribution(context);
  std::stable_sort(dist.begin(), dist.end(), [](const TokenProb& a, const TokenProb& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  if (dist.size() > k) dist.resize(k);
  return dist;
}

std::string LsdLanguageModel::to_json() const {
  nlohmann::json counts = nlohmann::json::array();
  for (const auto& level : counts_) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& [ctx, table] : level) {
      nlohmann::json context = nlohmann::json::array();
      std::size_t start = 0;
      if (!ctx.empty()) {
        while (true) {
          const auto sep = ctx.find('\x1f', start);
          context.push_back(ctx.substr(start, sep - start));
          if (sep == std::string::npos) break;
          start = sep + 1;
        }
      }
      rows.push_back({{"context", std::move(context)}, {"next", table.next}});
    }
    counts.push_back(std::move(rows));
  }
  const nlohmann::json doc{{"schema", "logclone-lm/1"},
                           {"order", params_.order},
                           {"add_k", params_.add_k},
                           {"backoff_weight", params_.backoff_weight},
                           {"empty", empty_},
                           {"vocabulary", vocabulary_},
                           {"frequency", frequency_},
                           {"counts", std::move(counts)}};
  return doc.dump();
}

LsdLanguageModel LsdLanguageModel::from_json(std::string_view text) {
  try {
    const auto doc = nlohmann::json::parse(text);
    if (doc.at("schema") != "logclone-lm/1") throw CorpusError("unsupported language model schema");
    LsdLanguageModel model;
    model.params_.order = doc.at("order").get<std::uint32_t>();
    model.params_.add_k = doc.at("add_k").get<double>();
    model.params_.backoff_weight = doc.at("backoff_weight").get<double>();
    model.params_.validate();
    model.empty_ = doc.at("empty").get<bool>();
    model.vocabulary_ = doc.at("vocabulary").get<std::vector<std::string>>();
    for (const auto& [token, count] : doc.at("frequency").items()) {
      model.frequency_[token] = count.get<std::uint64_t>();
    }
    model.counts_.resize(model.params_.order);
    const auto& counts = doc.at("counts");
    if (counts.size() != model.params_.order) throw CorpusError("count table order mismatch");
    for (std::size_t len = 0; len < counts.size(); ++len) {
      for (const auto& row : counts[len]) {
        const auto context = row.at("context").get<std::vector<std::string>>();
        Table& table = model.counts_[len][join_context(context)];
        for (const auto& [token, count] : row.at("next").items()) {
          table.next[token] = count.get<std::uint64_t>();
          table.total += count.get<std::uint64_t>();
        }
      }
    }
    return model;
  } catch (const nlohmann::json::exception& e) {
    throw CorpusError(std::string("malformed language model: ") + e.what());
  }
}

}  // namespace logclone
