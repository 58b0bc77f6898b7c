#include "logclone/corpus_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>

#include <json.hpp>

#include "logclone/errors.hpp"
#include "logclone/java_lexer.hpp"

namespace logclone {
namespace {

using nlohmann::json;

json lps_to_json(const LogPrintStatement& lps) {
  return json{{"lps_id", lps.lps_id},
              {"line", lps.line},
              {"level", to_string(lps.level)},
              {"raw_call", lps.raw_call},
              {"lsd_tokens", lps.lsd_tokens},
              {"variables", lps.variables},
              {"placeholder_count", lps.placeholder_count},
              {"token_begin", lps.token_begin},
              {"token_end", lps.token_end}};
}

json method_to_json(const MethodDefinition& m) {
  json lps = json::array();
  for (const auto& p : m.lps_list) lps.push_back(lps_to_json(p));
  return json{{"record", "method"},
              {"method_id", m.method_id.value},
              {"file_id", m.file_id},
              {"file", m.file},
              {"qualified_name", m.qualified_name},
              {"start_line", m.start_line},
              {"end_line", m.end_line},
              {"raw_text", m.raw_text},
              {"tokens_full", token_sequence(m, TokenizeMode::kFull)},
              {"tokens_log_aware", token_sequence(m, TokenizeMode::kLogAware)},
              {"lps", std::move(lps)}};
}

MethodDefinition method_from_json(const json& j) {
  MethodDefinition m;
  m.method_id = MethodId{j.at("method_id").get<std::uint32_t>()};
  m.file_id = j.value("file_id", 0u);
  m.file = j.at("file").get<std::string>();
  m.qualified_name = j.at("qualified_name").get<std::string>();
  m.start_line = j.at("start_line").get<std::uint32_t>();
  m.end_line = j.at("end_line").get<std::uint32_t>();
  m.raw_text = j.at("raw_text").get<std::string>();
  m.tokens = lex_java(m.raw_text, m.start_line).tokens;
  for (const auto& p : j.at("lps")) {
    LogPrintStatement lps;
    lps.lps_id = p.value("lps_id", static_cast<std::uint32_t>(m.lps_list.size()));
    lps.method_id = m.method_id;
    lps.line = p.at("line").get<std::uint32_t>();
    const auto level = parse_level(p.at("level").get<std::string>());
    if (!level) throw CorpusError("unknown log level in corpus: " + p.at("level").dump());
    lps.level = *level;
    lps.raw_call = p.value("raw_call", std::string{});
    lps.lsd_tokens = p.at("lsd_tokens").get<std::vector<std::string>>();
    lps.variables = p.at("variables").get<std::vector<std::string>>();
    lps.placeholder_count = p.value("placeholder_count", 0u);
    lps.token_begin = p.value("token_begin", 0u);
    lps.token_end = p.value("token_end", 0u);
    if (lps.token_begin > lps.token_end || lps.token_end > m.tokens.size()) {
      throw CorpusError("LPS token span out of range in method " +
                        std::to_string(m.method_id.value));
    }
    m.lps_list.push_back(std::move(lps));
  }
  if (j.contains("tokens_full") &&
      j.at("tokens_full").get<std::vector<std::string>>() != token_sequence(m, TokenizeMode::kFull)) {
    throw CorpusError("tokens_full does not match raw_text for method " +
                      std::to_string(m.method_id.value));
  }
  return m;
}

}  // namespace

void write_corpus(std::ostream& out, const Corpus& corpus) {
  json files = json::array();
  for (const auto& f : corpus.files) files.push_back({{"file_id", f.file_id}, {"path", f.path}});
  json skipped = json::array();
  for (const auto& s : corpus.skipped) skipped.push_back({{"path", s.path}, {"reason", s.reason}});
  const json header{{"record", "header"},
                    {"schema", kCorpusSchema},
                    {"files", std::move(files)},
                    {"skipped", std::move(skipped)},
                    {"warnings", corpus.warnings}};
  out << header.dump() << '\n';
  for (const auto& m : corpus.methods) out << method_to_json(m).dump() << '\n';
}

Corpus read_corpus(std::istream& in) {
  Corpus corpus;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const json j = json::parse(line);
      if (j.value("record", std::string{"method"}) == "header") {
        if (j.value("schema", std::string{}) != kCorpusSchema) {
          throw CorpusError("unsupported corpus schema: " + j.value("schema", std::string{"?"}));
        }
        for (const auto& f : j.at("files")) {
          corpus.files.push_back(
              FileEntry{f.at("file_id").get<std::uint32_t>(), f.at("path").get<std::string>()});
        }
        for (const auto& s : j.value("skipped", json::array())) {
          corpus.skipped.push_back(
              SkipRecord{s.at("path").get<std::string>(), s.at("reason").get<std::string>()});
        }
        corpus.warnings = j.value("warnings", std::vector<std::string>{});
        continue;
      }
      MethodDefinition m = method_from_json(j);
      if (m.method_id.value != corpus.methods.size()) {
        throw CorpusError("method ids must be dense and ordered");
      }
      corpus.methods.push_back(std::move(m));
    } catch (const json::exception& e) {
      throw CorpusError("corpus line " + std::to_string(line_no) + ": " + e.what());
    } catch (const CorpusError& e) {
      throw CorpusError("corpus line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return corpus;
}

void save_corpus(const std::filesystem::path& path, const Corpus& corpus) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CorpusError("cannot write corpus file " + path.string());
  write_corpus(out, corpus);
}

Corpus load_corpus(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CorpusError("cannot open corpus file " + path.string());
  return read_corpus(in);
}

}  // namespace logclone
