#pragma once

#include <compare>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "logclone/token.hpp"

namespace logclone {

// Dense identifier of a method: its position in the canonical corpus ordering
// (path, start_line). Methods ingested outside a corpus get ids past its end.
struct MethodId {
  std::uint32_t value = 0;

  friend auto operator<=>(const MethodId&, const MethodId&) = default;
};

struct IngestConfig {
  std::vector<std::string> extensions = {".java"};
  // fnmatch-style patterns tested against the path relative to the scan root.
  std::vector<std::string> exclude_globs;
  std::uint32_t min_method_lines = 3;
  // Case-insensitive regular expressions matched against the receiver of a
  // `<receiver>.<level>(...)` call.
  std::vector<std::string> logger_patterns = {default_logger_pattern()};
  bool split_camel_case = true;
  // Worker threads for scanning; 0 picks the hardware concurrency.
  unsigned threads = 0;

  static std::string default_logger_pattern() { return "^(my|s_?|m_?|_)?log(ger)?$"; }
};

struct SourceFile {
  std::uint32_t file_id = 0;
  std::string path;
  std::string content;
  // Byte offset of the first character of every line.
  std::vector<std::uint32_t> line_index;
};

SourceFile make_source_file(std::uint32_t file_id, std::string path, std::string content);

struct LogPrintStatement {
  std::uint32_t lps_id = 0;  // ordinal within the method, in line order
  MethodId method_id;
  std::uint32_t line = 0;
  Level level = Level::kInfo;
  std::string raw_call;
  std::vector<std::string> lsd_tokens;
  std::vector<std::string> variables;
  std::uint32_t placeholder_count = 0;
  // Half-open span of the call in MethodDefinition::tokens, trailing `;` included.
  std::uint32_t token_begin = 0;
  std::uint32_t token_end = 0;

  friend bool operator==(const LogPrintStatement&, const LogPrintStatement&) = default;
};

struct MethodDefinition {
  MethodId method_id;
  std::uint32_t file_id = 0;
  std::string file;
  std::string qualified_name;
  std::uint32_t start_line = 0;
  std::uint32_t end_line = 0;
  // Source slice from the first signature token to the closing brace.
  std::string raw_text;
  // Token offsets are relative to raw_text; lines are file lines.
  std::vector<Token> tokens;
  std::vector<LogPrintStatement> lps_list;

  bool has_log() const { return !lps_list.empty(); }

  friend bool operator==(const MethodDefinition&, const MethodDefinition&) = default;
};

struct FileEntry {
  std::uint32_t file_id = 0;
  std::string path;

  friend bool operator==(const FileEntry&, const FileEntry&) = default;
};

struct SkipRecord {
  std::string path;
  std::string reason;

  friend bool operator==(const SkipRecord&, const SkipRecord&) = default;
};

struct Corpus {
  std::vector<FileEntry> files;
  // methods[i].method_id.value == i
  std::vector<MethodDefinition> methods;
  std::vector<SkipRecord> skipped;
  std::vector<std::string> warnings;

  const MethodDefinition& method(MethodId id) const { return methods.at(id.value); }

  friend bool operator==(const Corpus&, const Corpus&) = default;
};

struct Extraction {
  std::vector<MethodDefinition> methods;
  std::vector<std::string> warnings;
  bool malformed = false;
};

// Finds method bodies by signature matching plus balanced-brace tracking over
// the token stream. Braces inside comments and literals never count. Ids are
// assigned consecutively from `first_id` in (start_line) order.
Extraction extract_methods(const SourceFile& file, const IngestConfig& config,
                           MethodId first_id = {});

// Detects `<logger>.<level>(...)` calls at any nesting depth of the method.
std::vector<LogPrintStatement> detect_and_parse_lps(const MethodDefinition& method,
                                                    const IngestConfig& config);

// Lowercased word tokens of a log message literal; `{}` becomes <var>.
std::vector<std::string> normalize_description(std::string_view text, bool split_camel_case);

enum class TokenizeMode { kLogAware, kFull };

using TokenBag = std::map<std::string, std::uint32_t, std::less<>>;

// Ordered bag tokens: comments dropped, string literals as <str>; in log-aware
// mode every token inside an LPS span is removed.
std::vector<std::string> token_sequence(const MethodDefinition& method, TokenizeMode mode);
TokenBag tokenize_method(const MethodDefinition& method, TokenizeMode mode);
std::uint64_t bag_size(const TokenBag& bag);

// Identifier tokens of the method that lie outside every LPS span.
std::vector<std::string> identifiers_outside_logs(const MethodDefinition& method);

// Throws CorpusError if `root` is not a readable directory. Unreadable or
// undecodable files become SkipRecords.
Corpus scan_corpus(const std::filesystem::path& root, const IngestConfig& config = {});

// Builds a corpus from in-memory (path, content) pairs, ordered by path.
Corpus corpus_from_sources(std::vector<std::pair<std::string, std::string>> sources,
                           const IngestConfig& config = {});

}  // namespace logclone

template <>
struct std::hash<logclone::MethodId> {
  std::size_t operator()(const logclone::MethodId& id) const noexcept {
    return std::hash<std::uint32_t>{}(id.value);
  }
};
