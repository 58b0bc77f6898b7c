#include "logclone/corpus.hpp"

#include <fnmatch.h>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <regex>
#include <sstream>

#include "logclone/errors.hpp"
#include "logclone/java_lexer.hpp"
#include "parallel.hpp"

namespace logclone {
namespace {

namespace fs = std::filesystem;

bool is_open(const Token& t) { return t.is("(") || t.is("[") || t.is("{"); }
bool is_close(const Token& t) { return t.is(")") || t.is("]") || t.is("}"); }

// Index of the parenthesis matching tokens[open], or npos.
std::size_t match_forward(const std::vector<Token>& tokens, std::size_t open) {
  int depth = 0;
  for (std::size_t i = open; i < tokens.size(); ++i) {
    if (is_open(tokens[i])) ++depth;
    if (is_close(tokens[i]) && --depth == 0) return i;
  }
  return std::string::npos;
}

std::size_t match_backward(const std::vector<Token>& tokens, std::size_t close, std::size_t floor) {
  int depth = 0;
  for (std::size_t i = close + 1; i-- > floor;) {
    if (tokens[i].is(")")) ++depth;
    if (tokens[i].is("(") && --depth == 0) return i;
  }
  return std::string::npos;
}

enum class Scope { kType, kMethod, kOther };

struct Frame {
  Scope scope;
  std::size_t decl_start = 0;
  std::string name;
};

struct DeclInfo {
  Scope scope = Scope::kOther;
  std::size_t start = 0;
  std::string name;
};

// Decides what the `{` at tokens[brace] opens when it appears at file or type
// body level.
DeclInfo classify_declaration(const std::vector<Token>& tokens, std::size_t brace) {
  std::size_t start = brace;
  int depth = 0;
  while (start > 0) {
    const Token& t = tokens[start - 1];
    if (t.is(")") || t.is("]")) {
      ++depth;
    } else if (t.is("(") || t.is("[")) {
      if (depth == 0) break;
      --depth;
    } else if (depth == 0 && (t.is(";") || t.is("{") || t.is("}"))) {
      break;
    }
    --start;
  }
  DeclInfo info;
  info.start = start;
  if (start == brace) return info;

  depth = 0;
  for (std::size_t i = start; i < brace; ++i) {
    const Token& t = tokens[i];
    if (t.is("(")) ++depth;
    if (t.is(")")) --depth;
    if (depth != 0) continue;
    const bool after_dot = i > start && tokens[i - 1].is(".");
    const bool type_keyword = t.kind == TokenKind::kKeyword &&
                              (t.is("class") || t.is("interface") || t.is("enum")) && !after_dot;
    const bool record_keyword = t.is_identifier() && t.is("record") && i + 2 < brace &&
                                tokens[i + 1].is_identifier() &&
                                (tokens[i + 2].is("(") || tokens[i + 2].is("<"));
    if (type_keyword || record_keyword) {
      info.scope = Scope::kType;
      if (i + 1 < brace && tokens[i + 1].is_identifier()) info.name = tokens[i + 1].text;
      return info;
    }
  }

  // Method: `... name ( params ) [throws A, B.C] {`
  std::size_t j = brace - 1;
  if (!tokens[j].is(")")) {
    std::size_t k = j;
    bool found_throws = false;
    while (k > start) {
      const Token& t = tokens[k];
      if (t.is("throws")) {
        found_throws = true;
        break;
      }
      const bool allowed = t.is_identifier() || t.is(".") || t.is(",") || t.is("<") ||
                           t.is(">") || t.is(">>") || t.is("?") || t.is("@");
      if (!allowed) break;
      --k;
    }
    if (!found_throws || k == start) return info;
    j = k - 1;
    if (!tokens[j].is(")")) return info;
  }
  const std::size_t open = match_backward(tokens, j, start);
  if (open == std::string::npos || open == start) return info;
  const Token& name = tokens[open - 1];
  if (!name.is_identifier()) return info;
  if (open - 1 > start && tokens[open - 2].is(".")) return info;
  depth = 0;
  for (std::size_t i = start; i + 1 < open; ++i) {
    const Token& t = tokens[i];
    if (t.is("(")) ++depth;
    if (t.is(")")) --depth;
    if (depth == 0 && (t.is("=") || t.is("new") || t.is("->"))) return info;
  }
  info.scope = Scope::kMethod;
  info.name = name.text;
  return info;
}

std::string qualified_name(const std::vector<Frame>& stack, const std::string& method) {
  std::string out;
  for (const Frame& f : stack) {
    if (f.scope != Scope::kType || f.name.empty()) continue;
    out += f.name;
    out += '.';
  }
  return out + method;
}

bool icase_regex_match(const std::vector<std::regex>& patterns, const std::string& text) {
  return std::any_of(patterns.begin(), patterns.end(),
                     [&](const std::regex& re) { return std::regex_search(text, re); });
}

std::vector<std::regex> compile_patterns(const std::vector<std::string>& patterns) {
  std::vector<std::regex> out;
  out.reserve(patterns.size());
  for (const auto& p : patterns) {
    try {
      out.emplace_back(p, std::regex::ECMAScript | std::regex::icase);
    } catch (const std::regex_error& e) {
      throw InvalidArgument("invalid logger pattern '" + p + "': " + e.what());
    }
  }
  return out;
}

// Contents of a Java string literal or text block with escapes resolved enough
// for description normalization.
std::string unquote(std::string_view literal) {
  std::size_t delim = literal.starts_with("\"\"\"") ? 3 : 1;
  if (literal.size() < 2 * delim) delim = std::min<std::size_t>(1, literal.size());
  std::string_view body = literal.substr(delim);
  if (body.size() >= delim && body.substr(body.size() - delim) == literal.substr(0, delim)) {
    body.remove_suffix(delim);
  }
  std::string out;
  out.reserve(body.size());
  for (std::size_t i = 0; i < body.size(); ++i) {
    if (body[i] != '\\' || i + 1 == body.size()) {
      out += body[i];
      continue;
    }
    const char next = body[++i];
    switch (next) {
      case 'n':
      case 't':
      case 'r':
      case 'b':
      case 'f':
        out += ' ';
        break;
      default:
        out += next;
    }
  }
  return out;
}

std::string trimmed(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::string slice_text(const MethodDefinition& method, std::size_t first, std::size_t last) {
  const auto begin = method.tokens[first].offset;
  const auto end = method.tokens[last].end();
  return trimmed(std::string_view(method.raw_text).substr(begin, end - begin));
}

bool valid_utf8(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size()) {
    const unsigned char c = s[i];
    std::size_t extra = 0;
    if (c == 0) return false;
    if (c < 0x80) {
      extra = 0;
    } else if ((c & 0xE0) == 0xC0) {
      extra = 1;
    } else if ((c & 0xF0) == 0xE0) {
      extra = 2;
    } else if ((c & 0xF8) == 0xF0) {
      extra = 3;
    } else {
      return false;
    }
    if (extra > 0 && i + extra >= s.size()) return false;
    for (std::size_t k = 1; k <= extra; ++k) {
      if ((static_cast<unsigned char>(s[i + k]) & 0xC0) != 0x80) return false;
    }
    i += extra + 1;
  }
  return true;
}

struct FileResult {
  std::vector<MethodDefinition> methods;
  std::vector<std::string> warnings;
};

Corpus assemble(std::vector<SourceFile> files, const IngestConfig& config,
                std::vector<SkipRecord> skipped) {
  std::sort(files.begin(), files.end(),
            [](const SourceFile& a, const SourceFile& b) { return a.path < b.path; });
  std::vector<FileResult> results(files.size());
  detail::parallel_for(files.size(), config.threads, [&](std::size_t i) {
    files[i].file_id = static_cast<std::uint32_t>(i);
    Extraction ex = extract_methods(files[i], config);
    results[i].methods = std::move(ex.methods);
    results[i].warnings = std::move(ex.warnings);
  });

  Corpus corpus;
  corpus.skipped = std::move(skipped);
  for (std::size_t i = 0; i < files.size(); ++i) {
    corpus.files.push_back(FileEntry{files[i].file_id, files[i].path});
    for (auto& w : results[i].warnings) corpus.warnings.push_back(std::move(w));
    for (auto& m : results[i].methods) {
      m.method_id = MethodId{static_cast<std::uint32_t>(corpus.methods.size())};
      for (auto& lps : m.lps_list) lps.method_id = m.method_id;
      corpus.methods.push_back(std::move(m));
    }
  }
  std::sort(corpus.skipped.begin(), corpus.skipped.end(),
            [](const SkipRecord& a, const SkipRecord& b) { return a.path < b.path; });
  return corpus;
}

}  // namespace

SourceFile make_source_file(std::uint32_t file_id, std::string path, std::string content) {
  SourceFile file{file_id, std::move(path), std::move(content), {}};
  file.line_index.push_back(0);
  for (std::size_t i = 0; i < file.content.size(); ++i) {
    if (file.content[i] == '\n' && i + 1 < file.content.size()) {
      file.line_index.push_back(static_cast<std::uint32_t>(i + 1));
    }
  }
  return file;
}

Extraction extract_methods(const SourceFile& file, const IngestConfig& config, MethodId first_id) {
  Extraction out;
  LexResult lexed = lex_java(file.content);
  const auto& tokens = lexed.tokens;
  if (lexed.unterminated) {
    out.warnings.push_back(file.path + ": unterminated comment or literal");
  }

  struct Found {
    std::size_t start;
    std::size_t close;
    std::string name;
  };
  std::vector<Found> found;
  std::vector<Frame> stack;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const Token& t = tokens[i];
    if (t.is("{")) {
      const Scope enclosing = stack.empty() ? Scope::kType : stack.back().scope;
      if (enclosing != Scope::kType) {
        stack.push_back(Frame{Scope::kOther, i, {}});
        continue;
      }
      DeclInfo decl = classify_declaration(tokens, i);
      if (decl.scope == Scope::kMethod) decl.name = qualified_name(stack, decl.name);
      stack.push_back(Frame{decl.scope, decl.start, std::move(decl.name)});
    } else if (t.is("}")) {
      if (stack.empty()) {
        out.malformed = true;
        out.warnings.push_back(file.path + ":" + std::to_string(t.line) + ": unmatched '}'");
        continue;
      }
      Frame frame = std::move(stack.back());
      stack.pop_back();
      if (frame.scope == Scope::kMethod) found.push_back(Found{frame.decl_start, i, frame.name});
    }
  }
  if (!stack.empty()) {
    out.malformed = true;
    out.warnings.push_back(file.path + ": unbalanced braces at end of file");
  }

  std::sort(found.begin(), found.end(),
            [](const Found& a, const Found& b) { return a.start < b.start; });
  for (const Found& f : found) {
    const Token& first = tokens[f.start];
    const Token& last = tokens[f.close];
    if (last.line - first.line + 1 < config.min_method_lines) continue;
    MethodDefinition m;
    m.method_id = MethodId{first_id.value + static_cast<std::uint32_t>(out.methods.size())};
    m.file_id = file.file_id;
    m.file = file.path;
    m.qualified_name = f.name;
    m.start_line = first.line;
    m.end_line = last.line;
    m.raw_text = file.content.substr(first.offset, last.end() - first.offset);
    m.tokens.assign(tokens.begin() + static_cast<std::ptrdiff_t>(f.start),
                    tokens.begin() + static_cast<std::ptrdiff_t>(f.close) + 1);
    for (Token& tok : m.tokens) tok.offset -= first.offset;
    m.lps_list = detect_and_parse_lps(m, config);
    out.methods.push_back(std::move(m));
  }
  return out;
}

std::vector<std::string> normalize_description(std::string_view text, bool split_camel_case) {
  std::vector<std::string> out;
  auto flush_segment = [&](std::string_view segment) {
    std::string spaced;
    spaced.reserve(segment.size() * 2);
    for (std::size_t i = 0; i < segment.size(); ++i) {
      const unsigned char c = segment[i];
      if (split_camel_case && i > 0 && std::isupper(c)) {
        const unsigned char prev = segment[i - 1];
        if (std::islower(prev) || std::isdigit(prev)) spaced += ' ';
      }
      if (std::isalnum(c) || c >= 0x80) {
        spaced += static_cast<char>(std::tolower(c));
      } else {
        spaced += ' ';
      }
    }
    std::istringstream words(spaced);
    for (std::string w; words >> w;) out.push_back(std::move(w));
  };
  std::size_t pos = 0;
  while (true) {
    const auto hole = text.find("{}", pos);
    flush_segment(text.substr(pos, hole == std::string_view::npos ? std::string_view::npos
                                                                   : hole - pos));
    if (hole == std::string_view::npos) break;
    out.emplace_back(kVarToken);
    pos = hole + 2;
  }
  return out;
}

std::vector<LogPrintStatement> detect_and_parse_lps(const MethodDefinition& method,
                                                    const IngestConfig& config) {
  const auto patterns = compile_patterns(config.logger_patterns);
  const auto& tokens = method.tokens;
  std::vector<LogPrintStatement> out;
  for (std::size_t p = 0; p + 3 < tokens.size(); ++p) {
    if (!tokens[p].is_identifier() || !tokens[p + 1].is(".") || !tokens[p + 2].is_identifier() ||
        !tokens[p + 3].is("(")) {
      continue;
    }
    const auto level = parse_level(tokens[p + 2].text);
    if (!level || !icase_regex_match(patterns, tokens[p].text)) continue;
    const std::size_t close = match_forward(tokens, p + 3);
    if (close == std::string::npos) continue;

    std::size_t begin = p;
    while (begin >= 2 && tokens[begin - 1].is(".") &&
           (tokens[begin - 2].is_identifier() || tokens[begin - 2].is("this"))) {
      begin -= 2;
    }
    std::size_t end = close + 1;
    if (end < tokens.size() && tokens[end].is(";")) ++end;

    // Top-level arguments as [first, last] token ranges.
    std::vector<std::pair<std::size_t, std::size_t>> args;
    {
      int depth = 0;
      std::size_t arg_start = p + 4;
      for (std::size_t i = p + 4; i < close; ++i) {
        if (is_open(tokens[i])) ++depth;
        if (is_close(tokens[i])) --depth;
        if (depth == 0 && tokens[i].is(",")) {
          if (i > arg_start) args.emplace_back(arg_start, i - 1);
          arg_start = i + 1;
        }
      }
      if (close > arg_start) args.emplace_back(arg_start, close - 1);
    }

    LogPrintStatement lps;
    lps.lps_id = static_cast<std::uint32_t>(out.size());
    lps.method_id = method.method_id;
    lps.line = tokens[p].line;
    lps.level = *level;
    lps.raw_call = slice_text(method, begin, end - 1);
    lps.token_begin = static_cast<std::uint32_t>(begin);
    lps.token_end = static_cast<std::uint32_t>(end);

    if (!args.empty()) {
      const auto [first, last] = args.front();
      std::vector<std::pair<std::size_t, std::size_t>> fragments;
      int depth = 0;
      std::size_t frag_start = first;
      for (std::size_t i = first; i <= last; ++i) {
        if (is_open(tokens[i])) ++depth;
        if (is_close(tokens[i])) --depth;
        if (depth == 0 && tokens[i].is("+")) {
          if (i > frag_start) fragments.emplace_back(frag_start, i - 1);
          frag_start = i + 1;
        }
      }
      if (last >= frag_start) fragments.emplace_back(frag_start, last);

      auto is_quoted = [&](const std::pair<std::size_t, std::size_t>& f) {
        return f.first == f.second && tokens[f.first].kind == TokenKind::kString;
      };
      if (std::none_of(fragments.begin(), fragments.end(), is_quoted)) {
        lps.variables.push_back(slice_text(method, first, last));
        lps.lsd_tokens.emplace_back(kVarToken);
      } else {
        for (const auto& f : fragments) {
          if (is_quoted(f)) {
            for (auto& w : normalize_description(unquote(tokens[f.first].text),
                                                 config.split_camel_case)) {
              lps.lsd_tokens.push_back(std::move(w));
            }
          } else {
            lps.variables.push_back(slice_text(method, f.first, f.second));
            lps.lsd_tokens.emplace_back(kVarToken);
          }
        }
      }
      for (std::size_t a = 1; a < args.size(); ++a) {
        lps.variables.push_back(slice_text(method, args[a].first, args[a].second));
      }
    }
    lps.placeholder_count = static_cast<std::uint32_t>(
        std::count(lps.lsd_tokens.begin(), lps.lsd_tokens.end(), kVarToken));
    out.push_back(std::move(lps));
    p = close;
  }
  return out;
}

std::vector<std::string> token_sequence(const MethodDefinition& method, TokenizeMode mode) {
  std::vector<bool> masked(method.tokens.size(), false);
  if (mode == TokenizeMode::kLogAware) {
    for (const auto& lps : method.lps_list) {
      for (std::size_t i = lps.token_begin; i < lps.token_end && i < masked.size(); ++i) {
        masked[i] = true;
      }
    }
  }
  std::vector<std::string> out;
  out.reserve(method.tokens.size());
  for (std::size_t i = 0; i < method.tokens.size(); ++i) {
    if (!masked[i]) out.push_back(bag_text(method.tokens[i]));
  }
  return out;
}

TokenBag tokenize_method(const MethodDefinition& method, TokenizeMode mode) {
  TokenBag bag;
  for (auto& t : token_sequence(method, mode)) ++bag[std::move(t)];
  return bag;
}

std::uint64_t bag_size(const TokenBag& bag) {
  std::uint64_t n = 0;
  for (const auto& [_, c] : bag) n += c;
  return n;
}

std::vector<std::string> identifiers_outside_logs(const MethodDefinition& method) {
  std::vector<bool> masked(method.tokens.size(), false);
  for (const auto& lps : method.lps_list) {
    for (std::size_t i = lps.token_begin; i < lps.token_end && i < masked.size(); ++i) {
      masked[i] = true;
    }
  }
  std::vector<std::string> out;
  for (std::size_t i = 0; i < method.tokens.size(); ++i) {
    if (!masked[i] && method.tokens[i].is_identifier()) out.push_back(method.tokens[i].text);
  }
  return out;
}

Corpus corpus_from_sources(std::vector<std::pair<std::string, std::string>> sources,
                           const IngestConfig& config) {
  std::vector<SourceFile> files;
  files.reserve(sources.size());
  for (auto& [path, content] : sources) {
    files.push_back(make_source_file(0, std::move(path), std::move(content)));
  }
  return assemble(std::move(files), config, {});
}

Corpus scan_corpus(const std::filesystem::path& root, const IngestConfig& config) {
  std::error_code ec;
  if (!fs::is_directory(root, ec)) {
    throw CorpusError("corpus root is not a readable directory: " + root.string());
  }
  fs::recursive_directory_iterator it(root, fs::directory_options::skip_permission_denied, ec);
  if (ec) throw CorpusError("cannot read corpus root " + root.string() + ": " + ec.message());

  std::vector<SourceFile> files;
  std::vector<SkipRecord> skipped;
  for (; it != fs::recursive_directory_iterator(); it.increment(ec)) {
    if (ec) {
      skipped.push_back(SkipRecord{it->path().string(), "unreadable: " + ec.message()});
      ec.clear();
      continue;
    }
    if (!it->is_regular_file(ec)) continue;
    const std::string rel = fs::relative(it->path(), root, ec).generic_string();
    const std::string ext = it->path().extension().string();
    if (std::find(config.extensions.begin(), config.extensions.end(), ext) ==
        config.extensions.end()) {
      skipped.push_back(SkipRecord{rel, "extension filter"});
      continue;
    }
    const bool excluded = std::any_of(
        config.exclude_globs.begin(), config.exclude_globs.end(),
        [&](const std::string& glob) { return ::fnmatch(glob.c_str(), rel.c_str(), 0) == 0; });
    if (excluded) {
      skipped.push_back(SkipRecord{rel, "excluded"});
      continue;
    }
    std::ifstream in(it->path(), std::ios::binary);
    if (!in) {
      skipped.push_back(SkipRecord{rel, "unreadable"});
      continue;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    std::string content = buf.str();
    if (!valid_utf8(content)) {
      skipped.push_back(SkipRecord{rel, "undecodable (not UTF-8 text)"});
      continue;
    }
    files.push_back(make_source_file(0, rel, std::move(content)));
  }
  return assemble(std::move(files), config, std::move(skipped));
}

}  // namespace logclone
