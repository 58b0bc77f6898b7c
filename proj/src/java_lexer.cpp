#include "logclone/java_lexer.hpp"

#include <algorithm>
#include <array>

namespace logclone {
namespace {

constexpr std::array<std::string_view, 53> kKeywords = {
    "abstract", "assert",     "boolean",   "break",     "byte",      "case",     "catch",
    "char",     "class",      "const",     "continue",  "default",   "do",       "double",
    "else",     "enum",       "extends",   "final",     "finally",   "float",    "for",
    "goto",     "if",         "implements", "import",   "instanceof", "int",     "interface",
    "long",     "native",     "new",       "package",   "private",   "protected", "public",
    "return",   "short",      "static",    "strictfp",  "super",     "switch",   "synchronized",
    "this",     "throw",      "throws",    "transient", "try",       "void",     "volatile",
    "while",    "true",       "false",     "null"};

// Longest operators first so a greedy prefix match finds the maximal munch.
constexpr std::array<std::string_view, 25> kOperators = {
    ">>>=", "<<=", ">>=", ">>>", "...", "->", "::", "++", "--", "&&", "||", "==", "!=", "<=",
    ">=",   "+=",  "-=",  "*=",  "/=",  "%=", "&=", "|=", "^=", "<<", ">>"};

bool is_ident_start(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' || c == '$' || c >= 0x80;
}

bool is_ident_part(unsigned char c) { return is_ident_start(c) || (c >= '0' && c <= '9'); }

bool is_digit(unsigned char c) { return c >= '0' && c <= '9'; }

class Lexer {
 public:
  Lexer(std::string_view text, std::uint32_t first_line) : text_(text), line_(first_line) {}

  LexResult run() {
    while (pos_ < text_.size()) {
      const unsigned char c = text_[pos_];
      if (c == '\n') {
        ++line_;
        ++pos_;
      } else if (c == ' ' || c == '\t' || c == '\r' || c == '\f' || c == '\v') {
        ++pos_;
      } else if (starts_with("//")) {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else if (starts_with("/*")) {
        skip_block_comment();
      } else if (starts_with("\"\"\"")) {
        quoted(TokenKind::kString, 3);
      } else if (c == '"') {
        quoted(TokenKind::kString, 1);
      } else if (c == '\'') {
        quoted(TokenKind::kChar, 1);
      } else if (is_digit(c) || (c == '.' && pos_ + 1 < text_.size() && is_digit(text_[pos_ + 1]))) {
        number();
      } else if (is_ident_start(c)) {
        identifier();
      } else {
        op();
      }
    }
    return std::move(result_);
  }

 private:
  bool starts_with(std::string_view s) const { return text_.substr(pos_).starts_with(s); }

  void emit(TokenKind kind, std::size_t begin, std::uint32_t line) {
    result_.tokens.push_back(Token{kind, std::string(text_.substr(begin, pos_ - begin)), line,
                                   static_cast<std::uint32_t>(begin)});
  }

  void skip_block_comment() {
    pos_ += 2;
    while (pos_ < text_.size() && !starts_with("*/")) {
      if (text_[pos_] == '\n') ++line_;
      ++pos_;
    }
    if (pos_ >= text_.size()) {
      result_.unterminated = true;
      return;
    }
    pos_ += 2;
  }

  void quoted(TokenKind kind, std::size_t delim_len) {
    const std::size_t begin = pos_;
    const std::uint32_t line = line_;
    const std::string_view delim = text_.substr(pos_, delim_len);
    pos_ += delim_len;
    bool closed = false;
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '\\') {
        if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '\n') ++line_;
        pos_ += 2;
        continue;
      }
      if (starts_with(delim)) {
        pos_ += delim_len;
        closed = true;
        break;
      }
      // A plain literal cannot span lines; stop at the newline so one bad quote
      // does not swallow the rest of the file.
      if (c == '\n') {
        if (delim_len == 1) break;
        ++line_;
      }
      ++pos_;
    }
    pos_ = std::min(pos_, text_.size());
    if (!closed) result_.unterminated = true;
    emit(kind, begin, line);
  }

  void number() {
    const std::size_t begin = pos_;
    while (pos_ < text_.size()) {
      const unsigned char c = text_[pos_];
      if (is_ident_part(c) || c == '.') {
        ++pos_;
      } else if ((c == '+' || c == '-') && pos_ > begin) {
        const char prev = text_[pos_ - 1];
        const bool hex = text_.substr(begin, 2) == "0x" || text_.substr(begin, 2) == "0X";
        if ((!hex && (prev == 'e' || prev == 'E')) || (hex && (prev == 'p' || prev == 'P'))) {
          ++pos_;
        } else {
          break;
        }
      } else {
        break;
      }
    }
    emit(TokenKind::kNumber, begin, line_);
  }

  void identifier() {
    const std::size_t begin = pos_;
    while (pos_ < text_.size() && is_ident_part(text_[pos_])) ++pos_;
    const auto word = text_.substr(begin, pos_ - begin);
    emit(is_java_keyword(word) ? TokenKind::kKeyword : TokenKind::kIdentifier, begin, line_);
  }

  void op() {
    const std::size_t begin = pos_;
    std::size_t len = 1;
    for (auto candidate : kOperators) {
      if (starts_with(candidate)) {
        len = candidate.size();
        break;
      }
    }
    pos_ += len;
    emit(TokenKind::kOperator, begin, line_);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::uint32_t line_;
  LexResult result_;
};

}  // namespace

bool is_java_keyword(std::string_view word) {
  return std::find(kKeywords.begin(), kKeywords.end(), word) != kKeywords.end();
}

LexResult lex_java(std::string_view text, std::uint32_t first_line) {
  return Lexer(text, first_line).run();
}

}  // namespace logclone
