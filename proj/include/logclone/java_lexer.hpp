#pragma once

#include <string_view>
#include <vector>

#include "logclone/token.hpp"

namespace logclone {

struct LexResult {
  std::vector<Token> tokens;
  // Set when a block comment, string or char literal runs past end of input.
  bool unterminated = false;
};

// Flex-style Java tokenizer. Comments and whitespace are dropped, identifiers
// are kept whole, multi-character operators are single tokens and each string,
// text block or char literal is one token holding its source spelling.
// `first_line` is the line number assigned to the first byte of `text`.
LexResult lex_java(std::string_view text, std::uint32_t first_line = 1);

bool is_java_keyword(std::string_view word);

}  // namespace logclone
