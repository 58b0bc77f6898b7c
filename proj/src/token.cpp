#include "logclone/token.hpp"

namespace logclone {

char token_kind_code(TokenKind kind) {
  switch (kind) {
    case TokenKind::kIdentifier: return 'i';
    case TokenKind::kKeyword: return 'k';
    case TokenKind::kNumber: return 'n';
    case TokenKind::kString: return 's';
    case TokenKind::kChar: return 'c';
    case TokenKind::kOperator: return 'o';
  }
  return 'o';
}

std::optional<TokenKind> token_kind_from_code(char code) {
  switch (code) {
    case 'i': return TokenKind::kIdentifier;
    case 'k': return TokenKind::kKeyword;
    case 'n': return TokenKind::kNumber;
    case 's': return TokenKind::kString;
    case 'c': return TokenKind::kChar;
    case 'o': return TokenKind::kOperator;
    default: return std::nullopt;
  }
}

std::string bag_text(const Token& token) {
  if (token.kind == TokenKind::kString) return std::string(kStringToken);
  return token.text;
}

std::string_view to_string(Level level) {
  switch (level) {
    case Level::kTrace: return "trace";
    case Level::kDebug: return "debug";
    case Level::kInfo: return "info";
    case Level::kWarn: return "warn";
    case Level::kError: return "error";
    case Level::kFatal: return "fatal";
  }
  return "info";
}

std::optional<Level> parse_level(std::string_view name) {
  for (Level level : kAllLevels) {
    if (to_string(level) == name) return level;
  }
  return std::nullopt;
}

}  // namespace logclone
