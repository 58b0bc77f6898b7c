#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace logclone {

enum class TokenKind : std::uint8_t {
  kIdentifier,
  kKeyword,
  kNumber,
  kString,
  kChar,
  kOperator,
};

char token_kind_code(TokenKind kind);
std::optional<TokenKind> token_kind_from_code(char code);

// A lexical token. `offset` is relative to the text that was lexed.
struct Token {
  TokenKind kind = TokenKind::kOperator;
  std::string text;
  std::uint32_t line = 0;
  std::uint32_t offset = 0;

  std::uint32_t end() const { return offset + static_cast<std::uint32_t>(text.size()); }
  bool is(std::string_view s) const { return text == s; }
  bool is_identifier() const { return kind == TokenKind::kIdentifier; }

  friend bool operator==(const Token&, const Token&) = default;
};

// Token placed into string-literal positions of clone-detection bags.
inline constexpr std::string_view kStringToken = "<str>";
// Placeholder standing for a variable inside a log description.
inline constexpr std::string_view kVarToken = "<var>";

// Text contributed by a token to a token bag: string literals collapse to <str>.
std::string bag_text(const Token& token);

// Log verbosity levels ordered by severity.
enum class Level : std::uint8_t { kTrace, kDebug, kInfo, kWarn, kError, kFatal };

inline constexpr std::array<Level, 6> kAllLevels = {Level::kTrace, Level::kDebug, Level::kInfo,
                                                    Level::kWarn,  Level::kError, Level::kFatal};

std::string_view to_string(Level level);
std::optional<Level> parse_level(std::string_view name);

}  // namespace logclone
