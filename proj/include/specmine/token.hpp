#pragma once

#include <set>
#include <string>
#include <string_view>

namespace specmine {

enum class TokenKind { Call, Check, Dataflow, Return, Sentinel };

// One vocabulary term of a symbolic trace. `text` is the canonical spelling
// (single ASCII spaces between components); `kind` is derived from the text
// by the grammar in parse_token, so text equality implies kind equality.
//
//   Call      identifier                      e.g. `dictNext`
//   Check     <identifier> <op> <intconst>    op in {==, !=, <, >, <=, >=}
//   Dataflow  <identifier> -> <identifier>
//   Return    $RET <identifier> | $RET <intconst>
//   Sentinel  $START | $END
struct Token {
  std::string text;
  TokenKind kind = TokenKind::Call;

  bool operator==(const Token& o) const { return text == o.text; }
  bool operator!=(const Token& o) const { return text != o.text; }
  bool operator<(const Token& o) const { return text < o.text; }
};

using TokenSet = std::set<Token>;

// Parses and canonicalizes a raw token spelling (whitespace collapsed,
// `NULL` in constant position canonicalized to `0`). Throws
// std::runtime_error with a reason on a malformed token.
Token parse_token(std::string_view raw);

bool is_sentinel(const Token& t);
const Token& start_token();
const Token& end_token();

// Token texts contain spaces; file formats that need one-word tokens escape
// them as `#` (the grammar admits no literal `#`, so this is bijective).
std::string escape_token(std::string_view text);
std::string unescape_token(std::string_view escaped);

}  // namespace specmine
