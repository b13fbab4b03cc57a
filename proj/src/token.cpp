#include "specmine/token.hpp"

#include <cctype>
#include <stdexcept>
#include <vector>

namespace specmine {

namespace {

enum class AtomKind { Ident, Int, Op, Arrow, Keyword };

struct Atom {
  AtomKind kind;
  std::string text;
};

[[noreturn]] void fail(std::string_view raw, const std::string& why) {
  throw std::runtime_error("malformed token \"" + std::string(raw) + "\": " + why);
}

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

std::vector<Atom> lex(std::string_view raw) {
  std::vector<Atom> atoms;
  std::size_t i = 0;
  const std::size_t n = raw.size();
  while (i < n) {
    char c = raw[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (ident_start(c)) {
      std::size_t j = i + 1;
      while (j < n && ident_char(raw[j])) ++j;
      atoms.push_back({AtomKind::Ident, std::string(raw.substr(i, j - i))});
      i = j;
    } else if (c == '$') {
      std::size_t j = i + 1;
      while (j < n && ident_char(raw[j])) ++j;
      if (j == i + 1) fail(raw, "'$' must introduce $RET, $START or $END");
      atoms.push_back({AtomKind::Keyword, std::string(raw.substr(i, j - i))});
      i = j;
    } else if (std::isdigit(static_cast<unsigned char>(c)) ||
               (c == '-' && i + 1 < n && std::isdigit(static_cast<unsigned char>(raw[i + 1])))) {
      std::size_t j = i + 1;
      while (j < n && std::isdigit(static_cast<unsigned char>(raw[j]))) ++j;
      atoms.push_back({AtomKind::Int, std::string(raw.substr(i, j - i))});
      i = j;
    } else if (c == '-' && i + 1 < n && raw[i + 1] == '>') {
      atoms.push_back({AtomKind::Arrow, "->"});
      i += 2;
    } else if (c == '=' || c == '!') {
      if (i + 1 >= n || raw[i + 1] != '=') fail(raw, std::string("stray '") + c + "'");
      atoms.push_back({AtomKind::Op, std::string(1, c) + "="});
      i += 2;
    } else if (c == '<' || c == '>') {
      if (i + 1 < n && raw[i + 1] == '=') {
        atoms.push_back({AtomKind::Op, std::string(1, c) + "="});
        i += 2;
      } else {
        atoms.push_back({AtomKind::Op, std::string(1, c)});
        ++i;
      }
    } else {
      fail(raw, std::string("unexpected character '") + c + "'");
    }
  }
  return atoms;
}

// NULL appearing where the grammar wants an integer constant is read as 0.
bool const_atom(const Atom& a, std::string* out) {
  if (a.kind == AtomKind::Int) {
    *out = a.text;
    return true;
  }
  if (a.kind == AtomKind::Ident && a.text == "NULL") {
    *out = "0";
    return true;
  }
  return false;
}

}  // namespace

Token parse_token(std::string_view raw) {
  const std::vector<Atom> atoms = lex(raw);
  if (atoms.empty()) fail(raw, "empty token");

  if (atoms.size() == 1) {
    const Atom& a = atoms[0];
    if (a.kind == AtomKind::Keyword) {
      if (a.text == "$START" || a.text == "$END") return {a.text, TokenKind::Sentinel};
      if (a.text == "$RET") fail(raw, "$RET needs a value");
      fail(raw, "unknown keyword " + a.text);
    }
    if (a.kind == AtomKind::Ident) return {a.text, TokenKind::Call};
    fail(raw, "a lone token must be a call identifier or sentinel");
  }

  if (atoms.size() == 2 && atoms[0].kind == AtomKind::Keyword) {
    if (atoms[0].text != "$RET") fail(raw, "only $RET takes a value");
    std::string value;
    if (const_atom(atoms[1], &value) || atoms[1].kind == AtomKind::Ident) {
      if (value.empty()) value = atoms[1].text;
      return {"$RET " + value, TokenKind::Return};
    }
    fail(raw, "$RET value must be an identifier or integer constant");
  }

  if (atoms.size() == 3 && atoms[0].kind == AtomKind::Ident) {
    if (atoms[1].kind == AtomKind::Arrow) {
      if (atoms[2].kind != AtomKind::Ident) fail(raw, "dataflow consumer must be an identifier");
      return {atoms[0].text + " -> " + atoms[2].text, TokenKind::Dataflow};
    }
    if (atoms[1].kind == AtomKind::Op) {
      std::string value;
      if (!const_atom(atoms[2], &value)) fail(raw, "check must compare against an integer constant");
      return {atoms[0].text + " " + atoms[1].text + " " + value, TokenKind::Check};
    }
  }

  if (!atoms.empty() && atoms[0].kind == AtomKind::Arrow) fail(raw, "dataflow is missing its producer");
  fail(raw, "does not match any token form");
}

bool is_sentinel(const Token& t) { return t.kind == TokenKind::Sentinel; }

const Token& start_token() {
  static const Token t{"$START", TokenKind::Sentinel};
  return t;
}

const Token& end_token() {
  static const Token t{"$END", TokenKind::Sentinel};
  return t;
}

std::string escape_token(std::string_view text) {
  std::string out(text);
  for (char& c : out)
    if (c == ' ') c = '#';
  return out;
}

std::string unescape_token(std::string_view escaped) {
  std::string out(escaped);
  for (char& c : out)
    if (c == '#') c = ' ';
  return out;
}

}  // namespace specmine
