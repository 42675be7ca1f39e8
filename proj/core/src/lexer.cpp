#include "lexer.hpp"
#include "parse_common.hpp"

#include <algorithm>
#include <charconv>

namespace haraforge {

std::string ParseDiagnostic::to_string() const {
  const char* kind = severity == DiagnosticSeverity::kError ? "error" : "warning";
  return location.file + ":" + std::to_string(location.line) + ":" + std::to_string(location.column) +
         ": " + kind + ": " + message;
}

}  // namespace haraforge

namespace haraforge::detail {

std::string normalize_newlines(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '\r' && i + 1 < text.size() && text[i + 1] == '\n') continue;
    out.push_back(text[i]);
  }
  return out;
}

std::optional<std::size_t> find_invalid_utf8(std::string_view text) noexcept {
  const auto* s = reinterpret_cast<const unsigned char*>(text.data());
  const std::size_t n = text.size();
  std::size_t i = 0;
  while (i < n) {
    const unsigned char c = s[i];
    std::size_t len = 0;
    std::uint32_t cp = 0;
    if (c < 0x80) {
      ++i;
      continue;
    } else if ((c & 0xE0) == 0xC0) {
      len = 2;
      cp = c & 0x1F;
    } else if ((c & 0xF0) == 0xE0) {
      len = 3;
      cp = c & 0x0F;
    } else if ((c & 0xF8) == 0xF0) {
      len = 4;
      cp = c & 0x07;
    } else {
      return i;
    }
    if (i + len > n) return i;
    for (std::size_t k = 1; k < len; ++k) {
      if ((s[i + k] & 0xC0) != 0x80) return i;
      cp = (cp << 6) | (s[i + k] & 0x3F);
    }
    const bool overlong = (len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) || (len == 4 && cp < 0x10000);
    if (overlong || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) return i;
    i += len;
  }
  return std::nullopt;
}

SourceLocation locate(std::string_view text, std::size_t offset, const std::string& file) {
  SourceLocation loc{file, 1, 1};
  offset = std::min(offset, text.size());
  for (std::size_t i = 0; i < offset; ++i) {
    if (text[i] == '\n') {
      ++loc.line;
      loc.column = 1;
    } else {
      ++loc.column;
    }
  }
  return loc;
}

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

bool is_word_byte(char c) {
  const auto u = static_cast<unsigned char>(c);
  if (u < 0x20 || u == 0x7F) return false;
  return !is_space(c) && c != '"' && c != '[' && c != ']' && c != ',' && c != '#';
}

}  // namespace

std::vector<Token> lex(std::string_view text, const std::string& file,
                       std::vector<ParseDiagnostic>& diagnostics) {
  std::vector<Token> tokens;
  int line = 1;
  int column = 1;
  std::size_t i = 0;
  const std::size_t n = text.size();

  auto advance = [&](std::size_t count) {
    for (std::size_t k = 0; k < count && i < n; ++k, ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
  };
  auto lex_error = [&](int l, int c, std::string message) {
    diagnostics.push_back({{file, l, c}, std::move(message), DiagnosticSeverity::kError});
  };

  while (i < n) {
    const char c = text[i];
    if (is_space(c)) {
      advance(1);
    } else if (c == '#') {
      while (i < n && text[i] != '\n') advance(1);
    } else if (c == '[' || c == ']' || c == ',') {
      const TokenKind kind = c == '[' ? TokenKind::kLBracket : c == ']' ? TokenKind::kRBracket : TokenKind::kComma;
      tokens.push_back({kind, std::string(1, c), line, column});
      advance(1);
    } else if (c == '"') {
      Token token{TokenKind::kString, {}, line, column};
      advance(1);
      bool closed = false;
      bool bad = false;
      while (i < n && text[i] != '\n') {
        const char s = text[i];
        if (s == '"') {
          closed = true;
          advance(1);
          break;
        }
        if (s == '\\') {
          if (i + 1 >= n || text[i + 1] == '\n') break;
          const char e = text[i + 1];
          switch (e) {
            case '"': token.text.push_back('"'); break;
            case '\\': token.text.push_back('\\'); break;
            case 'n': token.text.push_back('\n'); break;
            case 'r': token.text.push_back('\r'); break;
            case 't': token.text.push_back('\t'); break;
            default:
              lex_error(line, column, "unknown escape sequence '\\" + std::string(1, e) + "'");
              bad = true;
          }
          advance(2);
          continue;
        }
        token.text.push_back(s);
        advance(1);
      }
      if (!closed) {
        lex_error(token.line, token.column, "unterminated string");
        bad = true;
      }
      if (!bad) tokens.push_back(std::move(token));
    } else if (is_word_byte(c)) {
      Token token{TokenKind::kWord, {}, line, column};
      while (i < n && is_word_byte(text[i])) {
        token.text.push_back(text[i]);
        advance(1);
      }
      tokens.push_back(std::move(token));
    } else {
      lex_error(line, column, "unexpected control character");
      advance(1);
    }
  }
  tokens.push_back({TokenKind::kEnd, {}, line, column});
  return tokens;
}

std::string quote(std::string_view text) {
  std::string out;
  out.reserve(text.size() + 2);
  out.push_back('"');
  for (char c : text) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default: out.push_back(c);
    }
  }
  out.push_back('"');
  return out;
}

std::optional<int> parse_count(std::string_view text) noexcept {
  if (text.empty() || text.size() > 9) return std::nullopt;
  if (!std::all_of(text.begin(), text.end(), [](char c) { return c >= '0' && c <= '9'; })) return std::nullopt;
  if (text.size() > 1 && text[0] == '0') return std::nullopt;
  int value = 0;
  std::from_chars(text.data(), text.data() + text.size(), value);
  return value;
}

std::string describe(const Token& token) {
  switch (token.kind) {
    case TokenKind::kWord: return "'" + token.text + "'";
    case TokenKind::kString: return "string";
    case TokenKind::kLBracket: return "'['";
    case TokenKind::kRBracket: return "']'";
    case TokenKind::kComma: return "','";
    case TokenKind::kEnd: return "end of input";
  }
  return "token";
}

Cursor::Cursor(std::vector<Token> tokens, std::string file, std::vector<ParseDiagnostic>& diagnostics)
    : tokens_(std::move(tokens)), file_(std::move(file)), diagnostics_(diagnostics) {
  if (tokens_.empty() || tokens_.back().kind != TokenKind::kEnd) tokens_.push_back({});
}

const Token& Cursor::next() noexcept {
  const Token& t = tokens_[pos_];
  if (t.kind != TokenKind::kEnd) ++pos_;
  return t;
}

bool Cursor::peek_word(std::string_view word) const noexcept {
  return peek().kind == TokenKind::kWord && peek().text == word;
}

bool Cursor::accept_word(std::string_view word) noexcept {
  if (!peek_word(word)) return false;
  next();
  return true;
}

const Token& Cursor::expect_keyword(std::string_view keyword) {
  if (!peek_word(keyword)) fail(peek(), "expected '" + std::string(keyword) + "', found " + describe(peek()));
  return next();
}

const Token& Cursor::expect_word(std::string_view what) {
  if (peek().kind != TokenKind::kWord) fail(peek(), "expected " + std::string(what) + ", found " + describe(peek()));
  return next();
}

const Token& Cursor::expect_identifier(std::string_view what) {
  const Token& t = expect_word(what);
  if (!is_identifier(t.text)) fail(t, "invalid " + std::string(what) + " '" + t.text + "'");
  return t;
}

const Token& Cursor::expect_string(std::string_view what) {
  if (peek().kind != TokenKind::kString) {
    fail(peek(), "expected " + std::string(what) + " (a quoted string), found " + describe(peek()));
  }
  return next();
}

std::vector<Token> Cursor::expect_identifier_list(std::string_view what) {
  if (peek().kind != TokenKind::kLBracket) fail(peek(), "expected '[' before " + std::string(what) + " list");
  next();
  std::vector<Token> items;
  if (peek().kind == TokenKind::kRBracket) {
    next();
    return items;
  }
  while (true) {
    items.push_back(expect_identifier(what));
    if (peek().kind == TokenKind::kComma) {
      next();
      continue;
    }
    if (peek().kind == TokenKind::kRBracket) {
      next();
      return items;
    }
    fail(peek(), "expected ',' or ']' in " + std::string(what) + " list, found " + describe(peek()));
  }
}

SourceLocation Cursor::location(const Token& token) const { return {file_, token.line, token.column}; }

bool Cursor::has_errors() const noexcept {
  return std::any_of(diagnostics_.begin(), diagnostics_.end(),
                     [](const ParseDiagnostic& d) { return d.severity == DiagnosticSeverity::kError; });
}

void Cursor::error(const Token& at, std::string message) {
  diagnostics_.push_back({location(at), std::move(message), DiagnosticSeverity::kError});
}

void Cursor::warning(const Token& at, std::string message) {
  diagnostics_.push_back({location(at), std::move(message), DiagnosticSeverity::kWarning});
}

void Cursor::fail(const Token& at, std::string message) {
  error(at, std::move(message));
  throw StatementAborted{};
}

void Cursor::recover(std::span<const std::string_view> keywords) noexcept {
  while (!at_end()) {
    const Token& t = peek();
    if (t.kind == TokenKind::kWord && t.column == 1 &&
        std::find(keywords.begin(), keywords.end(), t.text) != keywords.end()) {
      return;
    }
    next();
  }
}

}  // namespace haraforge::detail

namespace haraforge::detail {

bool check_encoding(std::string_view text, const std::string& file, std::vector<ParseDiagnostic>& diagnostics) {
  if (text.substr(0, 3) == "\xEF\xBB\xBF") {
    diagnostics.push_back({{file, 1, 1}, "UTF-8 byte order mark is not allowed", DiagnosticSeverity::kError});
    return false;
  }
  if (auto bad = find_invalid_utf8(text)) {
    diagnostics.push_back({locate(text, *bad, file), "invalid UTF-8 sequence", DiagnosticSeverity::kError});
    return false;
  }
  return true;
}

}  // namespace haraforge::detail
