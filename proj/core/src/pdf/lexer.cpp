#include "pdf/lexer.hpp"

#include <cctype>

namespace pdfvex::pdf {

bool is_pdf_whitespace(std::uint8_t c) {
  return c == 0x00 || c == 0x09 || c == 0x0A || c == 0x0C || c == 0x0D ||
         c == 0x20;
}

bool is_pdf_delimiter(std::uint8_t c) {
  return c == '(' || c == ')' || c == '<' || c == '>' || c == '[' ||
         c == ']' || c == '{' || c == '}' || c == '/' || c == '%';
}

void Lexer::skip_ws_and_comments() {
  while (pos_ < data_.size()) {
    const std::uint8_t c = data_[pos_];
    if (is_pdf_whitespace(c)) {
      ++pos_;
    } else if (c == '%') {
      while (pos_ < data_.size() && data_[pos_] != '\n' && data_[pos_] != '\r')
        ++pos_;
    } else {
      break;
    }
  }
}

Token Lexer::peek() {
  if (!has_peek_) {
    peeked_ = next();
    has_peek_ = true;
  }
  return peeked_;
}

Token Lexer::next() {
  if (has_peek_) {
    has_peek_ = false;
    return peeked_;
  }
  skip_ws_and_comments();
  if (pos_ >= data_.size()) return Token{TokenType::Eof, "", 0.0, pos_};

  const std::uint8_t c = data_[pos_];
  if (c == '/') return lex_name();
  if (c == '(') return lex_literal_string();
  if (c == '<') return lex_hex_or_dict();
  if (c == '>') {
    if (pos_ + 1 < data_.size() && data_[pos_ + 1] == '>') {
      Token t{TokenType::DictClose, ">>", 0.0, pos_};
      pos_ += 2;
      return t;
    }
    // Stray '>' — treat as keyword so callers can reject it.
    Token t{TokenType::Keyword, ">", 0.0, pos_};
    ++pos_;
    return t;
  }
  if (c == '[') return Token{TokenType::ArrayOpen, "[", 0.0, pos_++};
  if (c == ']') return Token{TokenType::ArrayClose, "]", 0.0, pos_++};
  if (c == '{') return Token{TokenType::BraceOpen, "{", 0.0, pos_++};
  if (c == '}') return Token{TokenType::BraceClose, "}", 0.0, pos_++};
  if (c == '+' || c == '-' || c == '.' || (c >= '0' && c <= '9'))
    return lex_number();
  return lex_keyword();
}

Token Lexer::lex_number() {
  const std::size_t start = pos_;
  std::string buf;
  if (data_[pos_] == '+' || data_[pos_] == '-') buf.push_back(data_[pos_++]);
  bool seen_dot = false;
  while (pos_ < data_.size()) {
    const std::uint8_t ch = data_[pos_];
    if (ch >= '0' && ch <= '9') {
      buf.push_back(static_cast<char>(ch));
      ++pos_;
    } else if (ch == '.' && !seen_dot) {
      seen_dot = true;
      buf.push_back('.');
      ++pos_;
    } else {
      break;
    }
  }
  Token t{TokenType::Number, buf, 0.0, start};
  if (buf.empty() || buf == "+" || buf == "-" || buf == ".") {
    t.number = 0.0;
  } else {
    t.number = std::stod(buf);
  }
  return t;
}

Token Lexer::lex_name() {
  const std::size_t start = pos_;
  ++pos_;  // slash
  std::string out;
  while (pos_ < data_.size()) {
    const std::uint8_t ch = data_[pos_];
    if (is_pdf_whitespace(ch) || is_pdf_delimiter(ch)) break;
    if (ch == '#' && pos_ + 2 < data_.size() && std::isxdigit(data_[pos_ + 1]) &&
        std::isxdigit(data_[pos_ + 2])) {
      auto hexval = [](std::uint8_t h) -> int {
        if (h >= '0' && h <= '9') return h - '0';
        if (h >= 'a' && h <= 'f') return h - 'a' + 10;
        return h - 'A' + 10;
      };
      out.push_back(static_cast<char>(hexval(data_[pos_ + 1]) * 16 +
                                      hexval(data_[pos_ + 2])));
      pos_ += 3;
    } else {
      out.push_back(static_cast<char>(ch));
      ++pos_;
    }
  }
  return Token{TokenType::Name, out, 0.0, start};
}

Token Lexer::lex_literal_string() {
  const std::size_t start = pos_;
  ++pos_;  // '('
  std::string out;
  int depth = 1;
  while (pos_ < data_.size()) {
    std::uint8_t ch = data_[pos_++];
    if (ch == '\\') {
      if (pos_ >= data_.size()) break;
      std::uint8_t esc = data_[pos_++];
      switch (esc) {
        case 'n': out.push_back('\n'); break;
        case 'r': out.push_back('\r'); break;
        case 't': out.push_back('\t'); break;
        case 'b': out.push_back('\b'); break;
        case 'f': out.push_back('\f'); break;
        case '(': out.push_back('('); break;
        case ')': out.push_back(')'); break;
        case '\\': out.push_back('\\'); break;
        case '\r':
          if (pos_ < data_.size() && data_[pos_] == '\n') ++pos_;
          break;  // line continuation
        case '\n': break;
        default:
          if (esc >= '0' && esc <= '7') {
            int v = esc - '0';
            for (int i = 0; i < 2 && pos_ < data_.size() &&
                            data_[pos_] >= '0' && data_[pos_] <= '7';
                 ++i)
              v = v * 8 + (data_[pos_++] - '0');
            out.push_back(static_cast<char>(v & 0xFF));
          } else {
            out.push_back(static_cast<char>(esc));
          }
      }
    } else if (ch == '(') {
      ++depth;
      out.push_back('(');
    } else if (ch == ')') {
      if (--depth == 0) break;
      out.push_back(')');
    } else {
      out.push_back(static_cast<char>(ch));
    }
  }
  return Token{TokenType::String, out, 0.0, start};
}

Token Lexer::lex_hex_or_dict() {
  const std::size_t start = pos_;
  if (pos_ + 1 < data_.size() && data_[pos_ + 1] == '<') {
    pos_ += 2;
    return Token{TokenType::DictOpen, "<<", 0.0, start};
  }
  ++pos_;  // '<'
  std::string out;
  int hi = -1;
  while (pos_ < data_.size()) {
    const std::uint8_t ch = data_[pos_++];
    if (ch == '>') break;
    if (is_pdf_whitespace(ch)) continue;
    int v;
    if (ch >= '0' && ch <= '9') v = ch - '0';
    else if (ch >= 'a' && ch <= 'f') v = ch - 'a' + 10;
    else if (ch >= 'A' && ch <= 'F') v = ch - 'A' + 10;
    else continue;
    if (hi < 0) {
      hi = v;
    } else {
      out.push_back(static_cast<char>(hi * 16 + v));
      hi = -1;
    }
  }
  if (hi >= 0) out.push_back(static_cast<char>(hi * 16));  // odd digit: pad 0
  return Token{TokenType::String, out, 0.0, start};
}

Token Lexer::lex_keyword() {
  const std::size_t start = pos_;
  std::string out;
  while (pos_ < data_.size()) {
    const std::uint8_t ch = data_[pos_];
    if (is_pdf_whitespace(ch) || is_pdf_delimiter(ch)) break;
    out.push_back(static_cast<char>(ch));
    ++pos_;
  }
  if (out.empty()) {  // lone delimiter we do not otherwise handle
    out.push_back(static_cast<char>(data_[pos_++]));
  }
  return Token{TokenType::Keyword, out, 0.0, start};
}

std::span<const std::uint8_t> Lexer::read_raw(std::size_t n) {
  has_peek_ = false;
  const std::size_t avail = data_.size() - pos_;
  const std::size_t take = std::min(n, avail);
  auto out = data_.subspan(pos_, take);
  pos_ += take;
  return out;
}

void Lexer::skip_stream_eol() {
  has_peek_ = false;
  if (pos_ < data_.size() && data_[pos_] == '\r') ++pos_;
  if (pos_ < data_.size() && data_[pos_] == '\n') ++pos_;
}

}  // namespace pdfvex::pdf
