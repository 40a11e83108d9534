#ifndef PDFVEX_SRC_PDF_LEXER_HPP
#define PDFVEX_SRC_PDF_LEXER_HPP

#include <cstdint>
#include <span>
#include <string>

namespace pdfvex::pdf {

enum class TokenType {
  Eof,
  Number,
  Name,        // /X, text holds the decoded name without the slash
  String,      // literal () or hex <>, text holds decoded bytes
  ArrayOpen,   // [
  ArrayClose,  // ]
  DictOpen,    // <<
  DictClose,   // >>
  BraceOpen,   // { } appear in type-4 functions; tokenized, never parsed
  BraceClose,
  Keyword,  // bare word: obj, endobj, R, true, stream, content operators...
};

struct Token {
  TokenType type = TokenType::Eof;
  std::string text;
  double number = 0.0;
  std::size_t offset = 0;  // byte offset of the token start
};

/// Byte-level tokenizer shared by the document parser and the content-stream
/// interpreter. Position is freely seekable so the xref machinery can jump.
class Lexer {
 public:
  explicit Lexer(std::span<const std::uint8_t> data) : data_(data) {}

  Token next();
  Token peek();

  std::size_t pos() const { return pos_; }
  void seek(std::size_t p) {
    pos_ = p;
    has_peek_ = false;
  }
  std::size_t size() const { return data_.size(); }
  std::span<const std::uint8_t> bytes() const { return data_; }

  /// Reads `n` raw bytes from the current position (used for stream bodies).
  std::span<const std::uint8_t> read_raw(std::size_t n);

  /// Advances past EOL right after a `stream` keyword (CRLF or LF per spec).
  void skip_stream_eol();

 private:
  void skip_ws_and_comments();
  Token lex_number();
  Token lex_name();
  Token lex_literal_string();
  Token lex_hex_or_dict();
  Token lex_keyword();

  std::span<const std::uint8_t> data_;
  std::size_t pos_ = 0;
  bool has_peek_ = false;
  Token peeked_;
};

bool is_pdf_whitespace(std::uint8_t c);
bool is_pdf_delimiter(std::uint8_t c);

}  // namespace pdfvex::pdf

#endif  // PDFVEX_SRC_PDF_LEXER_HPP
