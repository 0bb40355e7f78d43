#include "gesem/textscan.hpp"

#include <cctype>

namespace gesem::detail {

namespace {

bool ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '*';
}

bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' ||
         c == '.' || c == '\'';
}

bool punct_char(char c) {
  return c == '{' || c == '}' || c == '(' || c == ')' || c == '[' ||
         c == ']' || c == ':' || c == ',' || c == ';' || c == '>';
}

}  // namespace

Scanner::Scanner(std::string_view text) : text_(text) { advance(); }

Scanner::Token Scanner::next() {
  Token t = current_;
  advance();
  return t;
}

bool Scanner::accept_punct(char c) {
  if (current_.kind == Token::Kind::Punct && current_.text[0] == c) {
    advance();
    return true;
  }
  return false;
}

void Scanner::expect_punct(char c) {
  if (!accept_punct(c))
    fail(std::string("expected '") + c + "', got '" + current_.text + "'");
}

bool Scanner::accept_ident(std::string_view word) {
  if (current_.kind == Token::Kind::Ident && current_.text == word) {
    advance();
    return true;
  }
  return false;
}

std::string Scanner::expect_ident(const char* what) {
  if (current_.kind != Token::Kind::Ident)
    fail(std::string("expected ") + what + ", got '" + current_.text + "'");
  return next().text;
}

double Scanner::expect_number(const char* what) {
  if (current_.kind != Token::Kind::Number)
    fail(std::string("expected ") + what + ", got '" + current_.text + "'");
  return next().number;
}

void Scanner::fail(const std::string& message) const {
  throw parse_error(message, current_.line, current_.column);
}

void Scanner::advance() {
  // Skip whitespace and comments.
  while (pos_ < text_.size()) {
    char c = text_[pos_];
    if (c == '#') {
      while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      continue;
    }
    if (c == '\n') {
      ++pos_;
      ++line_;
      column_ = 1;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++pos_;
      ++column_;
      continue;
    }
    break;
  }

  current_ = Token{};
  current_.line = line_;
  current_.column = column_;
  if (pos_ >= text_.size()) {
    current_.kind = Token::Kind::End;
    current_.text = "<end of input>";
    return;
  }

  char c = text_[pos_];
  auto take = [&] {
    ++pos_;
    ++column_;
  };

  if (std::isdigit(static_cast<unsigned char>(c)) ||
      ((c == '-' || c == '+') && pos_ + 1 < text_.size() &&
       (std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])) ||
        text_[pos_ + 1] == '.'))) {
    std::size_t start = pos_;
    take();
    while (pos_ < text_.size() &&
           (std::isdigit(static_cast<unsigned char>(text_[pos_])) ||
            text_[pos_] == '.' || text_[pos_] == 'e' || text_[pos_] == 'E' ||
            ((text_[pos_] == '+' || text_[pos_] == '-') &&
             (text_[pos_ - 1] == 'e' || text_[pos_ - 1] == 'E'))))
      take();
    current_.kind = Token::Kind::Number;
    current_.text = std::string(text_.substr(start, pos_ - start));
    try {
      current_.number = std::stod(current_.text);
    } catch (const std::exception&) {
      throw parse_error("malformed number '" + current_.text + "'",
                        current_.line, current_.column);
    }
    return;
  }

  if (ident_start(c) || (c == '-' && pos_ + 1 < text_.size() &&
                         ident_start(text_[pos_ + 1]))) {
    std::size_t start = pos_;
    take();
    while (pos_ < text_.size() && ident_char(text_[pos_])) take();
    current_.kind = Token::Kind::Ident;
    current_.text = std::string(text_.substr(start, pos_ - start));
    return;
  }

  if (punct_char(c)) {
    current_.kind = Token::Kind::Punct;
    current_.text = std::string(1, c);
    take();
    return;
  }

  throw parse_error(std::string("unexpected character '") + c + "'", line_,
                    column_);
}

}  // namespace gesem::detail
