#pragma once

#include <string>
#include <string_view>

#include "gesem/errors.hpp"

namespace gesem::detail {

/// Token stream over the structured text formats (scene, lexicon, utterance
/// files). '#' starts a comment running to end of line. Identifiers may
/// contain letters, digits, '_', '-', '.', '\'' and a leading '-' or '*'
/// ("-UP", "*"). Numbers are doubles; a leading '-' binds to a number only
/// when followed by a digit.
class Scanner {
 public:
  struct Token {
    enum class Kind { Ident, Number, Punct, End };
    Kind kind = Kind::End;
    std::string text;
    double number = 0.0;
    int line = 1;
    int column = 1;
  };

  explicit Scanner(std::string_view text);

  const Token& peek() const { return current_; }
  Token next();
  bool at_end() const { return current_.kind == Token::Kind::End; }

  bool accept_punct(char c);
  void expect_punct(char c);
  bool accept_ident(std::string_view word);
  std::string expect_ident(const char* what);
  double expect_number(const char* what);

  [[noreturn]] void fail(const std::string& message) const;

 private:
  void advance();

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
  Token current_;
};

}  // namespace gesem::detail
