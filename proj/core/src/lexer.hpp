#ifndef LSQ_LEXER_HPP
#define LSQ_LEXER_HPP

#include "lsq/errors.hpp"
#include "lsq/scalar.hpp"

#include <string_view>

namespace lsq::detail {

// Shared tokenizer for the proof language and the lambda-s front end.
// '--' starts a line comment. Scalar literals are munched maximally, so
// `0.5+0.5i` is one token while `x + 0.5i` splits at the operator.

enum class Tok {
    End,
    Ident,
    Number,
    LParen,
    RParen,
    LBracket,
    RBracket,
    LBrace,
    RBrace,
    Less,
    Greater,
    Comma,
    Dot,
    Colon,
    Semi,
    Pipe,
    Caret,
    Plus,
    Mul,
    Amp,
    Equals,
    FatArrow, // =>
    Lolli,    // -o
    Arrow,    // ->
    PlusCirc, // (+)
};

const char *tok_name(Tok k);

struct Token {
    Tok kind = Tok::End;
    std::string_view text;
    Scalar value{}; // Number tokens only
    SourcePos pos;
};

class Lexer {
  public:
    explicit Lexer(std::string_view src);

    const Token &cur() const { return cur_; }
    void advance();

  private:
    void fetch();
    void bump();

    std::string_view src_;
    std::size_t i_ = 0;
    int line_ = 1;
    int col_ = 1;
    Token cur_;
};

} // namespace lsq::detail

#endif
