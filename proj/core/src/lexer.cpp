#include "lexer.hpp"

#include <cstdio>
#include <string>

namespace lsq::detail {

namespace {

bool is_ident_start(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
}

bool is_ident_char(char c) {
    return is_ident_start(c) || (c >= '0' && c <= '9') || c == '\'';
}

bool is_digit(char c) {
    return c >= '0' && c <= '9';
}

std::string show_char(char c) {
    if (c >= 0x21 && c <= 0x7e) {
        return std::string("'") + c + "'";
    }
    char buf[16];
    std::snprintf(buf, sizeof buf, "byte 0x%02x", static_cast<unsigned char>(c));
    return buf;
}

} // namespace

const char *tok_name(Tok k) {
    switch (k) {
    case Tok::End: return "end of input";
    case Tok::Ident: return "identifier";
    case Tok::Number: return "scalar literal";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBracket: return "'['";
    case Tok::RBracket: return "']'";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::Less: return "'<'";
    case Tok::Greater: return "'>'";
    case Tok::Comma: return "','";
    case Tok::Dot: return "'.'";
    case Tok::Colon: return "':'";
    case Tok::Semi: return "';'";
    case Tok::Pipe: return "'|'";
    case Tok::Caret: return "'^'";
    case Tok::Plus: return "'+'";
    case Tok::Mul: return "'*'";
    case Tok::Amp: return "'&'";
    case Tok::Equals: return "'='";
    case Tok::FatArrow: return "'=>'";
    case Tok::Lolli: return "'-o'";
    case Tok::Arrow: return "'->'";
    case Tok::PlusCirc: return "'(+)'";
    }
    return "?";
}

Lexer::Lexer(std::string_view src) : src_(src) {
    fetch();
}

void Lexer::advance() {
    fetch();
}

void Lexer::bump() {
    if (src_[i_] == '\n') {
        ++line_;
        col_ = 1;
    } else {
        ++col_;
    }
    ++i_;
}

void Lexer::fetch() {
    for (;;) {
        while (i_ < src_.size() &&
               (src_[i_] == ' ' || src_[i_] == '\t' || src_[i_] == '\r' || src_[i_] == '\n')) {
            bump();
        }
        if (i_ + 1 < src_.size() && src_[i_] == '-' && src_[i_ + 1] == '-') {
            while (i_ < src_.size() && src_[i_] != '\n') {
                bump();
            }
            continue;
        }
        break;
    }

    Token t;
    t.pos = SourcePos{line_, col_};
    if (i_ >= src_.size()) {
        t.kind = Tok::End;
        cur_ = t;
        return;
    }

    const char c = src_[i_];
    auto take = [&](Tok k, std::size_t len) {
        t.kind = k;
        t.text = src_.substr(i_, len);
        for (std::size_t j = 0; j < len; ++j) {
            bump();
        }
        cur_ = t;
    };

    if (is_ident_start(c)) {
        std::size_t j = i_;
        while (j < src_.size() && is_ident_char(src_[j])) {
            ++j;
        }
        take(Tok::Ident, j - i_);
        return;
    }
    if (is_digit(c) || c == '-') {
        if (c == '-' && i_ + 1 < src_.size() && src_[i_ + 1] == 'o') {
            take(Tok::Lolli, 2);
            return;
        }
        if (c == '-' && i_ + 1 < src_.size() && src_[i_ + 1] == '>') {
            take(Tok::Arrow, 2);
            return;
        }
        auto m = munch_scalar(src_.substr(i_));
        if (!m) {
            throw SyntaxError(c == '-' ? "stray '-' (expected '-o', '->', or a scalar literal)"
                                       : "malformed scalar literal",
                              t.pos);
        }
        t.value = m->first;
        take(Tok::Number, m->second);
        return;
    }
    switch (c) {
    case '(':
        if (i_ + 2 < src_.size() && src_[i_ + 1] == '+' && src_[i_ + 2] == ')') {
            take(Tok::PlusCirc, 3);
        } else {
            take(Tok::LParen, 1);
        }
        return;
    case ')': take(Tok::RParen, 1); return;
    case '[': take(Tok::LBracket, 1); return;
    case ']': take(Tok::RBracket, 1); return;
    case '{': take(Tok::LBrace, 1); return;
    case '}': take(Tok::RBrace, 1); return;
    case '<': take(Tok::Less, 1); return;
    case '>': take(Tok::Greater, 1); return;
    case ',': take(Tok::Comma, 1); return;
    case '.': take(Tok::Dot, 1); return;
    case ':': take(Tok::Colon, 1); return;
    case ';': take(Tok::Semi, 1); return;
    case '|': take(Tok::Pipe, 1); return;
    case '^': take(Tok::Caret, 1); return;
    case '+': take(Tok::Plus, 1); return;
    case '*': take(Tok::Mul, 1); return;
    case '&': take(Tok::Amp, 1); return;
    case '=':
        if (i_ + 1 < src_.size() && src_[i_ + 1] == '>') {
            take(Tok::FatArrow, 2);
        } else {
            take(Tok::Equals, 1);
        }
        return;
    default:
        throw SyntaxError("unexpected " + show_char(c), t.pos);
    }
}

} // namespace lsq::detail
