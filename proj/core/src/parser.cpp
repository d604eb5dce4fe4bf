#include "lsq/parser.hpp"

#include "lexer.hpp"

#include <algorithm>
#include <charconv>
#include <map>

namespace lsq {

using detail::Lexer;
using detail::Tok;
using detail::Token;

namespace {

constexpr int kMaxDepth = 512;
constexpr std::size_t kMaxQPower = 30;

bool reserved(std::string_view name) {
    static const char *kWords[] = {"T",    "Q",     "lam",  "star",  "smatch", "pmatch", "inl",
                                   "inr",  "inlr",  "proj1", "proj2", "odot",   "def"};
    return std::find(std::begin(kWords), std::end(kWords), name) != std::end(kWords);
}

class Parser {
  public:
    Parser(std::string_view text, const ParseOptions &opts) : lex_(text), opts_(opts) {}

    PropPtr prop_only() {
        PropPtr p = p_prop();
        expect_end();
        return p;
    }

    TermPtr term_only() {
        TermPtr t = p_term();
        expect_end();
        return t;
    }

    SourceFile source() {
        SourceFile out;
        std::map<std::string, TermPtr> env;
        while (cur().kind != Tok::End) {
            const Token kw = cur();
            if (!at_word("def")) {
                fail("expected 'def'");
            }
            lex_.advance();
            std::string name = take_name("definition name");
            if (env.count(name)) {
                throw SyntaxError("duplicate definition of '" + name + "'", kw.pos);
            }
            expect(Tok::Equals);
            TermPtr t = p_term();
            expect(Tok::Semi);
            t = resolve(t, &env);
            out.defs.push_back({name, t});
            env.emplace(std::move(name), std::move(t));
        }
        auto it = env.find("main");
        out.main = it == env.end() ? nullptr : it->second;
        return out;
    }

    TermPtr resolve(TermPtr t, const std::map<std::string, TermPtr> *env) {
        for (const std::string &name : free_vars(t)) {
            if (env) {
                auto it = env->find(name);
                if (it != env->end()) {
                    t = substitute(t, name, it->second);
                    continue;
                }
            }
            if (opts_.resolve_name) {
                if (TermPtr d = opts_.resolve_name(name)) {
                    t = substitute(t, name, d);
                }
            }
        }
        return uniquify_binders(t);
    }

  private:
    const Token &cur() const { return lex_.cur(); }

    [[noreturn]] void fail(const std::string &msg) const {
        throw SyntaxError(msg + " (found " + found() + ")", cur().pos);
    }

    std::string found() const {
        if (cur().kind == Tok::Ident || cur().kind == Tok::Number) {
            return std::string(detail::tok_name(cur().kind)) + " '" + std::string(cur().text) +
                   "'";
        }
        return detail::tok_name(cur().kind);
    }

    void expect(Tok k) {
        if (cur().kind != k) {
            fail(std::string("expected ") + detail::tok_name(k));
        }
        lex_.advance();
    }

    void expect_end() {
        if (cur().kind != Tok::End) {
            fail("expected end of input");
        }
    }

    bool at_word(std::string_view w) const {
        return cur().kind == Tok::Ident && cur().text == w;
    }

    void expect_word(std::string_view w) {
        if (!at_word(w)) {
            fail("expected '" + std::string(w) + "'");
        }
        lex_.advance();
    }

    std::string take_name(const char *what) {
        if (cur().kind != Tok::Ident) {
            fail(std::string("expected ") + what);
        }
        if (reserved(cur().text)) {
            fail("'" + std::string(cur().text) + "' is a reserved word; expected " + what);
        }
        std::string name(cur().text);
        lex_.advance();
        return name;
    }

    void need_ext(const std::string &what) const {
        if (!opts_.extensions) {
            throw SyntaxError(what + " belongs to the (+)/& extension; enable it with --ext",
                              cur().pos);
        }
    }

    struct DepthGuard {
        explicit DepthGuard(Parser &p) : p_(p) {
            if (++p_.depth_ > kMaxDepth) {
                throw SyntaxError("nesting too deep", p_.cur().pos);
            }
        }
        ~DepthGuard() { --p_.depth_; }
        Parser &p_;
    };

    // ---- propositions ----

    PropPtr p_prop() {
        DepthGuard g(*this);
        PropPtr left = p_prop1();
        if (cur().kind == Tok::Lolli) {
            lex_.advance();
            return lolli(left, p_prop());
        }
        return left;
    }

    // Which chain connective starts here, if any.
    enum class Conn { None, Odot, Plus, With };

    Conn conn_at() const {
        if (at_word("odot")) {
            return Conn::Odot;
        }
        if (cur().kind == Tok::PlusCirc) {
            return Conn::Plus;
        }
        if (cur().kind == Tok::Amp) {
            return Conn::With;
        }
        return Conn::None;
    }

    PropPtr p_prop1() {
        PropPtr first = p_prop_atom();
        Conn c = conn_at();
        if (c == Conn::None) {
            return first;
        }
        if (c != Conn::Odot) {
            need_ext(std::string(detail::tok_name(cur().kind)));
        }
        std::vector<PropPtr> parts{first};
        while (conn_at() == c) {
            lex_.advance();
            parts.push_back(p_prop_atom());
        }
        if (conn_at() != Conn::None) {
            fail("cannot mix connectives at one level; parenthesize");
        }
        PropPtr out = parts.back();
        for (std::size_t i = parts.size() - 1; i-- > 0;) {
            out = c == Conn::Odot  ? odot(parts[i], out)
                  : c == Conn::Plus ? plus(parts[i], out)
                                    : with(parts[i], out);
        }
        return out;
    }

    PropPtr p_prop_atom() {
        DepthGuard g(*this);
        if (at_word("T")) {
            lex_.advance();
            return top();
        }
        if (at_word("Q")) {
            lex_.advance();
            expect(Tok::Caret);
            return qpow(take_nat());
        }
        if (cur().kind == Tok::LParen) {
            lex_.advance();
            PropPtr p = p_prop();
            expect(Tok::RParen);
            return p;
        }
        fail("expected a proposition");
    }

    std::size_t take_nat() {
        if (cur().kind != Tok::Number) {
            fail("expected a natural number");
        }
        std::string_view raw = cur().text;
        std::size_t n = 0;
        auto res = std::from_chars(raw.data(), raw.data() + raw.size(), n);
        if (res.ec != std::errc() || res.ptr != raw.data() + raw.size()) {
            fail("expected a natural number");
        }
        if (n > kMaxQPower) {
            fail("Q exponent larger than " + std::to_string(kMaxQPower));
        }
        lex_.advance();
        return n;
    }

    // ---- terms ----

    TermPtr p_term() {
        DepthGuard g(*this);
        TermPtr t = p_scaled();
        while (cur().kind == Tok::Plus) {
            lex_.advance();
            t = sum(t, p_scaled());
        }
        return t;
    }

    TermPtr p_scaled() {
        if (cur().kind == Tok::Number) {
            Scalar factor = cur().value;
            lex_.advance();
            expect(Tok::Mul);
            return scale(factor, p_app());
        }
        return p_app();
    }

    bool at_factor() const {
        switch (cur().kind) {
        case Tok::LBracket:
        case Tok::LParen:
        case Tok::Less:
            return true;
        case Tok::Ident:
            return !(at_word("T") || at_word("Q") || at_word("odot") || at_word("def"));
        default:
            return false;
        }
    }

    TermPtr p_app() {
        TermPtr t = p_factor();
        while (at_factor()) {
            t = app(t, p_factor());
        }
        return t;
    }

    TermPtr p_factor() {
        DepthGuard g(*this);
        switch (cur().kind) {
        case Tok::LParen: {
            lex_.advance();
            TermPtr t = p_term();
            expect(Tok::RParen);
            return t;
        }
        case Tok::LBracket: {
            lex_.advance();
            TermPtr l = p_term();
            expect(Tok::Comma);
            TermPtr r = p_term();
            expect(Tok::RBracket);
            return sup_pair(l, r);
        }
        case Tok::Less: {
            need_ext("'<t, r>'");
            lex_.advance();
            TermPtr l = p_term();
            expect(Tok::Comma);
            TermPtr r = p_term();
            expect(Tok::Greater);
            return with_pair(l, r);
        }
        case Tok::Ident:
            break;
        default:
            fail("expected a term");
        }

        if (at_word("lam")) {
            lex_.advance();
            std::string x = take_name("a variable");
            expect(Tok::Colon);
            PropPtr a = p_prop();
            expect(Tok::Dot);
            return lam(std::move(x), a, p_term());
        }
        if (at_word("star")) {
            lex_.advance();
            expect(Tok::LParen);
            if (cur().kind != Tok::Number) {
                fail("expected a scalar literal");
            }
            Scalar amp = cur().value;
            lex_.advance();
            expect(Tok::RParen);
            return star(amp);
        }
        if (at_word("smatch")) {
            lex_.advance();
            TermPtr scrut = p_term();
            expect(Tok::LBrace);
            std::string x = take_name("a variable");
            expect(Tok::FatArrow);
            TermPtr l = p_term();
            expect(Tok::Pipe);
            std::string y = take_name("a variable");
            expect(Tok::FatArrow);
            TermPtr r = p_term();
            expect(Tok::RBrace);
            return match_sup(scrut, std::move(x), l, std::move(y), r);
        }
        if (at_word("pmatch")) {
            need_ext("'pmatch'");
            lex_.advance();
            TermPtr scrut = p_term();
            expect(Tok::LBrace);
            expect_word("inl");
            std::string x = take_name("a variable");
            expect(Tok::FatArrow);
            TermPtr l = p_term();
            expect(Tok::Pipe);
            expect_word("inr");
            std::string y = take_name("a variable");
            expect(Tok::FatArrow);
            TermPtr r = p_term();
            expect(Tok::RBrace);
            return case_plus(scrut, std::move(x), l, std::move(y), r);
        }
        if (at_word("inl") || at_word("inr")) {
            const bool left = at_word("inl");
            need_ext(left ? "'inl'" : "'inr'");
            lex_.advance();
            PropPtr other;
            if (cur().kind == Tok::LBrace) {
                lex_.advance();
                other = p_prop();
                expect(Tok::RBrace);
            }
            TermPtr body = p_factor();
            return left ? inl(body, other) : inr(body, other);
        }
        if (at_word("inlr")) {
            need_ext("'inlr'");
            lex_.advance();
            TermPtr l = p_factor();
            return inlr(l, p_factor());
        }
        if (at_word("proj1") || at_word("proj2")) {
            const bool first = at_word("proj1");
            need_ext(first ? "'proj1'" : "'proj2'");
            lex_.advance();
            TermPtr body = p_factor();
            return first ? proj1(body) : proj2(body);
        }
        if (reserved(cur().text)) {
            fail("'" + std::string(cur().text) + "' is a reserved word");
        }
        std::string name(cur().text);
        lex_.advance();
        return var(std::move(name));
    }

    Lexer lex_;
    const ParseOptions &opts_;
    int depth_ = 0;
};

} // namespace

PropPtr parse_prop(std::string_view text, const ParseOptions &opts) {
    return Parser(text, opts).prop_only();
}

TermPtr parse_term(std::string_view text, const ParseOptions &opts) {
    Parser p(text, opts);
    return p.resolve(p.term_only(), nullptr);
}

SourceFile parse_source(std::string_view text, const ParseOptions &opts) {
    if (has_lambda_s_header(text)) {
        throw SyntaxError("this is a %lambda-s file; use the lambdas front end", SourcePos{1, 1});
    }
    return Parser(text, opts).source();
}

bool has_lambda_s_header(std::string_view text) {
    std::size_t i = 0;
    while (i < text.size()) {
        std::size_t eol = text.find('\n', i);
        std::string_view line = text.substr(i, eol == std::string_view::npos ? eol : eol - i);
        i = eol == std::string_view::npos ? text.size() : eol + 1;
        std::size_t a = line.find_first_not_of(" \t\r");
        if (a == std::string_view::npos) {
            continue;
        }
        std::size_t b = line.find_last_not_of(" \t\r");
        line = line.substr(a, b - a + 1);
        if (line.substr(0, 2) == "--") {
            continue;
        }
        return line == "%lambda-s";
    }
    return false;
}

} // namespace lsq
