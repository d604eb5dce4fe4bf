#include "lsq/lambda_s.hpp"

#include "lsq/parser.hpp"

#include "lexer.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace lsq {

using detail::Lexer;
using detail::Tok;

// ---------------------------------------------------------------------------
// Types
// ---------------------------------------------------------------------------

STypePtr sbool() {
    static const STypePtr b = std::make_shared<const SType>(SType{STypeKind::Bool, nullptr, nullptr});
    return b;
}

STypePtr sarrow(STypePtr domain, STypePtr codomain) {
    return std::make_shared<const SType>(
        SType{STypeKind::Arrow, std::move(domain), std::move(codomain)});
}

STypePtr sspan(STypePtr inner) {
    return std::make_shared<const SType>(SType{STypeKind::Span, std::move(inner), nullptr});
}

bool s_type_equal(const STypePtr &x, const STypePtr &y) {
    if (x.get() == y.get()) {
        return true;
    }
    if (!x || !y || x->kind != y->kind) {
        return false;
    }
    switch (x->kind) {
    case STypeKind::Bool:
        return true;
    case STypeKind::Arrow:
        return s_type_equal(x->a, y->a) && s_type_equal(x->b, y->b);
    case STypeKind::Span:
        return s_type_equal(x->a, y->a);
    }
    return false;
}

STypePtr span_of(const STypePtr &t) {
    return t->kind == STypeKind::Span ? t : sspan(t);
}

// ---------------------------------------------------------------------------
// Terms
// ---------------------------------------------------------------------------

namespace {

STermPtr make_sterm(STermNode node) {
    return std::make_shared<const STermT>(STermT{std::move(node)});
}

} // namespace

STermPtr svar(std::string name) {
    return make_sterm(SVar{std::move(name)});
}
STermPtr strue() {
    static const STermPtr t = make_sterm(STrue{});
    return t;
}
STermPtr sfalse() {
    static const STermPtr f = make_sterm(SFalse{});
    return f;
}
STermPtr slam(std::string var, STypePtr annotation, STermPtr body) {
    return make_sterm(SLam{std::move(var), std::move(annotation), std::move(body)});
}
STermPtr sapp(STermPtr fn, STermPtr arg) {
    return make_sterm(SApp{std::move(fn), std::move(arg)});
}
STermPtr ssum(STermPtr l, STermPtr r) {
    return make_sterm(SSum{std::move(l), std::move(r)});
}
STermPtr sscale(Scalar factor, STermPtr body) {
    return make_sterm(SScale{factor, std::move(body)});
}

bool is_basis_value(const STermPtr &t) {
    return s_as<STrue>(t) || s_as<SFalse>(t) || s_as<SLam>(t);
}

namespace {

void collect_free(const STermPtr &t, std::set<std::string> &bound, std::set<std::string> &out) {
    if (auto *v = s_as<SVar>(t)) {
        if (!bound.count(v->name)) {
            out.insert(v->name);
        }
    } else if (auto *l = s_as<SLam>(t)) {
        const bool added = bound.insert(l->var).second;
        collect_free(l->body, bound, out);
        if (added) {
            bound.erase(l->var);
        }
    } else if (auto *a = s_as<SApp>(t)) {
        collect_free(a->fn, bound, out);
        collect_free(a->arg, bound, out);
    } else if (auto *s = s_as<SSum>(t)) {
        collect_free(s->left, bound, out);
        collect_free(s->right, bound, out);
    } else if (auto *sc = s_as<SScale>(t)) {
        collect_free(sc->body, bound, out);
    }
}

std::set<std::string> s_free_vars(const STermPtr &t) {
    std::set<std::string> bound;
    std::set<std::string> out;
    collect_free(t, bound, out);
    return out;
}

std::string s_fresh(const std::string &base, std::set<std::string> &used) {
    if (used.insert(base).second) {
        return base;
    }
    for (std::size_t i = 1;; ++i) {
        std::string cand = base + "_" + std::to_string(i);
        if (used.insert(cand).second) {
            return cand;
        }
    }
}

struct AlphaEnv {
    std::map<std::string, int> left, right;
    int next = 0;

    bool var_eq(const std::string &a, const std::string &b) const {
        auto la = left.find(a);
        auto rb = right.find(b);
        if (la != left.end() || rb != right.end()) {
            return la != left.end() && rb != right.end() && la->second == rb->second;
        }
        return a == b;
    }
};

bool alpha_eq(const STermPtr &x, const STermPtr &y, AlphaEnv &env) {
    if (x.get() == y.get() && env.left.empty() && env.right.empty()) {
        return true;
    }
    if (x->node.index() != y->node.index()) {
        return false;
    }
    if (auto *v = s_as<SVar>(x)) {
        return env.var_eq(v->name, s_as<SVar>(y)->name);
    }
    if (s_as<STrue>(x) || s_as<SFalse>(x)) {
        return true;
    }
    if (auto *l = s_as<SLam>(x)) {
        auto *m = s_as<SLam>(y);
        if (!s_type_equal(l->annotation, m->annotation)) {
            return false;
        }
        AlphaEnv inner = env;
        inner.left[l->var] = inner.next;
        inner.right[m->var] = inner.next;
        ++inner.next;
        return alpha_eq(l->body, m->body, inner);
    }
    if (auto *a = s_as<SApp>(x)) {
        auto *b = s_as<SApp>(y);
        return alpha_eq(a->fn, b->fn, env) && alpha_eq(a->arg, b->arg, env);
    }
    if (auto *a = s_as<SSum>(x)) {
        auto *b = s_as<SSum>(y);
        return alpha_eq(a->left, b->left, env) && alpha_eq(a->right, b->right, env);
    }
    auto *a = s_as<SScale>(x);
    auto *b = s_as<SScale>(y);
    return a->factor == b->factor && alpha_eq(a->body, b->body, env);
}

} // namespace

bool s_alpha_equal(const STermPtr &x, const STermPtr &y) {
    if (!x || !y) {
        return x == y;
    }
    AlphaEnv env;
    return alpha_eq(x, y, env);
}

STermPtr s_substitute(const STermPtr &t, const std::string &x, const STermPtr &u) {
    if (auto *v = s_as<SVar>(t)) {
        return v->name == x ? u : t;
    }
    if (s_as<STrue>(t) || s_as<SFalse>(t)) {
        return t;
    }
    if (auto *l = s_as<SLam>(t)) {
        if (l->var == x) {
            return t;
        }
        std::set<std::string> repl_free = s_free_vars(u);
        if (repl_free.count(l->var) && s_free_vars(l->body).count(x)) {
            std::set<std::string> used = repl_free;
            std::set<std::string> body_free = s_free_vars(l->body);
            used.insert(body_free.begin(), body_free.end());
            used.insert(x);
            const std::string renamed = s_fresh(l->var, used);
            STermPtr body = s_substitute(l->body, l->var, svar(renamed));
            return slam(renamed, l->annotation, s_substitute(body, x, u));
        }
        STermPtr body = s_substitute(l->body, x, u);
        return body == l->body ? t : slam(l->var, l->annotation, body);
    }
    if (auto *a = s_as<SApp>(t)) {
        STermPtr fn = s_substitute(a->fn, x, u);
        STermPtr arg = s_substitute(a->arg, x, u);
        return fn == a->fn && arg == a->arg ? t : sapp(fn, arg);
    }
    if (auto *s = s_as<SSum>(t)) {
        STermPtr l = s_substitute(s->left, x, u);
        STermPtr r = s_substitute(s->right, x, u);
        return l == s->left && r == s->right ? t : ssum(l, r);
    }
    auto *sc = s_as<SScale>(t);
    STermPtr body = s_substitute(sc->body, x, u);
    return body == sc->body ? t : sscale(sc->factor, body);
}

// ---------------------------------------------------------------------------
// Typing
// ---------------------------------------------------------------------------

namespace {

std::size_t occurrences(const STermPtr &t, const std::string &x) {
    if (auto *v = s_as<SVar>(t)) {
        return v->name == x ? 1 : 0;
    }
    if (auto *l = s_as<SLam>(t)) {
        return l->var == x ? 0 : occurrences(l->body, x);
    }
    if (auto *a = s_as<SApp>(t)) {
        return occurrences(a->fn, x) + occurrences(a->arg, x);
    }
    if (auto *s = s_as<SSum>(t)) {
        return occurrences(s->left, x) + occurrences(s->right, x);
    }
    if (auto *sc = s_as<SScale>(t)) {
        return occurrences(sc->body, x);
    }
    return 0;
}

// Whether an argument of type `have` fits a position expecting `want`:
// equal types, or `have` sitting under however many spans `want` adds.
bool subsumes(const STypePtr &have, const STypePtr &want) {
    if (s_type_equal(have, want)) {
        return true;
    }
    return want->kind == STypeKind::Span && subsumes(have, want->a);
}

} // namespace

STypePtr s_typecheck(const SContext &ctx, const STermPtr &t) {
    if (auto *v = s_as<SVar>(t)) {
        for (auto it = ctx.rbegin(); it != ctx.rend(); ++it) {
            if (it->name == v->name) {
                return it->type;
            }
        }
        throw TypeError(TypeErrorKind::UnboundVariable, "unbound variable: " + v->name);
    }
    if (s_as<STrue>(t) || s_as<SFalse>(t)) {
        return sbool();
    }
    if (auto *l = s_as<SLam>(t)) {
        if (l->annotation->kind == STypeKind::Span) {
            const std::size_t n = occurrences(l->body, l->var);
            if (n != 1) {
                throw TypeError(TypeErrorKind::NonLinearUseOfSpanVariable,
                                "span-typed variable '" + l->var + "' is used " +
                                    std::to_string(n) + " times; it must be used exactly once");
            }
        }
        SContext inner = ctx;
        inner.push_back({l->var, l->annotation});
        return sarrow(l->annotation, s_typecheck(inner, l->body));
    }
    if (auto *a = s_as<SApp>(t)) {
        STypePtr ft = s_typecheck(ctx, a->fn);
        if (ft->kind != STypeKind::Arrow) {
            throw TypeError(TypeErrorKind::TypeMismatch,
                            "applied term is not a function; it has type " + pretty(ft));
        }
        STypePtr at = s_typecheck(ctx, a->arg);
        if (subsumes(at, ft->a)) {
            return ft->b;
        }
        if (ft->a->kind != STypeKind::Span && subsumes(at, sspan(ft->a))) {
            // Base-typed binder applied to a span: the application will
            // distribute, so its result lives in the span of the codomain.
            return span_of(ft->b);
        }
        throw TypeError(TypeErrorKind::TypeMismatch, "argument type " + pretty(at) +
                                                         " does not fit parameter type " +
                                                         pretty(ft->a));
    }
    if (auto *s = s_as<SSum>(t)) {
        STypePtr l = span_of(s_typecheck(ctx, s->left));
        STypePtr r = span_of(s_typecheck(ctx, s->right));
        if (!s_type_equal(l, r)) {
            throw TypeError(TypeErrorKind::TypeMismatch,
                            "sum of mismatched types " + pretty(l) + " and " + pretty(r));
        }
        return l;
    }
    auto *sc = s_as<SScale>(t);
    return span_of(s_typecheck(ctx, sc->body));
}

// ---------------------------------------------------------------------------
// Reduction
// ---------------------------------------------------------------------------

namespace {

std::pair<Scalar, STermPtr> split_coeff(const STermPtr &t) {
    if (auto *s = s_as<SScale>(t)) {
        return {s->factor, s->body};
    }
    return {Scalar(1.0, 0.0), t};
}

std::optional<SStep> find_sstep(const STermPtr &t) {
    if (s_as<SVar>(t) || s_as<STrue>(t) || s_as<SFalse>(t) || s_as<SLam>(t)) {
        return std::nullopt;
    }
    if (auto *a = s_as<SApp>(t)) {
        if (auto *l = s_as<SLam>(a->fn)) {
            if (l->annotation->kind == STypeKind::Span) {
                return SStep{s_substitute(l->body, l->var, a->arg), "beta-name"};
            }
            if (is_basis_value(a->arg)) {
                return SStep{s_substitute(l->body, l->var, a->arg), "beta-base"};
            }
            if (auto *s = s_as<SSum>(a->arg)) {
                return SStep{ssum(sapp(a->fn, s->left), sapp(a->fn, s->right)), "dist-sum"};
            }
            if (auto *s = s_as<SScale>(a->arg)) {
                return SStep{sscale(s->factor, sapp(a->fn, s->body)), "dist-scale"};
            }
            if (auto inner = find_sstep(a->arg)) {
                return SStep{sapp(a->fn, inner->term), inner->rule};
            }
            throw ReduceError(ReduceErrorKind::StuckTerm,
                              "base-typed application: argument is not a combination of basis "
                              "values: " +
                                  pretty(a->arg));
        }
        if (auto inner = find_sstep(a->fn)) {
            return SStep{sapp(inner->term, a->arg), inner->rule};
        }
        if (auto inner = find_sstep(a->arg)) {
            return SStep{sapp(a->fn, inner->term), inner->rule};
        }
        return std::nullopt;
    }
    if (auto *s = s_as<SSum>(t)) {
        auto [cl, ul] = split_coeff(s->left);
        auto [cr, ur] = split_coeff(s->right);
        if (s_alpha_equal(ul, ur)) {
            return SStep{sscale(cl + cr, ul), "merge"};
        }
        if (auto inner = find_sstep(s->left)) {
            return SStep{ssum(inner->term, s->right), inner->rule};
        }
        if (auto inner = find_sstep(s->right)) {
            return SStep{ssum(s->left, inner->term), inner->rule};
        }
        return std::nullopt;
    }
    auto *sc = s_as<SScale>(t);
    if (auto *b = s_as<SScale>(sc->body)) {
        return SStep{sscale(sc->factor * b->factor, b->body), "scale-scale"};
    }
    if (auto *b = s_as<SSum>(sc->body)) {
        return SStep{ssum(sscale(sc->factor, b->left), sscale(sc->factor, b->right)),
                     "scale-sum"};
    }
    if (auto inner = find_sstep(sc->body)) {
        return SStep{sscale(sc->factor, inner->term), inner->rule};
    }
    return std::nullopt;
}

bool collect_combination(const STermPtr &t, Scalar factor,
                         std::vector<std::pair<Scalar, STermPtr>> &out) {
    if (is_basis_value(t)) {
        out.emplace_back(factor, t);
        return true;
    }
    if (auto *s = s_as<SScale>(t)) {
        return collect_combination(s->body, factor * s->factor, out);
    }
    if (auto *s = s_as<SSum>(t)) {
        return collect_combination(s->left, factor, out) &&
               collect_combination(s->right, factor, out);
    }
    return false;
}

int basis_rank(const STermPtr &t) {
    if (s_as<STrue>(t)) {
        return 0;
    }
    if (s_as<SFalse>(t)) {
        return 1;
    }
    return 2;
}

STermPtr canonicalize(const STermPtr &t) {
    if (is_basis_value(t)) {
        return t;
    }
    std::vector<std::pair<Scalar, STermPtr>> parts;
    if (!collect_combination(t, Scalar(1.0, 0.0), parts)) {
        return t; // not a combination (open or stuck); leave untouched
    }
    std::vector<std::pair<Scalar, STermPtr>> merged;
    for (auto &[coeff, value] : parts) {
        bool hit = false;
        for (auto &[c, v] : merged) {
            if (s_alpha_equal(v, value)) {
                c += coeff;
                hit = true;
                break;
            }
        }
        if (!hit) {
            merged.emplace_back(coeff, value);
        }
    }
    std::erase_if(merged, [](const auto &p) { return p.first == Scalar(0.0, 0.0); });
    if (merged.empty()) {
        return sscale(Scalar(0.0, 0.0), strue());
    }
    std::stable_sort(merged.begin(), merged.end(), [](const auto &x, const auto &y) {
        const int rx = basis_rank(x.second);
        const int ry = basis_rank(y.second);
        if (rx != ry) {
            return rx < ry;
        }
        return rx == 2 && pretty(x.second) < pretty(y.second);
    });
    STermPtr acc = sscale(merged[0].first, merged[0].second);
    for (std::size_t i = 1; i < merged.size(); ++i) {
        acc = ssum(acc, sscale(merged[i].first, merged[i].second));
    }
    return acc;
}

} // namespace

std::optional<SStep> s_step(const STermPtr &t) {
    return find_sstep(t);
}

SRun s_normalize(const STermPtr &t, std::size_t fuel) {
    STermPtr cur = t;
    SRun run;
    while (auto s = find_sstep(cur)) {
        if (run.rules.size() >= fuel) {
            throw ReduceError(ReduceErrorKind::FuelExhausted,
                              "fuel exhausted after " + std::to_string(run.rules.size()) +
                                  " steps");
        }
        cur = s->term;
        run.rules.push_back(std::move(s->rule));
    }
    run.term = canonicalize(cur);
    return run;
}

std::optional<std::vector<std::pair<Scalar, STermPtr>>> as_combination(const STermPtr &t) {
    std::vector<std::pair<Scalar, STermPtr>> parts;
    if (!collect_combination(t, Scalar(1.0, 0.0), parts)) {
        return std::nullopt;
    }
    return parts;
}

// ---------------------------------------------------------------------------
// Printing
// ---------------------------------------------------------------------------

namespace {

std::string pp_stype(const STypePtr &t, int min_level) {
    switch (t->kind) {
    case STypeKind::Bool:
        return "Bool";
    case STypeKind::Span:
        return "S(" + pp_stype(t->a, 0) + ")";
    case STypeKind::Arrow: {
        std::string out = pp_stype(t->a, 2) + " -> " + pp_stype(t->b, 1);
        return min_level > 1 ? "(" + out + ")" : out;
    }
    }
    return "?";
}

std::string pp_sterm(const STermPtr &t, int min_level) {
    std::string out;
    int level = 4;
    if (auto *v = s_as<SVar>(t)) {
        out = v->name;
    } else if (s_as<STrue>(t)) {
        out = "true";
    } else if (s_as<SFalse>(t)) {
        out = "false";
    } else if (auto *l = s_as<SLam>(t)) {
        level = 0;
        out = "lam " + l->var + ": " + pp_stype(l->annotation, 0) + ". " + pp_sterm(l->body, 0);
    } else if (auto *a = s_as<SApp>(t)) {
        level = 3;
        out = pp_sterm(a->fn, 3) + " " + pp_sterm(a->arg, 4);
    } else if (auto *s = s_as<SSum>(t)) {
        level = 1;
        out = pp_sterm(s->left, 1) + " + " + pp_sterm(s->right, 2);
    } else if (auto *sc = s_as<SScale>(t)) {
        level = 2;
        out = format_scalar(sc->factor) + " * " + pp_sterm(sc->body, 3);
    }
    if (level < min_level) {
        return "(" + out + ")";
    }
    return out;
}

} // namespace

std::string pretty(const STypePtr &t) {
    return pp_stype(t, 0);
}

std::string pretty(const STermPtr &t) {
    return pp_sterm(t, 0);
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

namespace {

constexpr int kMaxDepth = 512;

bool s_reserved(std::string_view name) {
    return name == "def" || name == "lam" || name == "true" || name == "false" ||
           name == "Bool" || name == "S";
}

STermPtr s_uniquify(const STermPtr &t, std::set<std::string> &used,
                    std::map<std::string, std::vector<std::string>> &renames) {
    if (auto *v = s_as<SVar>(t)) {
        auto it = renames.find(v->name);
        if (it != renames.end() && !it->second.empty() && it->second.back() != v->name) {
            return svar(it->second.back());
        }
        return t;
    }
    if (s_as<STrue>(t) || s_as<SFalse>(t)) {
        return t;
    }
    if (auto *l = s_as<SLam>(t)) {
        const std::string fresh = s_fresh(l->var, used);
        renames[l->var].push_back(fresh);
        STermPtr body = s_uniquify(l->body, used, renames);
        renames[l->var].pop_back();
        return fresh == l->var && body == l->body ? t : slam(fresh, l->annotation, body);
    }
    if (auto *a = s_as<SApp>(t)) {
        STermPtr fn = s_uniquify(a->fn, used, renames);
        STermPtr arg = s_uniquify(a->arg, used, renames);
        return fn == a->fn && arg == a->arg ? t : sapp(fn, arg);
    }
    if (auto *s = s_as<SSum>(t)) {
        STermPtr l = s_uniquify(s->left, used, renames);
        STermPtr r = s_uniquify(s->right, used, renames);
        return l == s->left && r == s->right ? t : ssum(l, r);
    }
    auto *sc = s_as<SScale>(t);
    STermPtr body = s_uniquify(sc->body, used, renames);
    return body == sc->body ? t : sscale(sc->factor, body);
}

STermPtr s_uniquify_binders(const STermPtr &t) {
    std::set<std::string> used = s_free_vars(t);
    std::map<std::string, std::vector<std::string>> renames;
    return s_uniquify(t, used, renames);
}

class SParser {
  public:
    explicit SParser(std::string_view text) : lex_(text) {}

    STermPtr term_only() {
        STermPtr t = p_term();
        if (lex_.cur().kind != Tok::End) {
            fail("expected end of input");
        }
        return s_uniquify_binders(t);
    }

    SSourceFile source() {
        SSourceFile out;
        std::map<std::string, STermPtr> env;
        while (lex_.cur().kind != Tok::End) {
            if (!at_word("def")) {
                fail("expected 'def'");
            }
            const SourcePos at = lex_.cur().pos;
            lex_.advance();
            std::string name = take_name("definition name");
            if (env.count(name)) {
                throw SyntaxError("duplicate definition of '" + name + "'", at);
            }
            expect(Tok::Equals);
            STermPtr t = p_term();
            expect(Tok::Semi);
            for (const std::string &free : s_free_vars(t)) {
                auto it = env.find(free);
                if (it != env.end()) {
                    t = s_substitute(t, free, it->second);
                }
            }
            t = s_uniquify_binders(t);
            out.defs.push_back({name, t});
            env.emplace(std::move(name), std::move(t));
        }
        auto it = env.find("main");
        out.main = it == env.end() ? nullptr : it->second;
        return out;
    }

  private:
    [[noreturn]] void fail(const std::string &msg) const {
        throw SyntaxError(msg + " (found " + std::string(detail::tok_name(lex_.cur().kind)) + ")",
                          lex_.cur().pos);
    }

    void expect(Tok k) {
        if (lex_.cur().kind != k) {
            fail(std::string("expected ") + detail::tok_name(k));
        }
        lex_.advance();
    }

    bool at_word(std::string_view w) const {
        return lex_.cur().kind == Tok::Ident && lex_.cur().text == w;
    }

    std::string take_name(const char *what) {
        if (lex_.cur().kind != Tok::Ident) {
            fail(std::string("expected ") + what);
        }
        if (s_reserved(lex_.cur().text)) {
            fail("'" + std::string(lex_.cur().text) + "' is a reserved word; expected " + what);
        }
        std::string name(lex_.cur().text);
        lex_.advance();
        return name;
    }

    struct DepthGuard {
        explicit DepthGuard(SParser &p) : p_(p) {
            if (++p_.depth_ > kMaxDepth) {
                throw SyntaxError("nesting too deep", p_.lex_.cur().pos);
            }
        }
        ~DepthGuard() { --p_.depth_; }
        SParser &p_;
    };

    STypePtr p_type() {
        DepthGuard g(*this);
        STypePtr a = p_type_atom();
        if (lex_.cur().kind == Tok::Arrow) {
            lex_.advance();
            return sarrow(a, p_type());
        }
        return a;
    }

    STypePtr p_type_atom() {
        DepthGuard g(*this);
        if (at_word("Bool")) {
            lex_.advance();
            return sbool();
        }
        if (at_word("S")) {
            lex_.advance();
            expect(Tok::LParen);
            STypePtr inner = p_type();
            expect(Tok::RParen);
            return sspan(inner);
        }
        if (lex_.cur().kind == Tok::LParen) {
            lex_.advance();
            STypePtr t = p_type();
            expect(Tok::RParen);
            return t;
        }
        fail("expected a type");
    }

    STermPtr p_term() {
        DepthGuard g(*this);
        STermPtr t = p_scaled();
        while (lex_.cur().kind == Tok::Plus) {
            lex_.advance();
            t = ssum(t, p_scaled());
        }
        return t;
    }

    STermPtr p_scaled() {
        if (lex_.cur().kind == Tok::Number) {
            Scalar factor = lex_.cur().value;
            lex_.advance();
            expect(Tok::Mul);
            return sscale(factor, p_app());
        }
        return p_app();
    }

    bool at_factor() const {
        switch (lex_.cur().kind) {
        case Tok::LParen:
            return true;
        case Tok::Ident:
            return !(at_word("Bool") || at_word("S") || at_word("def"));
        default:
            return false;
        }
    }

    STermPtr p_app() {
        STermPtr t = p_factor();
        while (at_factor()) {
            t = sapp(t, p_factor());
        }
        return t;
    }

    STermPtr p_factor() {
        DepthGuard g(*this);
        if (lex_.cur().kind == Tok::LParen) {
            lex_.advance();
            STermPtr t = p_term();
            expect(Tok::RParen);
            return t;
        }
        if (lex_.cur().kind != Tok::Ident) {
            fail("expected a term");
        }
        if (at_word("true")) {
            lex_.advance();
            return strue();
        }
        if (at_word("false")) {
            lex_.advance();
            return sfalse();
        }
        if (at_word("lam")) {
            lex_.advance();
            std::string x = take_name("a variable");
            expect(Tok::Colon);
            STypePtr a = p_type();
            expect(Tok::Dot);
            return slam(std::move(x), a, p_term());
        }
        if (s_reserved(lex_.cur().text)) {
            fail("'" + std::string(lex_.cur().text) + "' is a reserved word");
        }
        std::string name(lex_.cur().text);
        lex_.advance();
        return svar(std::move(name));
    }

    Lexer lex_;
    int depth_ = 0;
};

// Blanks the %lambda-s header line in place so token positions stay true to
// the original file.
std::string strip_header(std::string_view text) {
    std::string out(text);
    std::size_t i = 0;
    while (i < out.size()) {
        std::size_t eol = out.find('\n', i);
        if (eol == std::string::npos) {
            eol = out.size();
        }
        std::string_view line(out.data() + i, eol - i);
        std::size_t a = line.find_first_not_of(" \t\r");
        if (a != std::string_view::npos && line.substr(a, 2) != "--") {
            for (std::size_t j = i; j < eol; ++j) {
                if (out[j] != '\r') {
                    out[j] = ' ';
                }
            }
            return out;
        }
        i = eol + 1;
    }
    return out;
}

} // namespace

STermPtr parse_s_term(std::string_view text) {
    return SParser(text).term_only();
}

SSourceFile parse_s_source(std::string_view text) {
    if (!has_lambda_s_header(text)) {
        throw SyntaxError("missing %lambda-s header line", SourcePos{1, 1});
    }
    const std::string blanked = strip_header(text);
    return SParser(blanked).source();
}

} // namespace lsq
