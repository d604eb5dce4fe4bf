#include "lsq/typecheck.hpp"

#include "lsq/printer.hpp"

#include <algorithm>
#include <set>

namespace lsq {

namespace {

const PropPtr *lookup(const Context &ctx, const std::string &name) {
    for (auto it = ctx.rbegin(); it != ctx.rend(); ++it) {
        if (it->name == name) {
            return &it->type;
        }
    }
    return nullptr;
}

[[noreturn]] void mismatch(const std::string &msg, const TermPtr &at) {
    throw TypeError(TypeErrorKind::TypeMismatch, msg + " in `" + pretty(at) + "`");
}

PropPtr check(const Context &ctx, const TermPtr &t) {
    return std::visit(
        [&](const auto &n) -> PropPtr {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, Var>) {
                const PropPtr *ty = lookup(ctx, n.name);
                if (!ty) {
                    throw TypeError(TypeErrorKind::UnboundVariable,
                                    "unbound variable `" + n.name + "`");
                }
                return *ty;
            } else if constexpr (std::is_same_v<T, Star>) {
                return top();
            } else if constexpr (std::is_same_v<T, SupPair>) {
                return odot(check(ctx, n.left), check(ctx, n.right));
            } else if constexpr (std::is_same_v<T, MatchSup>) {
                PropPtr st = check(ctx, n.scrutinee);
                if (st->kind != PropKind::Odot) {
                    mismatch("smatch scrutinee must have an odot type, got `" + pretty(st) + "`",
                             n.scrutinee);
                }
                Context lctx = ctx;
                lctx.push_back({n.left_var, st->left});
                PropPtr c1 = check(lctx, n.left_body);
                Context rctx = ctx;
                rctx.push_back({n.right_var, st->right});
                PropPtr c2 = check(rctx, n.right_body);
                if (!prop_equal(c1, c2)) {
                    mismatch("smatch branches disagree: `" + pretty(c1) + "` vs `" + pretty(c2) +
                                 "`",
                             t);
                }
                return c1;
            } else if constexpr (std::is_same_v<T, Lam>) {
                Context inner = ctx;
                inner.push_back({n.var, n.annotation});
                return lolli(n.annotation, check(inner, n.body));
            } else if constexpr (std::is_same_v<T, App>) {
                PropPtr ft = check(ctx, n.fn);
                if (ft->kind != PropKind::Lolli) {
                    throw TypeError(TypeErrorKind::TypeMismatch,
                                    "applied term is not a function: `" + pretty(n.fn) +
                                        "` has type `" + pretty(ft) + "`");
                }
                PropPtr at = check(ctx, n.arg);
                if (!prop_equal(ft->left, at)) {
                    mismatch("argument has type `" + pretty(at) + "` but the function expects `" +
                                 pretty(ft->left) + "`",
                             n.arg);
                }
                return ft->right;
            } else if constexpr (std::is_same_v<T, Sum>) {
                PropPtr a = check(ctx, n.left);
                PropPtr b = check(ctx, n.right);
                if (!prop_equal(a, b)) {
                    mismatch("sum of a `" + pretty(a) + "` and a `" + pretty(b) + "`", t);
                }
                return a;
            } else if constexpr (std::is_same_v<T, Scale>) {
                return check(ctx, n.body);
            } else if constexpr (std::is_same_v<T, Inl>) {
                PropPtr a = check(ctx, n.body);
                if (!n.other) {
                    throw TypeError(TypeErrorKind::AnnotationRequired,
                                    "cannot infer the right summand of `" + pretty(t) +
                                        "`; annotate as inl{B} t");
                }
                return plus(a, n.other);
            } else if constexpr (std::is_same_v<T, Inr>) {
                PropPtr b = check(ctx, n.body);
                if (!n.other) {
                    throw TypeError(TypeErrorKind::AnnotationRequired,
                                    "cannot infer the left summand of `" + pretty(t) +
                                        "`; annotate as inr{A} t");
                }
                return plus(n.other, b);
            } else if constexpr (std::is_same_v<T, Inlr>) {
                return plus(check(ctx, n.left), check(ctx, n.right));
            } else if constexpr (std::is_same_v<T, CasePlus>) {
                PropPtr st = check(ctx, n.scrutinee);
                if (st->kind != PropKind::Plus) {
                    mismatch("pmatch scrutinee must have a (+) type, got `" + pretty(st) + "`",
                             n.scrutinee);
                }
                Context lctx = ctx;
                lctx.push_back({n.left_var, st->left});
                PropPtr c1 = check(lctx, n.left_body);
                Context rctx = ctx;
                rctx.push_back({n.right_var, st->right});
                PropPtr c2 = check(rctx, n.right_body);
                if (!prop_equal(c1, c2)) {
                    mismatch("pmatch branches disagree: `" + pretty(c1) + "` vs `" + pretty(c2) +
                                 "`",
                             t);
                }
                return c1;
            } else if constexpr (std::is_same_v<T, WithPair>) {
                return with(check(ctx, n.left), check(ctx, n.right));
            } else if constexpr (std::is_same_v<T, Proj1>) {
                PropPtr bt = check(ctx, n.body);
                if (bt->kind != PropKind::With) {
                    mismatch("proj1 needs a & type, got `" + pretty(bt) + "`", n.body);
                }
                return bt->left;
            } else {
                static_assert(std::is_same_v<T, Proj2>);
                PropPtr bt = check(ctx, n.body);
                if (bt->kind != PropKind::With) {
                    mismatch("proj2 needs a & type, got `" + pretty(bt) + "`", n.body);
                }
                return bt->right;
            }
        },
        t->node);
}

// Set of use counts of `x` reachable by choosing one branch at each
// smatch/pmatch. Sum and scale children share a world, so their counts add.
using Counts = std::set<std::size_t>;

Counts add_counts(const Counts &a, const Counts &b) {
    Counts out;
    for (std::size_t x : a) {
        for (std::size_t y : b) {
            out.insert(x + y);
        }
    }
    return out;
}

Counts union_counts(const Counts &a, const Counts &b) {
    Counts out = a;
    out.insert(b.begin(), b.end());
    return out;
}

Counts use_counts(const TermPtr &t, const std::string &x) {
    return std::visit(
        [&](const auto &n) -> Counts {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, Var>) {
                return {n.name == x ? std::size_t{1} : std::size_t{0}};
            } else if constexpr (std::is_same_v<T, Star>) {
                return {0};
            } else if constexpr (std::is_same_v<T, SupPair> || std::is_same_v<T, Sum> ||
                                 std::is_same_v<T, Inlr> || std::is_same_v<T, WithPair>) {
                return add_counts(use_counts(n.left, x), use_counts(n.right, x));
            } else if constexpr (std::is_same_v<T, App>) {
                return add_counts(use_counts(n.fn, x), use_counts(n.arg, x));
            } else if constexpr (std::is_same_v<T, Lam>) {
                return n.var == x ? Counts{0} : use_counts(n.body, x);
            } else if constexpr (std::is_same_v<T, Scale> || std::is_same_v<T, Inl> ||
                                 std::is_same_v<T, Inr> || std::is_same_v<T, Proj1> ||
                                 std::is_same_v<T, Proj2>) {
                return use_counts(n.body, x);
            } else {
                static_assert(std::is_same_v<T, MatchSup> || std::is_same_v<T, CasePlus>);
                Counts scrut = use_counts(n.scrutinee, x);
                Counts left = n.left_var == x ? Counts{0} : use_counts(n.left_body, x);
                Counts right = n.right_var == x ? Counts{0} : use_counts(n.right_body, x);
                return add_counts(scrut, union_counts(left, right));
            }
        },
        t->node);
}

std::string counts_to_string(const Counts &c) {
    std::string out = "{";
    for (std::size_t v : c) {
        if (out.size() > 1) {
            out += ", ";
        }
        out += std::to_string(v);
    }
    out += "}";
    return out;
}

void lint_binder(const std::string &binder_kind, const std::string &name, const TermPtr &body,
                 LintReport &report) {
    Counts c = use_counts(body, name);
    if (c != Counts{1}) {
        report.findings.push_back(
            {name, binder_kind + "-bound `" + name + "` has per-branch use counts " +
                       counts_to_string(c) + ", expected exactly 1"});
    }
}

void lint_walk(const TermPtr &t, LintReport &report) {
    std::visit(
        [&](const auto &n) {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, Lam>) {
                lint_binder("lam", n.var, n.body, report);
                lint_walk(n.body, report);
            } else if constexpr (std::is_same_v<T, MatchSup> || std::is_same_v<T, CasePlus>) {
                const char *kind = std::is_same_v<T, MatchSup> ? "smatch" : "pmatch";
                lint_walk(n.scrutinee, report);
                lint_binder(kind, n.left_var, n.left_body, report);
                lint_walk(n.left_body, report);
                lint_binder(kind, n.right_var, n.right_body, report);
                lint_walk(n.right_body, report);
            } else if constexpr (std::is_same_v<T, SupPair> || std::is_same_v<T, Sum> ||
                                 std::is_same_v<T, Inlr> || std::is_same_v<T, WithPair>) {
                lint_walk(n.left, report);
                lint_walk(n.right, report);
            } else if constexpr (std::is_same_v<T, App>) {
                lint_walk(n.fn, report);
                lint_walk(n.arg, report);
            } else if constexpr (std::is_same_v<T, Scale> || std::is_same_v<T, Inl> ||
                                 std::is_same_v<T, Inr> || std::is_same_v<T, Proj1> ||
                                 std::is_same_v<T, Proj2>) {
                lint_walk(n.body, report);
            }
        },
        t->node);
}

} // namespace

PropPtr typecheck(const Context &ctx, const TermPtr &t) {
    return check(ctx, t);
}

LintReport linear_lint(const TermPtr &t) {
    LintReport report;
    lint_walk(t, report);
    return report;
}

} // namespace lsq
