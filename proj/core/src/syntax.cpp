#include "lsq/syntax.hpp"

#include <map>
#include <utility>

namespace lsq {

namespace {

PropPtr make_prop(PropKind kind, PropPtr l, PropPtr r) {
    return std::make_shared<const Prop>(Prop{kind, std::move(l), std::move(r)});
}

} // namespace

PropPtr top() {
    static const PropPtr instance = make_prop(PropKind::Top, nullptr, nullptr);
    return instance;
}

PropPtr odot(PropPtr a, PropPtr b) {
    return make_prop(PropKind::Odot, std::move(a), std::move(b));
}

PropPtr lolli(PropPtr a, PropPtr b) {
    return make_prop(PropKind::Lolli, std::move(a), std::move(b));
}

PropPtr plus(PropPtr a, PropPtr b) {
    return make_prop(PropKind::Plus, std::move(a), std::move(b));
}

PropPtr with(PropPtr a, PropPtr b) {
    return make_prop(PropKind::With, std::move(a), std::move(b));
}

PropPtr qpow(std::size_t n) {
    PropPtr p = top();
    for (std::size_t i = 0; i < n; ++i) {
        p = odot(p, p);
    }
    return p;
}

bool prop_equal(const PropPtr &a, const PropPtr &b) {
    if (a.get() == b.get()) {
        return true;
    }
    if (!a || !b || a->kind != b->kind) {
        return false;
    }
    if (a->kind == PropKind::Top) {
        return true;
    }
    return prop_equal(a->left, b->left) && prop_equal(a->right, b->right);
}

std::size_t top_leaves(const PropPtr &p) {
    if (!p) {
        return 0;
    }
    if (p->kind == PropKind::Top) {
        return 1;
    }
    return top_leaves(p->left) + top_leaves(p->right);
}

TermPtr make_term(TermNode node) {
    return std::make_shared<const Term>(Term{std::move(node)});
}

TermPtr var(std::string name) {
    return make_term(Var{std::move(name)});
}
TermPtr star(Scalar amplitude) {
    return make_term(Star{amplitude});
}
TermPtr sup_pair(TermPtr l, TermPtr r) {
    return make_term(SupPair{std::move(l), std::move(r)});
}
TermPtr match_sup(TermPtr scrutinee, std::string x, TermPtr left_body, std::string y,
                  TermPtr right_body) {
    return make_term(MatchSup{std::move(scrutinee), std::move(x), std::move(left_body),
                              std::move(y), std::move(right_body)});
}
TermPtr lam(std::string x, PropPtr annotation, TermPtr body) {
    return make_term(Lam{std::move(x), std::move(annotation), std::move(body)});
}
TermPtr app(TermPtr fn, TermPtr arg) {
    return make_term(App{std::move(fn), std::move(arg)});
}
TermPtr sum(TermPtr l, TermPtr r) {
    return make_term(Sum{std::move(l), std::move(r)});
}
TermPtr scale(Scalar factor, TermPtr body) {
    return make_term(Scale{factor, std::move(body)});
}
TermPtr inl(TermPtr body, PropPtr other) {
    return make_term(Inl{std::move(body), std::move(other)});
}
TermPtr inr(TermPtr body, PropPtr other) {
    return make_term(Inr{std::move(body), std::move(other)});
}
TermPtr inlr(TermPtr l, TermPtr r) {
    return make_term(Inlr{std::move(l), std::move(r)});
}
TermPtr case_plus(TermPtr scrutinee, std::string x, TermPtr left_body, std::string y,
                  TermPtr right_body) {
    return make_term(CasePlus{std::move(scrutinee), std::move(x), std::move(left_body),
                              std::move(y), std::move(right_body)});
}
TermPtr with_pair(TermPtr l, TermPtr r) {
    return make_term(WithPair{std::move(l), std::move(r)});
}
TermPtr proj1(TermPtr body) {
    return make_term(Proj1{std::move(body)});
}
TermPtr proj2(TermPtr body) {
    return make_term(Proj2{std::move(body)});
}

namespace {

void collect_free(const TermPtr &t, std::set<std::string> &bound, std::set<std::string> &out) {
    std::visit(
        [&](const auto &n) {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, Var>) {
                if (!bound.contains(n.name)) {
                    out.insert(n.name);
                }
            } else if constexpr (std::is_same_v<T, Star>) {
                // no variables
            } else if constexpr (std::is_same_v<T, SupPair> || std::is_same_v<T, Sum> ||
                                 std::is_same_v<T, Inlr> || std::is_same_v<T, WithPair>) {
                collect_free(n.left, bound, out);
                collect_free(n.right, bound, out);
            } else if constexpr (std::is_same_v<T, MatchSup> || std::is_same_v<T, CasePlus>) {
                collect_free(n.scrutinee, bound, out);
                bool had_l = bound.contains(n.left_var);
                bound.insert(n.left_var);
                collect_free(n.left_body, bound, out);
                if (!had_l) {
                    bound.erase(n.left_var);
                }
                bool had_r = bound.contains(n.right_var);
                bound.insert(n.right_var);
                collect_free(n.right_body, bound, out);
                if (!had_r) {
                    bound.erase(n.right_var);
                }
            } else if constexpr (std::is_same_v<T, Lam>) {
                bool had = bound.contains(n.var);
                bound.insert(n.var);
                collect_free(n.body, bound, out);
                if (!had) {
                    bound.erase(n.var);
                }
            } else if constexpr (std::is_same_v<T, App>) {
                collect_free(n.fn, bound, out);
                collect_free(n.arg, bound, out);
            } else if constexpr (std::is_same_v<T, Scale> || std::is_same_v<T, Inl> ||
                                 std::is_same_v<T, Inr> || std::is_same_v<T, Proj1> ||
                                 std::is_same_v<T, Proj2>) {
                collect_free(n.body, bound, out);
            }
        },
        t->node);
}

// De Bruijn-style environments for alpha comparison.
struct AlphaEnv {
    std::map<std::string, int> left, right;
    int next = 0;

    int lookup_left(const std::string &n) const {
        auto it = left.find(n);
        return it == left.end() ? -1 : it->second;
    }
    int lookup_right(const std::string &n) const {
        auto it = right.find(n);
        return it == right.end() ? -1 : it->second;
    }
};

bool alpha_eq(const TermPtr &a, const TermPtr &b, AlphaEnv &env);

bool alpha_eq_binder(const TermPtr &ba, const std::string &na, const TermPtr &bb,
                     const std::string &nb, AlphaEnv &env) {
    AlphaEnv inner = env;
    inner.left[na] = inner.next;
    inner.right[nb] = inner.next;
    ++inner.next;
    return alpha_eq(ba, bb, inner);
}

bool alpha_eq(const TermPtr &a, const TermPtr &b, AlphaEnv &env) {
    if (a.get() == b.get() && env.left == env.right) {
        return true;
    }
    if (a->node.index() != b->node.index()) {
        return false;
    }
    const auto &nb = b->node;
    return std::visit(
        [&](const auto &na) -> bool {
            using T = std::decay_t<decltype(na)>;
            const T &other = std::get<T>(nb);
            if constexpr (std::is_same_v<T, Var>) {
                int ia = env.lookup_left(na.name);
                int ib = env.lookup_right(other.name);
                if (ia < 0 && ib < 0) {
                    return na.name == other.name; // both free
                }
                return ia == ib;
            } else if constexpr (std::is_same_v<T, Star>) {
                return na.amplitude == other.amplitude;
            } else if constexpr (std::is_same_v<T, SupPair> || std::is_same_v<T, Sum> ||
                                 std::is_same_v<T, Inlr> || std::is_same_v<T, WithPair>) {
                return alpha_eq(na.left, other.left, env) && alpha_eq(na.right, other.right, env);
            } else if constexpr (std::is_same_v<T, MatchSup> || std::is_same_v<T, CasePlus>) {
                return alpha_eq(na.scrutinee, other.scrutinee, env) &&
                       alpha_eq_binder(na.left_body, na.left_var, other.left_body,
                                       other.left_var, env) &&
                       alpha_eq_binder(na.right_body, na.right_var, other.right_body,
                                       other.right_var, env);
            } else if constexpr (std::is_same_v<T, Lam>) {
                return prop_equal(na.annotation, other.annotation) &&
                       alpha_eq_binder(na.body, na.var, other.body, other.var, env);
            } else if constexpr (std::is_same_v<T, App>) {
                return alpha_eq(na.fn, other.fn, env) && alpha_eq(na.arg, other.arg, env);
            } else if constexpr (std::is_same_v<T, Scale>) {
                return na.factor == other.factor && alpha_eq(na.body, other.body, env);
            } else if constexpr (std::is_same_v<T, Inl> || std::is_same_v<T, Inr>) {
                if ((na.other == nullptr) != (other.other == nullptr)) {
                    return false;
                }
                if (na.other && !prop_equal(na.other, other.other)) {
                    return false;
                }
                return alpha_eq(na.body, other.body, env);
            } else if constexpr (std::is_same_v<T, Proj1> || std::is_same_v<T, Proj2>) {
                return alpha_eq(na.body, other.body, env);
            }
        },
        a->node);
}

struct Subst {
    const std::string &target;
    const TermPtr &replacement;
    const std::set<std::string> &repl_free;

    TermPtr apply(const TermPtr &t) {
        return std::visit([&](const auto &n) { return this->visit_node(t, n); }, t->node);
    }

    // Substitution under one binder; renames the binder when it would capture
    // a free variable of the replacement.
    std::pair<std::string, TermPtr> under_binder(const std::string &name, const TermPtr &body) {
        if (name == target) {
            return {name, body}; // target shadowed, leave untouched
        }
        std::string bound = name;
        TermPtr inner = body;
        if (repl_free.contains(name) && free_vars(body).contains(target)) {
            std::set<std::string> used = free_vars(body);
            used.insert(repl_free.begin(), repl_free.end());
            used.insert(target);
            bound = fresh_name(name, used);
            inner = substitute(body, name, var(bound));
        }
        return {bound, apply(inner)};
    }

    TermPtr visit_node(const TermPtr &t, const Var &n) {
        return n.name == target ? replacement : t;
    }
    TermPtr visit_node(const TermPtr &t, const Star &) { return t; }
    TermPtr visit_node(const TermPtr &t, const SupPair &n) {
        TermPtr l = apply(n.left), r = apply(n.right);
        return l == n.left && r == n.right ? t : sup_pair(l, r);
    }
    TermPtr visit_node(const TermPtr &t, const MatchSup &n) {
        TermPtr s = apply(n.scrutinee);
        auto [lv, lb] = under_binder(n.left_var, n.left_body);
        auto [rv, rb] = under_binder(n.right_var, n.right_body);
        if (s == n.scrutinee && lb == n.left_body && rb == n.right_body && lv == n.left_var &&
            rv == n.right_var) {
            return t;
        }
        return match_sup(s, lv, lb, rv, rb);
    }
    TermPtr visit_node(const TermPtr &t, const Lam &n) {
        auto [v, b] = under_binder(n.var, n.body);
        return v == n.var && b == n.body ? t : lam(v, n.annotation, b);
    }
    TermPtr visit_node(const TermPtr &t, const App &n) {
        TermPtr f = apply(n.fn), a = apply(n.arg);
        return f == n.fn && a == n.arg ? t : app(f, a);
    }
    TermPtr visit_node(const TermPtr &t, const Sum &n) {
        TermPtr l = apply(n.left), r = apply(n.right);
        return l == n.left && r == n.right ? t : sum(l, r);
    }
    TermPtr visit_node(const TermPtr &t, const Scale &n) {
        TermPtr b = apply(n.body);
        return b == n.body ? t : scale(n.factor, b);
    }
    TermPtr visit_node(const TermPtr &t, const Inl &n) {
        TermPtr b = apply(n.body);
        return b == n.body ? t : inl(b, n.other);
    }
    TermPtr visit_node(const TermPtr &t, const Inr &n) {
        TermPtr b = apply(n.body);
        return b == n.body ? t : inr(b, n.other);
    }
    TermPtr visit_node(const TermPtr &t, const Inlr &n) {
        TermPtr l = apply(n.left), r = apply(n.right);
        return l == n.left && r == n.right ? t : inlr(l, r);
    }
    TermPtr visit_node(const TermPtr &t, const CasePlus &n) {
        TermPtr s = apply(n.scrutinee);
        auto [lv, lb] = under_binder(n.left_var, n.left_body);
        auto [rv, rb] = under_binder(n.right_var, n.right_body);
        if (s == n.scrutinee && lb == n.left_body && rb == n.right_body && lv == n.left_var &&
            rv == n.right_var) {
            return t;
        }
        return case_plus(s, lv, lb, rv, rb);
    }
    TermPtr visit_node(const TermPtr &t, const WithPair &n) {
        TermPtr l = apply(n.left), r = apply(n.right);
        return l == n.left && r == n.right ? t : with_pair(l, r);
    }
    TermPtr visit_node(const TermPtr &t, const Proj1 &n) {
        TermPtr b = apply(n.body);
        return b == n.body ? t : proj1(b);
    }
    TermPtr visit_node(const TermPtr &t, const Proj2 &n) {
        TermPtr b = apply(n.body);
        return b == n.body ? t : proj2(b);
    }
};

struct Uniquifier {
    std::set<std::string> used;
    std::map<std::string, std::string> renames;

    TermPtr walk(const TermPtr &t) {
        return std::visit(
            [&](const auto &n) -> TermPtr {
                using T = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<T, Var>) {
                    auto it = renames.find(n.name);
                    return it == renames.end() || it->second == n.name ? t : var(it->second);
                } else if constexpr (std::is_same_v<T, Star>) {
                    return t;
                } else if constexpr (std::is_same_v<T, SupPair>) {
                    return sup_pair(walk(n.left), walk(n.right));
                } else if constexpr (std::is_same_v<T, Sum>) {
                    return sum(walk(n.left), walk(n.right));
                } else if constexpr (std::is_same_v<T, Inlr>) {
                    return inlr(walk(n.left), walk(n.right));
                } else if constexpr (std::is_same_v<T, WithPair>) {
                    return with_pair(walk(n.left), walk(n.right));
                } else if constexpr (std::is_same_v<T, MatchSup>) {
                    TermPtr s = walk(n.scrutinee);
                    auto [lv, lb] = binder(n.left_var, n.left_body);
                    auto [rv, rb] = binder(n.right_var, n.right_body);
                    return match_sup(s, lv, lb, rv, rb);
                } else if constexpr (std::is_same_v<T, CasePlus>) {
                    TermPtr s = walk(n.scrutinee);
                    auto [lv, lb] = binder(n.left_var, n.left_body);
                    auto [rv, rb] = binder(n.right_var, n.right_body);
                    return case_plus(s, lv, lb, rv, rb);
                } else if constexpr (std::is_same_v<T, Lam>) {
                    auto [v, b] = binder(n.var, n.body);
                    return lam(v, n.annotation, b);
                } else if constexpr (std::is_same_v<T, App>) {
                    return app(walk(n.fn), walk(n.arg));
                } else if constexpr (std::is_same_v<T, Scale>) {
                    return scale(n.factor, walk(n.body));
                } else if constexpr (std::is_same_v<T, Inl>) {
                    return inl(walk(n.body), n.other);
                } else if constexpr (std::is_same_v<T, Inr>) {
                    return inr(walk(n.body), n.other);
                } else if constexpr (std::is_same_v<T, Proj1>) {
                    return proj1(walk(n.body));
                } else {
                    static_assert(std::is_same_v<T, Proj2>);
                    return proj2(walk(n.body));
                }
            },
            t->node);
    }

    std::pair<std::string, TermPtr> binder(const std::string &name, const TermPtr &body) {
        std::string chosen = fresh_name(name, used);
        auto saved = renames.find(name);
        std::string old = saved == renames.end() ? std::string() : saved->second;
        bool had = saved != renames.end();
        renames[name] = chosen;
        TermPtr b = walk(body);
        if (had) {
            renames[name] = old;
        } else {
            renames.erase(name);
        }
        return {chosen, b};
    }
};

} // namespace

std::set<std::string> free_vars(const TermPtr &t) {
    std::set<std::string> bound, out;
    collect_free(t, bound, out);
    return out;
}

bool alpha_equal(const TermPtr &a, const TermPtr &b) {
    if (!a || !b) {
        return a == b;
    }
    AlphaEnv env;
    return alpha_eq(a, b, env);
}

TermPtr substitute(const TermPtr &t, const std::string &x, const TermPtr &u) {
    std::set<std::string> repl_free = free_vars(u);
    Subst s{x, u, repl_free};
    return s.apply(t);
}

std::string fresh_name(const std::string &base, std::set<std::string> &used) {
    if (!used.contains(base)) {
        used.insert(base);
        return base;
    }
    for (int i = 1;; ++i) {
        std::string candidate = base + "_" + std::to_string(i);
        if (!used.contains(candidate)) {
            used.insert(candidate);
            return candidate;
        }
    }
}

TermPtr uniquify_binders(const TermPtr &t) {
    Uniquifier u;
    u.used = free_vars(t);
    return u.walk(t);
}

} // namespace lsq
