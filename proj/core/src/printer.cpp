#include "lsq/printer.hpp"

namespace lsq {

namespace {

// Proposition levels: lolli = 1, binary connectives = 2, atoms = 3. Chains of
// one connective are right-associative; mixing connectives needs parens.
std::string pp_prop(const PropPtr &p, int min_level) {
    std::string out;
    int level = 3;
    switch (p->kind) {
    case PropKind::Top:
        out = "T";
        break;
    case PropKind::Lolli:
        level = 1;
        out = pp_prop(p->left, 2) + " -o " + pp_prop(p->right, 1);
        break;
    case PropKind::Odot:
    case PropKind::Plus:
    case PropKind::With: {
        level = 2;
        const char *op = p->kind == PropKind::Odot  ? " odot "
                         : p->kind == PropKind::Plus ? " (+) "
                                                     : " & ";
        int right_min = p->right->kind == p->kind ? 2 : 3;
        out = pp_prop(p->left, 3) + op + pp_prop(p->right, right_min);
        break;
    }
    }
    if (level < min_level) {
        return "(" + out + ")";
    }
    return out;
}

// Term levels: lam = 0, sum = 1, scale = 2, app = 3, factor = 4.
std::string pp_term(const TermPtr &t, int min_level) {
    std::string out;
    int level = 4;
    std::visit(
        [&](const auto &n) {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, Var>) {
                out = n.name;
            } else if constexpr (std::is_same_v<T, Star>) {
                out = "star(" + format_scalar(n.amplitude) + ")";
            } else if constexpr (std::is_same_v<T, SupPair>) {
                out = "[" + pp_term(n.left, 0) + ", " + pp_term(n.right, 0) + "]";
            } else if constexpr (std::is_same_v<T, WithPair>) {
                out = "<" + pp_term(n.left, 0) + ", " + pp_term(n.right, 0) + ">";
            } else if constexpr (std::is_same_v<T, MatchSup>) {
                out = "smatch " + pp_term(n.scrutinee, 0) + " { " + n.left_var + " => " +
                      pp_term(n.left_body, 0) + " | " + n.right_var + " => " +
                      pp_term(n.right_body, 0) + " }";
            } else if constexpr (std::is_same_v<T, CasePlus>) {
                out = "pmatch " + pp_term(n.scrutinee, 0) + " { inl " + n.left_var + " => " +
                      pp_term(n.left_body, 0) + " | inr " + n.right_var + " => " +
                      pp_term(n.right_body, 0) + " }";
            } else if constexpr (std::is_same_v<T, Lam>) {
                level = 0;
                out = "lam " + n.var + ": " + pp_prop(n.annotation, 0) + ". " +
                      pp_term(n.body, 0);
            } else if constexpr (std::is_same_v<T, App>) {
                level = 3;
                out = pp_term(n.fn, 3) + " " + pp_term(n.arg, 4);
            } else if constexpr (std::is_same_v<T, Sum>) {
                level = 1;
                out = pp_term(n.left, 1) + " + " + pp_term(n.right, 2);
            } else if constexpr (std::is_same_v<T, Scale>) {
                level = 2;
                out = format_scalar(n.factor) + " * " + pp_term(n.body, 3);
            } else if constexpr (std::is_same_v<T, Inl>) {
                out = (n.other ? "inl{" + pp_prop(n.other, 0) + "} " : "inl ") +
                      pp_term(n.body, 4);
            } else if constexpr (std::is_same_v<T, Inr>) {
                out = (n.other ? "inr{" + pp_prop(n.other, 0) + "} " : "inr ") +
                      pp_term(n.body, 4);
            } else if constexpr (std::is_same_v<T, Inlr>) {
                out = "inlr " + pp_term(n.left, 4) + " " + pp_term(n.right, 4);
            } else if constexpr (std::is_same_v<T, Proj1>) {
                out = "proj1 " + pp_term(n.body, 4);
            } else if constexpr (std::is_same_v<T, Proj2>) {
                out = "proj2 " + pp_term(n.body, 4);
            }
        },
        t->node);
    if (level < min_level) {
        return "(" + out + ")";
    }
    return out;
}

} // namespace

std::string pretty(const PropPtr &p) {
    return pp_prop(p, 0);
}

std::string pretty(const TermPtr &t) {
    return pp_term(t, 0);
}

} // namespace lsq
