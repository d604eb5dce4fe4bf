#include "lsq/syntax.hpp"

#include "support/generators.hpp"

#include <doctest.h>

#include <functional>
#include <set>

using namespace lsq;

TEST_CASE("qpow builds the doubling proposition") {
    CHECK(prop_equal(qpow(0), top()));
    CHECK(prop_equal(qpow(1), odot(top(), top())));
    CHECK(prop_equal(qpow(2), odot(odot(top(), top()), odot(top(), top()))));
    CHECK(top_leaves(qpow(0)) == 1);
    CHECK(top_leaves(qpow(3)) == 8);
    CHECK(top_leaves(qpow(10)) == 1024);
    // Subtrees are shared: both children are the same node.
    const PropPtr q5 = qpow(5);
    CHECK(q5->left.get() == q5->right.get());
}

TEST_CASE("prop_equal is structural") {
    CHECK(prop_equal(lolli(top(), top()), lolli(top(), top())));
    CHECK(!prop_equal(lolli(top(), top()), odot(top(), top())));
    CHECK(!prop_equal(top(), qpow(1)));
    CHECK(prop_equal(plus(top(), qpow(1)), plus(top(), qpow(1))));
    CHECK(!prop_equal(plus(top(), qpow(1)), with(top(), qpow(1))));
}

TEST_CASE("free_vars") {
    CHECK(free_vars(star(Scalar(1, 0))).empty());
    CHECK(free_vars(var("x")) == std::set<std::string>{"x"});
    CHECK(free_vars(app(var("f"), var("x"))) == std::set<std::string>({"f", "x"}));
    CHECK(free_vars(lam("x", top(), app(var("f"), var("x")))) == std::set<std::string>{"f"});
    CHECK(free_vars(match_sup(var("s"), "x", var("x"), "y", var("z"))) ==
          std::set<std::string>({"s", "z"}));
    CHECK(free_vars(case_plus(var("s"), "x", var("x"), "y", var("y"))) ==
          std::set<std::string>{"s"});
}

TEST_CASE("alpha_equal identifies renamed binders") {
    CHECK(alpha_equal(lam("x", top(), var("x")), lam("y", top(), var("y"))));
    CHECK(!alpha_equal(lam("x", top(), var("x")), lam("y", top(), var("x"))));
    CHECK(!alpha_equal(lam("x", top(), var("x")), lam("x", qpow(1), var("x"))));
    CHECK(alpha_equal(match_sup(var("s"), "x", var("x"), "y", var("y")),
                      match_sup(var("s"), "a", var("a"), "b", var("b"))));
    CHECK(!alpha_equal(var("x"), var("y")));
    CHECK(alpha_equal(star(Scalar(0.5, 0)), star(Scalar(0.5, 0))));
    CHECK(!alpha_equal(star(Scalar(0.5, 0)), star(Scalar(0.25, 0))));
    CHECK(!alpha_equal(scale(Scalar(2, 0), var("x")), scale(Scalar(3, 0), var("x"))));
    // Free variables compare by name even across binders.
    CHECK(!alpha_equal(lam("x", top(), var("z")), lam("y", top(), var("w"))));
    CHECK(alpha_equal(inl(var("x")), inl(var("x"))));
    CHECK(alpha_equal(inlr(var("x"), var("y")), inlr(var("x"), var("y"))));
}

TEST_CASE("substitute replaces free occurrences only") {
    const TermPtr u = star(Scalar(2, 0));
    CHECK(alpha_equal(substitute(var("x"), "x", u), u));
    CHECK(alpha_equal(substitute(var("y"), "x", u), var("y")));
    CHECK(alpha_equal(substitute(lam("x", top(), var("x")), "x", u),
                      lam("x", top(), var("x"))));
    CHECK(alpha_equal(substitute(lam("y", top(), var("x")), "x", u), lam("y", top(), u)));
    CHECK(alpha_equal(substitute(sum(var("x"), var("x")), "x", u), sum(u, u)));
    // Branch binders shadow like lambdas do.
    CHECK(alpha_equal(substitute(match_sup(var("x"), "x", var("x"), "y", var("x")), "x", u),
                      match_sup(u, "x", var("x"), "y", u)));
}

TEST_CASE("substitute avoids capture") {
    // (lam y. x)[y/x] must not let the replacement's y be captured.
    const TermPtr t = lam("y", top(), app(var("x"), var("y")));
    const TermPtr r = substitute(t, "x", var("y"));
    const auto *l = as<Lam>(r);
    REQUIRE(l != nullptr);
    CHECK(l->var != "y");
    const auto *a = as<App>(l->body);
    REQUIRE(a != nullptr);
    CHECK(alpha_equal(a->fn, var("y"))); // the free y we substituted in
    CHECK(alpha_equal(a->arg, var(l->var)));
    CHECK(alpha_equal(r, lam("w", top(), app(var("y"), var("w")))));
}

TEST_CASE("substitute leaves the term alone when x is not free") {
    const TermPtr t = sum(var("a"), lam("x", top(), var("x")));
    CHECK(substitute(t, "zz", star(Scalar(1, 0))).get() == t.get());
}

TEST_CASE("uniquify_binders makes every binder distinct") {
    testgen::Rng rng(77);
    for (int i = 0; i < 200; ++i) {
        const TermPtr t = testgen::random_ast(4, rng);
        const TermPtr u = uniquify_binders(t);
        CHECK(alpha_equal(t, u));
        // Collect binder names and free variables; no clashes allowed.
        std::set<std::string> binders;
        bool distinct = true;
        const std::set<std::string> free = free_vars(u);
        const std::function<void(const TermPtr &)> walk = [&](const TermPtr &node) {
            const auto visit_binder = [&](const std::string &name) {
                if (!binders.insert(name).second || free.count(name)) {
                    distinct = false;
                }
            };
            if (const auto *l = as<Lam>(node)) {
                visit_binder(l->var);
                walk(l->body);
            } else if (const auto *m = as<MatchSup>(node)) {
                walk(m->scrutinee);
                visit_binder(m->left_var);
                walk(m->left_body);
                visit_binder(m->right_var);
                walk(m->right_body);
            } else if (const auto *c = as<CasePlus>(node)) {
                walk(c->scrutinee);
                visit_binder(c->left_var);
                walk(c->left_body);
                visit_binder(c->right_var);
                walk(c->right_body);
            } else if (const auto *a = as<App>(node)) {
                walk(a->fn);
                walk(a->arg);
            } else if (const auto *s = as<Sum>(node)) {
                walk(s->left);
                walk(s->right);
            } else if (const auto *p = as<SupPair>(node)) {
                walk(p->left);
                walk(p->right);
            } else if (const auto *sc = as<Scale>(node)) {
                walk(sc->body);
            } else if (const auto *il = as<Inl>(node)) {
                walk(il->body);
            } else if (const auto *ir = as<Inr>(node)) {
                walk(ir->body);
            } else if (const auto *b = as<Inlr>(node)) {
                walk(b->left);
                walk(b->right);
            } else if (const auto *w = as<WithPair>(node)) {
                walk(w->left);
                walk(w->right);
            } else if (const auto *p1 = as<Proj1>(node)) {
                walk(p1->body);
            } else if (const auto *p2 = as<Proj2>(node)) {
                walk(p2->body);
            }
        };
        walk(u);
        CHECK(distinct);
    }
}

TEST_CASE("fresh_name avoids the used set and records its pick") {
    std::set<std::string> used = {"x", "x_1"};
    const std::string a = fresh_name("x", used);
    CHECK(a != "x");
    CHECK(a != "x_1");
    CHECK(used.count(a) == 1);
    const std::string b = fresh_name("y", used);
    CHECK(b == "y");
    CHECK(used.count("y") == 1);
}
