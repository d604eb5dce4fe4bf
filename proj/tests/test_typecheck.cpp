#include "lsq/typecheck.hpp"

#include "lsq/printer.hpp"
#include "support/generators.hpp"

#include <doctest.h>

#include <functional>
#include <string>

using namespace lsq;

namespace {

TypeErrorKind kind_of(const std::function<void()> &f) {
    try {
        f();
    } catch (const TypeError &e) {
        return e.kind;
    }
    FAIL("expected a TypeError");
    return TypeErrorKind::TypeMismatch;
}

} // namespace

TEST_CASE("core typing rules") {
    CHECK(prop_equal(typecheck({}, star(Scalar(0.5, 0.5))), top()));
    CHECK(prop_equal(typecheck({}, sup_pair(star(Scalar(1, 0)), star(Scalar(0, 0)))), qpow(1)));
    CHECK(prop_equal(typecheck({}, lam("x", top(), var("x"))), lolli(top(), top())));
    CHECK(prop_equal(typecheck({}, app(lam("x", top(), var("x")), star(Scalar(1, 0)))), top()));
    CHECK(prop_equal(typecheck({}, sum(star(Scalar(1, 0)), star(Scalar(2, 0)))), top()));
    CHECK(prop_equal(typecheck({}, scale(Scalar(3, 0), star(Scalar(1, 0)))), top()));
}

TEST_CASE("variables come from the context, innermost binding wins") {
    const Context ctx = {{"x", top()}, {"x", qpow(1)}};
    CHECK(prop_equal(typecheck(ctx, var("x")), qpow(1)));
    CHECK(kind_of([] { typecheck({}, var("nope")); }) == TypeErrorKind::UnboundVariable);
}

TEST_CASE("smatch binds component types in both branches") {
    // smatch p { x => x | y => y } : T for p : T odot T
    const TermPtr p = sup_pair(star(Scalar(1, 0)), star(Scalar(0, 0)));
    const TermPtr m = match_sup(p, "x", var("x"), "y", var("y"));
    CHECK(prop_equal(typecheck({}, m), top()));

    // Branch results must agree.
    const TermPtr bad =
        match_sup(p, "x", var("x"), "y", sup_pair(star(Scalar(1, 0)), star(Scalar(1, 0))));
    CHECK(kind_of([&] { typecheck({}, bad); }) == TypeErrorKind::TypeMismatch);

    // Scrutinee must be a pair type.
    const TermPtr not_pair = match_sup(star(Scalar(1, 0)), "x", var("x"), "y", var("y"));
    CHECK(kind_of([&] { typecheck({}, not_pair); }) == TypeErrorKind::TypeMismatch);
}

TEST_CASE("application checks the argument type") {
    const TermPtr f = lam("x", qpow(1), var("x"));
    CHECK(prop_equal(typecheck({}, app(f, sup_pair(star(Scalar(1, 0)), star(Scalar(0, 0))))),
                     qpow(1)));
    CHECK(kind_of([&] { typecheck({}, app(f, star(Scalar(1, 0)))); }) ==
          TypeErrorKind::TypeMismatch);
    CHECK(kind_of([&] { typecheck({}, app(star(Scalar(1, 0)), star(Scalar(1, 0)))); }) ==
          TypeErrorKind::TypeMismatch);
}

TEST_CASE("sum requires equal types on both sides") {
    const TermPtr bad = sum(star(Scalar(1, 0)), sup_pair(star(Scalar(1, 0)), star(Scalar(0, 0))));
    CHECK(kind_of([&] { typecheck({}, bad); }) == TypeErrorKind::TypeMismatch);
    // The error message names the offending subterm.
    try {
        typecheck({}, bad);
        FAIL("expected TypeError");
    } catch (const TypeError &e) {
        CHECK(std::string(e.what()).find("star(1) + [star(1), star(0)]") != std::string::npos);
    }
}

TEST_CASE("scale is transparent to typing") {
    const TermPtr t = scale(Scalar(0, 1), sup_pair(star(Scalar(1, 0)), star(Scalar(0, 0))));
    CHECK(prop_equal(typecheck({}, t), qpow(1)));
}

TEST_CASE("typing of the plus connective") {
    CHECK(prop_equal(typecheck({}, inl(star(Scalar(1, 0)), qpow(1))), plus(top(), qpow(1))));
    CHECK(prop_equal(typecheck({}, inr(star(Scalar(1, 0)), qpow(1))), plus(qpow(1), top())));
    CHECK(prop_equal(typecheck({}, inlr(star(Scalar(1, 0)), star(Scalar(2, 0)))),
                     plus(top(), top())));
    CHECK(kind_of([] { typecheck({}, inl(star(Scalar(1, 0)))); }) ==
          TypeErrorKind::AnnotationRequired);
    CHECK(kind_of([] { typecheck({}, inr(star(Scalar(1, 0)))); }) ==
          TypeErrorKind::AnnotationRequired);

    const TermPtr c = case_plus(inl(star(Scalar(1, 0)), top()), "x", var("x"), "y", var("y"));
    CHECK(prop_equal(typecheck({}, c), top()));
    CHECK(kind_of([] {
              typecheck({}, case_plus(star(Scalar(1, 0)), "x", var("x"), "y", var("y")));
          }) == TypeErrorKind::TypeMismatch);
}

TEST_CASE("typing of the with connective") {
    const TermPtr w = with_pair(star(Scalar(1, 0)), sup_pair(star(Scalar(1, 0)), star(Scalar(0, 0))));
    CHECK(prop_equal(typecheck({}, w), with(top(), qpow(1))));
    CHECK(prop_equal(typecheck({}, proj1(w)), top()));
    CHECK(prop_equal(typecheck({}, proj2(w)), qpow(1)));
    CHECK(kind_of([] { typecheck({}, proj1(star(Scalar(1, 0)))); }) ==
          TypeErrorKind::TypeMismatch);
}

TEST_CASE("contexts are additive: a variable may appear in both components") {
    // lam x: T. [x, x] typechecks even though x is used twice.
    const TermPtr t = lam("x", top(), sup_pair(var("x"), var("x")));
    CHECK(prop_equal(typecheck({}, t), lolli(top(), qpow(1))));
    // And zero uses are fine for the type system too.
    const TermPtr u = lam("x", top(), star(Scalar(1, 0)));
    CHECK(prop_equal(typecheck({}, u), lolli(top(), top())));
}

TEST_CASE("generated canonical terms type at the expected qubit level") {
    testgen::Rng rng(5);
    for (std::size_t n = 0; n <= 5; ++n) {
        for (int i = 0; i < 20; ++i) {
            CHECK(prop_equal(typecheck({}, testgen::random_canonical(n, rng)), qpow(n)));
        }
    }
}

TEST_CASE("generated closed q-terms typecheck") {
    testgen::Rng rng(6);
    for (int i = 0; i < 100; ++i) {
        const std::size_t n = testgen::pick(rng, 3);
        const TermPtr t = testgen::random_qterm(n, 5, rng);
        CHECK(prop_equal(typecheck({}, t), qpow(n)));
    }
}

TEST_CASE("linear lint accepts exactly-once usage") {
    CHECK(linear_lint(lam("x", top(), var("x"))).clean());
    // One use in each parallel branch counts as once.
    const TermPtr m = lam("p", qpow(1), match_sup(var("p"), "x", var("x"), "y", var("y")));
    CHECK(linear_lint(m).clean());
}

TEST_CASE("linear lint flags zero and double uses") {
    const LintReport drop = linear_lint(lam("x", top(), star(Scalar(1, 0))));
    REQUIRE(drop.findings.size() == 1);
    CHECK(drop.findings[0].variable == "x");

    const LintReport dup = linear_lint(lam("x", top(), sup_pair(var("x"), var("x"))));
    REQUIRE(dup.findings.size() == 1);
    CHECK(dup.findings[0].variable == "x");

    // Used once in one branch and twice in the other: flagged.
    const TermPtr uneven =
        lam("p", qpow(1), match_sup(var("p"), "x", var("x"), "y", sum(var("y"), var("y"))));
    CHECK(linear_lint(uneven).findings.size() == 1);
}

TEST_CASE("linear lint treats scrutinee and branches as one world") {
    // x is used in the scrutinee and again in a branch: 2 on that path.
    const TermPtr t =
        lam("x", qpow(1), match_sup(var("x"), "a", var("a"), "b", var("b")));
    CHECK(linear_lint(t).clean());
    const TermPtr bad =
        lam("x", qpow(1), match_sup(var("x"), "a", var("x"), "b", var("b")));
    CHECK(!linear_lint(bad).clean());
}
