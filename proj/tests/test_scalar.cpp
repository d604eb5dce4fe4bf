#include "lsq/errors.hpp"
#include "lsq/scalar.hpp"

#include "support/generators.hpp"

#include <doctest.h>

#include <cmath>

using namespace lsq;

namespace {

// Independently computed literal values, frozen here.
void check_munch(std::string_view text, Scalar want, std::size_t want_len) {
    auto got = munch_scalar(text);
    REQUIRE(got.has_value());
    CHECK(got->first == want);
    CHECK(got->second == want_len);
}

} // namespace

TEST_CASE("real literals") {
    check_munch("2", Scalar(2, 0), 1);
    check_munch("2.5", Scalar(2.5, 0), 3);
    check_munch("0.25", Scalar(0.25, 0), 4);
    check_munch("-3", Scalar(-3, 0), 2);
    check_munch("1e3", Scalar(1000, 0), 3);
    check_munch("2.5e-3", Scalar(0.0025, 0), 6);
    check_munch("-1.5E2", Scalar(-150, 0), 6);
}

TEST_CASE("imaginary literals") {
    check_munch("2i", Scalar(0, 2), 2);
    check_munch("-2i", Scalar(0, -2), 3);
    check_munch("0.5i", Scalar(0, 0.5), 4);
    check_munch("1e-2i", Scalar(0, 0.01), 5);
}

TEST_CASE("composite literals") {
    check_munch("1+2i", Scalar(1, 2), 4);
    check_munch("1-2i", Scalar(1, -2), 4);
    check_munch("-1+0.5i", Scalar(-1, 0.5), 7);
    check_munch("0.5+0.5i", Scalar(0.5, 0.5), 8);
    check_munch("2e1-3e-1i", Scalar(20, -0.3), 9);
}

TEST_CASE("inverse square root literals") {
    check_munch("1/sqrt2", Scalar(kInvSqrt2, 0), 7);
    check_munch("-1/sqrt2", Scalar(-kInvSqrt2, 0), 8);
    check_munch("1/sqrt2i", Scalar(0, kInvSqrt2), 8);
    check_munch("-1/sqrt2i", Scalar(0, -kInvSqrt2), 9);
}

TEST_CASE("munch is maximal but stops at non-literal text") {
    // `2+x` is not a composite literal: the tail after '+' must be a
    // number with an `i` suffix.
    check_munch("2+x", Scalar(2, 0), 1);
    check_munch("2+3", Scalar(2, 0), 1);  // no i suffix on the tail
    check_munch("2i+3i", Scalar(0, 2), 2); // first imaginary only
    check_munch("1/sqrt3", Scalar(1, 0), 1); // `/` not part of a plain 1
    check_munch("2 + 3i", Scalar(2, 0), 1);  // spaces break the munch
    CHECK(!munch_scalar("x").has_value());
    CHECK(!munch_scalar("").has_value());
    CHECK(!munch_scalar("+2").has_value());
    CHECK(!munch_scalar("i").has_value());
    CHECK(!munch_scalar("-").has_value());
    CHECK(!munch_scalar("1e999").has_value()); // overflows to infinity
}

TEST_CASE("parse_scalar rejects trailing garbage") {
    CHECK(parse_scalar("1+2i") == Scalar(1, 2));
    CHECK(!parse_scalar("1+2i ").has_value());
    CHECK(!parse_scalar("1x").has_value());
}

TEST_CASE("formatting special cases") {
    CHECK(format_scalar(Scalar(0, 0)) == "0");
    CHECK(format_scalar(Scalar(1, 0)) == "1");
    CHECK(format_scalar(Scalar(-1, 0)) == "-1");
    CHECK(format_scalar(Scalar(0, 1)) == "1i");
    CHECK(format_scalar(Scalar(0, -1)) == "-1i");
    CHECK(format_scalar(Scalar(1, 1)) == "1+1i");
    CHECK(format_scalar(Scalar(1, -1)) == "1-1i");
    CHECK(format_scalar(Scalar(kInvSqrt2, 0)) == "1/sqrt2");
    CHECK(format_scalar(Scalar(-kInvSqrt2, 0)) == "-1/sqrt2");
    CHECK(format_scalar(Scalar(0, kInvSqrt2)) == "1/sqrt2i");
    CHECK(format_scalar(Scalar(0.5, 0.5)) == "0.5+0.5i");
    CHECK(format_real(0.25) == "0.25");
    CHECK(format_real(-0.0) == "-0");
}

TEST_CASE("format/parse roundtrip is bit-exact on random scalars") {
    testgen::Rng rng(101);
    for (int i = 0; i < 2000; ++i) {
        Scalar a = testgen::random_scalar(rng);
        switch (testgen::pick(rng, 4)) {
        case 0:
            a = Scalar(a.real(), 0);
            break;
        case 1:
            a = Scalar(0, a.imag());
            break;
        case 2:
            a = Scalar(a.real() * 1e-7, a.imag() * 1e9);
            break;
        default:
            break;
        }
        auto back = parse_scalar(format_scalar(a));
        REQUIRE(back.has_value());
        CHECK(back->real() == a.real());
        CHECK(back->imag() == a.imag());
    }
}

TEST_CASE("modulus and approximate equality") {
    CHECK(sq_modulus(Scalar(3, 4)) == 25.0);
    CHECK(sq_modulus(Scalar(0, 0)) == 0.0);
    CHECK(approx_eq(Scalar(1, 1), Scalar(1, 1)));
    CHECK(approx_eq(Scalar(1, 0), Scalar(1 + 1e-12, 0)));
    CHECK(!approx_eq(Scalar(1, 0), Scalar(1.001, 0)));
}

TEST_CASE("inv_sqrt_real") {
    CHECK(inv_sqrt_real(4.0) == Scalar(0.5, 0));
    CHECK(inv_sqrt_real(0.5).real() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK(inv_sqrt_real(1.0) == Scalar(1, 0));
    CHECK_THROWS_AS(inv_sqrt_real(0.0), DataError);
    CHECK_THROWS_AS(inv_sqrt_real(-1.0), DataError);
    CHECK_THROWS_AS(inv_sqrt_real(1e-12, 1e-9), DataError);
}

TEST_CASE("kInvSqrt2 squares to one half") {
    CHECK(kInvSqrt2 * kInvSqrt2 == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(kInvSqrt2 == std::numbers::sqrt2 / 2.0);
}
