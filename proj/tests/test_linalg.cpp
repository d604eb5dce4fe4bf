#include "lsq/linalg.hpp"

#include "lsq/errors.hpp"

#include "support/generators.hpp"

#include <doctest.h>

#include <cmath>
#include <string>

using namespace lsq;

namespace {

DataErrorKind kind_of_matrix(const std::string &text) {
    try {
        matrix_from_json(text);
    } catch (const DataError &e) {
        return e.kind;
    }
    FAIL("expected a DataError");
    return DataErrorKind::BadShape;
}

} // namespace

TEST_CASE("construction helpers") {
    const CMatrix z = make_matrix(2, 3);
    CHECK(z.rows == 2);
    CHECK(z.cols == 3);
    CHECK(z.entries.size() == 6);
    for (const Scalar &x : z.entries) {
        CHECK(x == Scalar(0, 0));
    }
    const CMatrix id = identity(3);
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
            CHECK(id.at(i, j) == (i == j ? Scalar(1, 0) : Scalar(0, 0)));
        }
    }
}

TEST_CASE("power-of-two queries") {
    CHECK(is_pow2(1));
    CHECK(is_pow2(2));
    CHECK(is_pow2(1024));
    CHECK(!is_pow2(0));
    CHECK(!is_pow2(3));
    CHECK(!is_pow2(12));
    CHECK(log2_exact(1) == 0);
    CHECK(log2_exact(2) == 1);
    CHECK(log2_exact(8) == 3);
    CHECK(log2_exact(std::size_t{1} << 20) == 20);
}

TEST_CASE("vector arithmetic") {
    const CVector a = {Scalar(1, 2), Scalar(3, -1)};
    const CVector b = {Scalar(0, 1), Scalar(-3, 1)};
    const CVector s = vec_add(a, b);
    CHECK(s[0] == Scalar(1, 3));
    CHECK(s[1] == Scalar(0, 0));
    const CVector t = vec_scale(Scalar(0, 1), a); // i * (1+2i) = -2+i
    CHECK(t[0] == Scalar(-2, 1));
    CHECK(t[1] == Scalar(1, 3));
    CHECK(vec_norm_sq(a) == doctest::Approx(1 + 4 + 9 + 1));
    CHECK_THROWS_AS(vec_add(a, CVector{Scalar(1, 0)}), DataError);
}

TEST_CASE("max_abs_diff") {
    const CVector a = {Scalar(1, 0), Scalar(0, 2)};
    const CVector b = {Scalar(1, 0), Scalar(0, 2.5)};
    CHECK(max_abs_diff(a, a) == 0.0);
    CHECK(max_abs_diff(a, b) == doctest::Approx(0.5));
    CHECK(std::isinf(max_abs_diff(a, CVector{Scalar(1, 0)})));
}

TEST_CASE("matrix product against hand-computed values") {
    CMatrix a = make_matrix(2, 3);
    a.entries = {Scalar(1, 0), Scalar(2, 0), Scalar(3, 0),
                 Scalar(4, 0), Scalar(5, 0), Scalar(6, 0)};
    CMatrix b = make_matrix(3, 2);
    b.entries = {Scalar(7, 0),  Scalar(8, 0),  Scalar(9, 0),
                 Scalar(10, 0), Scalar(11, 0), Scalar(12, 0)};
    const CMatrix c = mat_mul(a, b);
    CHECK(c.rows == 2);
    CHECK(c.cols == 2);
    CHECK(c.at(0, 0) == Scalar(58, 0));
    CHECK(c.at(0, 1) == Scalar(64, 0));
    CHECK(c.at(1, 0) == Scalar(139, 0));
    CHECK(c.at(1, 1) == Scalar(154, 0));

    // (1+i)(2-i) = 3+i
    CMatrix p = make_matrix(1, 1);
    p.entries = {Scalar(1, 1)};
    CMatrix q = make_matrix(1, 1);
    q.entries = {Scalar(2, -1)};
    CHECK(mat_mul(p, q).at(0, 0) == Scalar(3, 1));

    CHECK_THROWS_AS(mat_mul(a, a), DataError); // 2x3 times 2x3 has no middle dimension
}

TEST_CASE("matrix-vector product") {
    CMatrix m = make_matrix(2, 2);
    m.entries = {Scalar(1, 0), Scalar(2, 0), Scalar(3, 0), Scalar(4, 0)};
    const CVector v = {Scalar(5, 0), Scalar(6, 0)};
    const CVector r = mat_vec(m, v);
    CHECK(r[0] == Scalar(17, 0));
    CHECK(r[1] == Scalar(39, 0));
    CHECK_THROWS_AS(mat_vec(m, CVector{Scalar(1, 0)}), DataError);
}

TEST_CASE("mat_vec is linear") {
    testgen::Rng rng(11);
    for (int i = 0; i < 50; ++i) {
        const CMatrix m = testgen::random_matrix(4, 4, rng);
        const CVector x = testgen::random_vector(4, rng);
        const CVector y = testgen::random_vector(4, rng);
        const Scalar alpha = testgen::random_scalar(rng);
        const Scalar beta = testgen::random_scalar(rng);
        const CVector lhs = mat_vec(m, vec_add(vec_scale(alpha, x), vec_scale(beta, y)));
        const CVector rhs =
            vec_add(vec_scale(alpha, mat_vec(m, x)), vec_scale(beta, mat_vec(m, y)));
        CHECK(max_abs_diff(lhs, rhs) < 1e-12);
    }
}

TEST_CASE("kronecker product against hand-computed values") {
    CMatrix a = make_matrix(2, 2);
    a.entries = {Scalar(1, 0), Scalar(2, 0), Scalar(3, 0), Scalar(4, 0)};
    CMatrix b = make_matrix(2, 2);
    b.entries = {Scalar(0, 0), Scalar(5, 0), Scalar(6, 0), Scalar(7, 0)};
    const CMatrix k = kron(a, b);
    CHECK(k.rows == 4);
    CHECK(k.cols == 4);
    const std::vector<double> want = {0, 5,  0,  10, 6,  7,  12, 14,
                                      0, 15, 0,  20, 18, 21, 24, 28};
    for (std::size_t i = 0; i < want.size(); ++i) {
        CHECK(k.entries[i] == Scalar(want[i], 0));
    }
}

TEST_CASE("kronecker product properties") {
    testgen::Rng rng(23);
    for (int i = 0; i < 20; ++i) {
        const CMatrix a = testgen::random_matrix(2, 2, rng);
        const CMatrix b = testgen::random_matrix(2, 2, rng);
        const CMatrix c = testgen::random_matrix(2, 2, rng);
        const CMatrix d = testgen::random_matrix(2, 2, rng);
        // Associativity.
        CHECK(max_abs_diff(kron(kron(a, b), c).entries, kron(a, kron(b, c)).entries) <
              1e-12);
        // Mixed product: (A (x) B)(C (x) D) = AC (x) BD.
        CHECK(max_abs_diff(mat_mul(kron(a, b), kron(c, d)).entries,
                           kron(mat_mul(a, c), mat_mul(b, d)).entries) < 1e-11);
    }
    CHECK(max_abs_diff(kron(identity(2), identity(4)).entries, identity(8).entries) == 0.0);
}

TEST_CASE("json round-trips are bit-exact") {
    testgen::Rng rng(37);
    for (int i = 0; i < 40; ++i) {
        const std::size_t rows = 1 + testgen::pick(rng, 5);
        const std::size_t cols = 1 + testgen::pick(rng, 5);
        const CMatrix m = testgen::random_matrix(rows, cols, rng);
        const CMatrix back = matrix_from_json(matrix_to_json(m));
        CHECK(back.rows == m.rows);
        CHECK(back.cols == m.cols);
        REQUIRE(back.entries.size() == m.entries.size());
        for (std::size_t j = 0; j < m.entries.size(); ++j) {
            CHECK(back.entries[j] == m.entries[j]); // exact, not approximate
        }
        const CVector v = testgen::random_vector(1 + testgen::pick(rng, 8), rng);
        const CVector vback = vector_from_json(vector_to_json(v));
        REQUIRE(vback.size() == v.size());
        for (std::size_t j = 0; j < v.size(); ++j) {
            CHECK(vback[j] == v[j]);
        }
    }
}

TEST_CASE("json documents parse to the documented shape") {
    const CMatrix m = matrix_from_json(
        R"({"rows": 2, "cols": 1, "entries": [[1.5, 0], [0, -2]]})");
    CHECK(m.rows == 2);
    CHECK(m.cols == 1);
    CHECK(m.at(0, 0) == Scalar(1.5, 0));
    CHECK(m.at(1, 0) == Scalar(0, -2));
    const CVector v = vector_from_json(
        R"({"rows": 2, "cols": 1, "entries": [[1.5, 0], [0, -2]]})");
    CHECK(v.size() == 2);
}

TEST_CASE("malformed json documents are rejected with the right kind") {
    CHECK(kind_of_matrix("not json at all") == DataErrorKind::BadShape);
    CHECK(kind_of_matrix("[1,2,3]") == DataErrorKind::BadShape);
    CHECK(kind_of_matrix(R"({"rows": 2, "cols": 2})") == DataErrorKind::BadShape);
    CHECK(kind_of_matrix(R"({"rows": -1, "cols": 2, "entries": []})") ==
          DataErrorKind::BadShape);
    CHECK(kind_of_matrix(R"({"rows": 1.5, "cols": 2, "entries": []})") ==
          DataErrorKind::BadShape);
    CHECK(kind_of_matrix(R"({"rows": 0, "cols": 2, "entries": []})") ==
          DataErrorKind::BadShape);
    CHECK(kind_of_matrix(R"({"rows": 2, "cols": 2, "entries": 7})") ==
          DataErrorKind::BadShape);
    // Wrong entry count is a length error, not a shape error.
    CHECK(kind_of_matrix(R"({"rows": 2, "cols": 2, "entries": [[1,0]]})") ==
          DataErrorKind::BadLength);
    CHECK(kind_of_matrix(R"({"rows": 1, "cols": 1, "entries": [[1]]})") ==
          DataErrorKind::BadShape);
    CHECK(kind_of_matrix(R"({"rows": 1, "cols": 1, "entries": [["a", 0]]})") ==
          DataErrorKind::BadShape);
    // Oversized dimensions are refused before any allocation happens.
    CHECK(kind_of_matrix(R"({"rows": 33554432, "cols": 1, "entries": []})") ==
          DataErrorKind::BadShape);
    CHECK(kind_of_matrix(R"({"rows": 16777216, "cols": 2, "entries": []})") ==
          DataErrorKind::BadShape);
    // A vector document must be a single column.
    CHECK_THROWS_AS(
        vector_from_json(R"({"rows": 1, "cols": 2, "entries": [[1,0],[2,0]]})"),
        DataError);
}
