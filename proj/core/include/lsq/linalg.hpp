#ifndef LSQ_LINALG_HPP
#define LSQ_LINALG_HPP

#include "lsq/scalar.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace lsq {

// Dense complex vectors and row-major matrices. Shape mismatches raise
// DataError(BadShape); power-of-two constraints are enforced where the
// term encodings require them, not here.

using CVector = std::vector<Scalar>;

struct CMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<Scalar> entries; // row-major, rows * cols

    Scalar &at(std::size_t r, std::size_t c) { return entries[r * cols + c]; }
    const Scalar &at(std::size_t r, std::size_t c) const { return entries[r * cols + c]; }
};

CMatrix make_matrix(std::size_t rows, std::size_t cols);
CMatrix identity(std::size_t n);

bool is_pow2(std::size_t n);
// The m with 2^m = n; pre: is_pow2(n).
std::size_t log2_exact(std::size_t n);

CVector vec_add(const CVector &a, const CVector &b);
CVector vec_scale(Scalar a, const CVector &v);
double vec_norm_sq(const CVector &v);
double max_abs_diff(const CVector &a, const CVector &b); // infinity when lengths differ

CMatrix mat_mul(const CMatrix &a, const CMatrix &b);
CVector mat_vec(const CMatrix &m, const CVector &v);
CMatrix kron(const CMatrix &a, const CMatrix &b);

// Interchange format, one document per matrix or vector:
//   { "rows": R, "cols": C, "entries": [[re, im], ...] }   (row-major)
// A vector is a single-column matrix. Doubles round-trip bit-exactly.
// Malformed documents raise DataError(BadShape/BadLength).
CMatrix matrix_from_json(const std::string &text);
std::string matrix_to_json(const CMatrix &m);
CVector vector_from_json(const std::string &text);
std::string vector_to_json(const CVector &v);

} // namespace lsq

#endif
