#include "lsq/linalg.hpp"

#include "lsq/errors.hpp"

#include <limits>

#include <json.hpp>

namespace lsq {

namespace {

using json = nlohmann::ordered_json;

constexpr std::size_t kMaxEntries = std::size_t{1} << 24;

[[noreturn]] void bad_shape(const std::string &msg) {
    throw DataError(DataErrorKind::BadShape, msg);
}

} // namespace

CMatrix make_matrix(std::size_t rows, std::size_t cols) {
    CMatrix m;
    m.rows = rows;
    m.cols = cols;
    m.entries.assign(rows * cols, Scalar(0.0, 0.0));
    return m;
}

CMatrix identity(std::size_t n) {
    CMatrix m = make_matrix(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m.at(i, i) = Scalar(1.0, 0.0);
    }
    return m;
}

bool is_pow2(std::size_t n) {
    return n != 0 && (n & (n - 1)) == 0;
}

std::size_t log2_exact(std::size_t n) {
    std::size_t m = 0;
    while ((std::size_t{1} << m) < n) {
        ++m;
    }
    return m;
}

CVector vec_add(const CVector &a, const CVector &b) {
    if (a.size() != b.size()) {
        bad_shape("vec_add: lengths " + std::to_string(a.size()) + " and " +
                  std::to_string(b.size()));
    }
    CVector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        out[i] = a[i] + b[i];
    }
    return out;
}

CVector vec_scale(Scalar a, const CVector &v) {
    CVector out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        out[i] = a * v[i];
    }
    return out;
}

double vec_norm_sq(const CVector &v) {
    double total = 0.0;
    for (const Scalar &x : v) {
        total += sq_modulus(x);
    }
    return total;
}

double max_abs_diff(const CVector &a, const CVector &b) {
    if (a.size() != b.size()) {
        return std::numeric_limits<double>::infinity();
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        worst = std::max(worst, std::abs(a[i] - b[i]));
    }
    return worst;
}

CMatrix mat_mul(const CMatrix &a, const CMatrix &b) {
    if (a.cols != b.rows) {
        bad_shape("mat_mul: " + std::to_string(a.rows) + "x" + std::to_string(a.cols) +
                  " times " + std::to_string(b.rows) + "x" + std::to_string(b.cols));
    }
    CMatrix out = make_matrix(a.rows, b.cols);
    for (std::size_t i = 0; i < a.rows; ++i) {
        for (std::size_t k = 0; k < a.cols; ++k) {
            const Scalar aik = a.at(i, k);
            for (std::size_t j = 0; j < b.cols; ++j) {
                out.at(i, j) += aik * b.at(k, j);
            }
        }
    }
    return out;
}

CVector mat_vec(const CMatrix &m, const CVector &v) {
    if (m.cols != v.size()) {
        bad_shape("mat_vec: " + std::to_string(m.rows) + "x" + std::to_string(m.cols) +
                  " times a vector of length " + std::to_string(v.size()));
    }
    CVector out(m.rows, Scalar(0.0, 0.0));
    for (std::size_t i = 0; i < m.rows; ++i) {
        for (std::size_t j = 0; j < m.cols; ++j) {
            out[i] += m.at(i, j) * v[j];
        }
    }
    return out;
}

CMatrix kron(const CMatrix &a, const CMatrix &b) {
    CMatrix out = make_matrix(a.rows * b.rows, a.cols * b.cols);
    for (std::size_t i = 0; i < a.rows; ++i) {
        for (std::size_t j = 0; j < a.cols; ++j) {
            const Scalar aij = a.at(i, j);
            for (std::size_t k = 0; k < b.rows; ++k) {
                for (std::size_t l = 0; l < b.cols; ++l) {
                    out.at(i * b.rows + k, j * b.cols + l) = aij * b.at(k, l);
                }
            }
        }
    }
    return out;
}

CMatrix matrix_from_json(const std::string &text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception &e) {
        bad_shape(std::string("matrix document is not valid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("rows") || !doc.contains("cols") ||
        !doc.contains("entries")) {
        bad_shape("matrix document needs rows, cols, and entries fields");
    }
    if (!doc["rows"].is_number_unsigned() || !doc["cols"].is_number_unsigned()) {
        bad_shape("rows and cols must be non-negative integers");
    }
    const std::size_t rows = doc["rows"].get<std::size_t>();
    const std::size_t cols = doc["cols"].get<std::size_t>();
    if (rows == 0 || cols == 0) {
        bad_shape("matrix must have at least one row and one column");
    }
    if (rows > kMaxEntries || cols > kMaxEntries || rows * cols > kMaxEntries) {
        bad_shape("matrix larger than " + std::to_string(kMaxEntries) + " entries");
    }
    const json &entries = doc["entries"];
    if (!entries.is_array()) {
        bad_shape("entries must be an array of [re, im] pairs");
    }
    if (entries.size() != rows * cols) {
        throw DataError(DataErrorKind::BadLength,
                        "expected " + std::to_string(rows * cols) + " entries, found " +
                            std::to_string(entries.size()));
    }
    CMatrix m = make_matrix(rows, cols);
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const json &e = entries[i];
        if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
            bad_shape("entry " + std::to_string(i) + " is not a [re, im] pair");
        }
        m.entries[i] = Scalar(e[0].get<double>(), e[1].get<double>());
    }
    return m;
}

std::string matrix_to_json(const CMatrix &m) {
    json doc;
    doc["rows"] = m.rows;
    doc["cols"] = m.cols;
    json entries = json::array();
    for (const Scalar &x : m.entries) {
        entries.push_back(json::array({x.real(), x.imag()}));
    }
    doc["entries"] = std::move(entries);
    return doc.dump();
}

CVector vector_from_json(const std::string &text) {
    CMatrix m = matrix_from_json(text);
    if (m.cols != 1) {
        bad_shape("a vector document must have cols = 1, found " + std::to_string(m.cols));
    }
    return m.entries;
}

std::string vector_to_json(const CVector &v) {
    CMatrix m;
    m.rows = v.size();
    m.cols = 1;
    m.entries = v;
    return matrix_to_json(m);
}

} // namespace lsq
