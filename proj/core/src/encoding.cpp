#include "lsq/encoding.hpp"

#include "lsq/printer.hpp"
#include "lsq/reduce.hpp"

#include <random>
#include <thread>

namespace lsq {

namespace {

constexpr std::size_t kMaxStateBits = 20;

void decode_into(const TermPtr &t, CVector &out) {
    if (auto *s = as<Star>(t)) {
        out.push_back(s->amplitude);
        return;
    }
    auto *p = as<SupPair>(t);
    decode_into(p->left, out);
    decode_into(p->right, out);
}

TermPtr encode_range(const CVector &v, std::size_t lo, std::size_t hi) {
    if (hi - lo == 1) {
        return star(v[lo]);
    }
    const std::size_t mid = lo + (hi - lo) / 2;
    return sup_pair(encode_range(v, lo, mid), encode_range(v, mid, hi));
}

// The single-column gadget: stacks scaled copies of x into the column shape.
TermPtr column_body(const CMatrix &m, std::size_t col, std::size_t lo, std::size_t hi,
                    const TermPtr &x) {
    if (hi - lo == 1) {
        return scale(m.at(lo, col), x);
    }
    const std::size_t mid = lo + (hi - lo) / 2;
    return sup_pair(column_body(m, col, lo, mid, x), column_body(m, col, mid, hi, x));
}

// Columns [lo, hi) of m, a block with a power-of-two width.
TermPtr compile_block(const CMatrix &m, std::size_t lo, std::size_t hi) {
    if (hi - lo == 1) {
        TermPtr x = var("x");
        return lam("x", top(), column_body(m, lo, 0, m.rows, x));
    }
    const std::size_t mid = lo + (hi - lo) / 2;
    const std::size_t arg_qubits = log2_exact(hi - lo);
    return lam("x", qpow(arg_qubits),
               match_sup(var("x"), "x", app(compile_block(m, lo, mid), var("x")), "x",
                         app(compile_block(m, mid, hi), var("x"))));
}

double uniform01(std::mt19937_64 &rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

} // namespace

CVector decode(const TermPtr &t) {
    if (!canonical_depth(t)) {
        throw ReduceError(ReduceErrorKind::NotCanonical,
                          "decode needs a canonical term, got: " + pretty(t));
    }
    CVector out;
    decode_into(t, out);
    return out;
}

TermPtr encode(const CVector &v) {
    if (!is_pow2(v.size())) {
        throw DataError(DataErrorKind::BadLength, "encode needs a vector of length 2^n, got " +
                                                      std::to_string(v.size()));
    }
    return encode_range(v, 0, v.size());
}

TermPtr compile_matrix(const CMatrix &m) {
    if (!is_pow2(m.rows) || !is_pow2(m.cols)) {
        throw DataError(DataErrorKind::BadShape,
                        "matrix must be 2^n by 2^m, got " + std::to_string(m.rows) + "x" +
                            std::to_string(m.cols));
    }
    if (m.entries.size() != m.rows * m.cols) {
        throw DataError(DataErrorKind::BadLength, "matrix entry count does not match its shape");
    }
    return uniquify_binders(compile_block(m, 0, m.cols));
}

const CMatrix &gate_matrix(const std::string &name) {
    static const CMatrix x = [] {
        CMatrix m = make_matrix(2, 2);
        m.at(0, 1) = m.at(1, 0) = Scalar(1.0, 0.0);
        return m;
    }();
    static const CMatrix z = [] {
        CMatrix m = make_matrix(2, 2);
        m.at(0, 0) = Scalar(1.0, 0.0);
        m.at(1, 1) = Scalar(-1.0, 0.0);
        return m;
    }();
    static const CMatrix h = [] {
        CMatrix m = make_matrix(2, 2);
        m.at(0, 0) = m.at(0, 1) = m.at(1, 0) = Scalar(kInvSqrt2, 0.0);
        m.at(1, 1) = Scalar(-kInvSqrt2, 0.0);
        return m;
    }();
    static const CMatrix cnot = [] {
        CMatrix m = make_matrix(4, 4);
        m.at(0, 0) = m.at(1, 1) = m.at(2, 3) = m.at(3, 2) = Scalar(1.0, 0.0);
        return m;
    }();
    if (name == "X") {
        return x;
    }
    if (name == "Z") {
        return z;
    }
    if (name == "H") {
        return h;
    }
    if (name == "CNOT") {
        return cnot;
    }
    throw DataError(DataErrorKind::UnknownName, "unknown gate: " + name);
}

TermPtr gate(const std::string &name) {
    return compile_matrix(gate_matrix(name));
}

TermPtr state(const std::string &name) {
    if (name == "ketp" || name == "ket+") {
        return encode({Scalar(kInvSqrt2, 0.0), Scalar(kInvSqrt2, 0.0)});
    }
    if (name == "ketm" || name == "ket-") {
        return encode({Scalar(kInvSqrt2, 0.0), Scalar(-kInvSqrt2, 0.0)});
    }
    if (name.size() > 3 && name.compare(0, 3, "ket") == 0) {
        const std::string bits = name.substr(3);
        if (bits.find_first_not_of("01") == std::string::npos) {
            if (bits.size() > kMaxStateBits) {
                throw DataError(DataErrorKind::BadLength,
                                "basis state wider than " + std::to_string(kMaxStateBits) +
                                    " qubits");
            }
            std::size_t index = 0;
            for (char b : bits) {
                index = index * 2 + (b == '1' ? 1 : 0);
            }
            CVector v(std::size_t{1} << bits.size(), Scalar(0.0, 0.0));
            v[index] = Scalar(1.0, 0.0);
            return encode(v);
        }
    }
    throw DataError(DataErrorKind::UnknownName, "unknown state: " + name);
}

TermPtr builtin(const std::string &name) {
    if (name == "X" || name == "Z" || name == "H" || name == "CNOT") {
        return gate(name);
    }
    if (name == "ketp" || name == "ketm") {
        return state(name);
    }
    if (name.size() > 3 && name.compare(0, 3, "ket") == 0 &&
        name.find_first_not_of("01", 3) == std::string::npos) {
        return state(name);
    }
    return nullptr;
}

SampleReport measure(const TermPtr &t, std::size_t shots, std::uint64_t seed, unsigned threads) {
    const TermPtr nf = normal_form(t, Mode::det());
    auto depth = canonical_depth(nf);
    if (!depth) {
        throw ReduceError(ReduceErrorKind::NotCanonical,
                          "measurement needs a term that normalizes to a canonical state; got: " +
                              pretty(nf));
    }
    const CVector v = decode(nf);
    const std::size_t n = *depth;

    // Prefix sums of squared moduli; the norm of [lo, hi) is a difference.
    std::vector<double> prefix(v.size() + 1, 0.0);
    for (std::size_t i = 0; i < v.size(); ++i) {
        prefix[i + 1] = prefix[i] + sq_modulus(v[i]);
    }
    if (prefix.back() <= kNormEps) {
        throw ReduceError(ReduceErrorKind::ZeroNorm,
                          "measurement on a state of squared norm " + format_real(prefix.back()));
    }

    auto run_shot = [&](std::size_t shot) {
        std::mt19937_64 rng(seed ^ static_cast<std::uint64_t>(shot));
        std::size_t lo = 0;
        std::size_t hi = v.size();
        for (std::size_t level = 0; level < n; ++level) {
            const std::size_t mid = lo + (hi - lo) / 2;
            const double left = prefix[mid] - prefix[lo];
            const double total = prefix[hi] - prefix[lo];
            if (uniform01(rng) < left / total) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        return lo;
    };

    SampleReport report;
    report.shots = shots;
    report.seed = seed;
    report.qubits = n;

    if (threads <= 1 || shots < 2) {
        for (std::size_t s = 0; s < shots; ++s) {
            ++report.counts[run_shot(s)];
        }
        return report;
    }

    const std::size_t workers = std::min<std::size_t>(threads, shots);
    std::vector<std::map<std::size_t, std::size_t>> partial(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t s = w; s < shots; s += workers) {
                ++partial[w][run_shot(s)];
            }
        });
    }
    for (std::thread &th : pool) {
        th.join();
    }
    for (const auto &p : partial) {
        for (const auto &[outcome, hits] : p) {
            report.counts[outcome] += hits;
        }
    }
    return report;
}

} // namespace lsq
