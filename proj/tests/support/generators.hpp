// Hand-rolled random generators shared by the property tests: canonical
// terms, well-typed closed terms of qubit type, arbitrary printable ASTs,
// matrices, lambda-s boolean functions, and fuzz strings. All draw from a
// caller-provided engine so every test run is reproducible.

#ifndef LSQ_TEST_GENERATORS_HPP
#define LSQ_TEST_GENERATORS_HPP

#include "lsq/lambda_s.hpp"
#include "lsq/linalg.hpp"
#include "lsq/syntax.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace lsq::testgen {

using Rng = std::mt19937_64;

inline double unit_real(Rng &rng) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    return dist(rng);
}

inline Scalar random_scalar(Rng &rng) {
    const double re = unit_real(rng);
    const double im = unit_real(rng);
    return {re, im};
}

// A scalar bounded away from zero, for scale factors that must stay
// invertible in norm computations.
inline Scalar random_nonzero_scalar(Rng &rng) {
    for (;;) {
        const Scalar a = random_scalar(rng);
        if (std::norm(a) > 0.01) {
            return a;
        }
    }
}

inline std::size_t pick(Rng &rng, std::size_t n) {
    std::uniform_int_distribution<std::size_t> dist(0, n - 1);
    return dist(rng);
}

inline CVector random_vector(std::size_t len, Rng &rng) {
    CVector v(len);
    for (auto &z : v) {
        z = random_scalar(rng);
    }
    return v;
}

inline CMatrix random_matrix(std::size_t rows, std::size_t cols, Rng &rng) {
    CMatrix m = make_matrix(rows, cols);
    for (auto &z : m.entries) {
        z = random_scalar(rng);
    }
    return m;
}

// Canonical term of the n-qubit type with random amplitudes.
inline TermPtr random_canonical(std::size_t n, Rng &rng) {
    if (n == 0) {
        return star(random_scalar(rng));
    }
    TermPtr l = random_canonical(n - 1, rng);
    TermPtr r = random_canonical(n - 1, rng);
    return sup_pair(std::move(l), std::move(r));
}

// ---------------------------------------------------------------------------
// Well-typed closed terms of type Q^n
// ---------------------------------------------------------------------------
//
// Built top-down, threading the one variable the nearest enclosing binder
// provides. Contexts are additive, so a bound variable may be used any
// number of times, including zero.

class QTermGen {
  public:
    explicit QTermGen(Rng &rng) : rng_(rng) {}

    TermPtr closed(std::size_t n, int depth) { return term(n, depth, "", 0); }

  private:
    // A term of type Q^n; when `have` is nonempty it names a free variable
    // of type Q^have_n available for use.
    TermPtr term(std::size_t n, int depth, const std::string &have, std::size_t have_n) {
        if (depth <= 0) {
            if (!have.empty() && have_n == n && pick(rng_, 2) == 0) {
                return var(have);
            }
            return random_canonical(n, rng_);
        }
        switch (pick(rng_, 8)) {
        case 0:
            if (!have.empty() && have_n == n) {
                return var(have);
            }
            return random_canonical(n, rng_);
        case 1:
            return random_canonical(n, rng_);
        case 2:
            return sum(term(n, depth - 1, have, have_n), term(n, depth - 1, have, have_n));
        case 3:
            return scale(random_scalar(rng_), term(n, depth - 1, have, have_n));
        case 4:
            if (n >= 1) {
                return sup_pair(term(n - 1, depth - 1, have, have_n),
                                term(n - 1, depth - 1, have, have_n));
            }
            return star(random_scalar(rng_));
        case 5: {
            // smatch on a pair type one level up; each branch binds a
            // variable of the component type.
            const std::size_t k = pick(rng_, 3);
            const std::string x = fresh();
            const std::string y = fresh();
            TermPtr scrutinee = term(k + 1, depth - 1, have, have_n);
            TermPtr left = term(n, depth - 1, x, k);
            TermPtr right = term(n, depth - 1, y, k);
            return match_sup(std::move(scrutinee), x, std::move(left), y, std::move(right));
        }
        case 6: {
            // beta-redex: a lambda at Q^k -o Q^n applied to a Q^k argument.
            const std::size_t k = pick(rng_, 3);
            const std::string x = fresh();
            TermPtr body = term(n, depth - 1, x, k);
            TermPtr arg = term(k, depth - 1, have, have_n);
            return app(lam(x, qpow(k), std::move(body)), std::move(arg));
        }
        default:
            return scale(random_nonzero_scalar(rng_), term(n, depth - 1, have, have_n));
        }
    }

    std::string fresh() { return "g" + std::to_string(next_++); }

    Rng &rng_;
    int next_ = 0;
};

inline TermPtr random_qterm(std::size_t n, int depth, Rng &rng) {
    QTermGen gen(rng);
    return gen.closed(n, depth);
}

// ---------------------------------------------------------------------------
// Arbitrary printable ASTs (not necessarily well typed), for the
// parse-pretty roundtrip property.
// ---------------------------------------------------------------------------

inline const std::vector<std::string> &name_pool() {
    static const std::vector<std::string> pool = {"a",  "b",  "c",  "f",  "g",  "h",
                                                  "x",  "y",  "z",  "u1", "v2", "w",
                                                  "qq", "aa", "zz", "x'", "y'"};
    return pool;
}

inline std::string random_name(Rng &rng) {
    return name_pool()[pick(rng, name_pool().size())];
}

inline PropPtr random_prop(int depth, Rng &rng) {
    if (depth <= 0 || pick(rng, 4) == 0) {
        switch (pick(rng, 3)) {
        case 0:
            return top();
        case 1:
            return qpow(pick(rng, 4));
        default:
            return top();
        }
    }
    switch (pick(rng, 4)) {
    case 0:
        return odot(random_prop(depth - 1, rng), random_prop(depth - 1, rng));
    case 1:
        return lolli(random_prop(depth - 1, rng), random_prop(depth - 1, rng));
    case 2:
        return plus(random_prop(depth - 1, rng), random_prop(depth - 1, rng));
    default:
        return with(random_prop(depth - 1, rng), random_prop(depth - 1, rng));
    }
}

inline TermPtr random_ast(int depth, Rng &rng) {
    if (depth <= 0) {
        switch (pick(rng, 3)) {
        case 0:
            return var(random_name(rng));
        default:
            return star(random_scalar(rng));
        }
    }
    switch (pick(rng, 13)) {
    case 0:
        return var(random_name(rng));
    case 1:
        return star(random_scalar(rng));
    case 2:
        return sup_pair(random_ast(depth - 1, rng), random_ast(depth - 1, rng));
    case 3:
        return match_sup(random_ast(depth - 1, rng), random_name(rng),
                         random_ast(depth - 1, rng), random_name(rng),
                         random_ast(depth - 1, rng));
    case 4:
        return lam(random_name(rng), random_prop(2, rng), random_ast(depth - 1, rng));
    case 5:
        return app(random_ast(depth - 1, rng), random_ast(depth - 1, rng));
    case 6:
        return sum(random_ast(depth - 1, rng), random_ast(depth - 1, rng));
    case 7:
        return scale(random_scalar(rng), random_ast(depth - 1, rng));
    case 8:
        return pick(rng, 2) == 0 ? inl(random_ast(depth - 1, rng))
                                 : inl(random_ast(depth - 1, rng), random_prop(2, rng));
    case 9:
        return pick(rng, 2) == 0 ? inr(random_ast(depth - 1, rng))
                                 : inr(random_ast(depth - 1, rng), random_prop(2, rng));
    case 10:
        return inlr(random_ast(depth - 1, rng), random_ast(depth - 1, rng));
    case 11:
        return case_plus(random_ast(depth - 1, rng), random_name(rng),
                         random_ast(depth - 1, rng), random_name(rng),
                         random_ast(depth - 1, rng));
    default:
        switch (pick(rng, 3)) {
        case 0:
            return with_pair(random_ast(depth - 1, rng), random_ast(depth - 1, rng));
        case 1:
            return proj1(random_ast(depth - 1, rng));
        default:
            return proj2(random_ast(depth - 1, rng));
        }
    }
}

// ---------------------------------------------------------------------------
// Lambda-s: random closed functions of type Bool -> Bool
// ---------------------------------------------------------------------------

class SBoolGen {
  public:
    explicit SBoolGen(Rng &rng) : rng_(rng) {}

    // lam x: Bool. <body : Bool>
    STermPtr function(int depth) {
        const std::string x = fresh();
        return slam(x, sbool(), body(x, depth));
    }

  private:
    STermPtr body(const std::string &x, int depth) {
        if (depth <= 0) {
            switch (pick(rng_, 3)) {
            case 0:
                return strue();
            case 1:
                return sfalse();
            default:
                return svar(x);
            }
        }
        switch (pick(rng_, 5)) {
        case 0:
            return svar(x);
        case 1:
            return strue();
        case 2:
            return sfalse();
        default: {
            // (lam y: Bool. body_y) body_x stays at type Bool
            const std::string y = fresh();
            STermPtr inner = body(y, depth - 1);
            STermPtr arg = body(x, depth - 1);
            return sapp(slam(y, sbool(), std::move(inner)), std::move(arg));
        }
        }
    }

    std::string fresh() { return "s" + std::to_string(next_++); }

    Rng &rng_;
    int next_ = 0;
};

// ---------------------------------------------------------------------------
// Fuzz strings
// ---------------------------------------------------------------------------

inline std::string fuzz_string(Rng &rng, std::size_t max_len) {
    static const std::string charset = "abcdefgxyzQT^*+-.<>[]{}()|=:;,/ 0123456789"
                                       "starlmichproneqdf\n\t'\"\\%&_";
    const std::size_t len = pick(rng, max_len + 1);
    std::string out;
    out.reserve(len);
    for (std::size_t i = 0; i < len; ++i) {
        if (pick(rng, 16) == 0) {
            out.push_back(static_cast<char>(rng() & 0xff)); // raw byte
        } else {
            out.push_back(charset[pick(rng, charset.size())]);
        }
    }
    return out;
}

} // namespace lsq::testgen

#endif
