#ifndef LSQ_ENCODING_HPP
#define LSQ_ENCODING_HPP

#include "lsq/linalg.hpp"
#include "lsq/syntax.hpp"

#include <cstdint>
#include <map>
#include <string>

namespace lsq {

// The bridge between canonical proof terms of the n-qubit proposition and
// vectors of length 2^n: star(a) is the one-entry vector (a), a pair stacks
// the vectors of its components (left half first, so outcome indices read
// big-endian).

// Canonical term -> vector. Throws ReduceError(NotCanonical) when t is not
// in canonical form (normalize first).
CVector decode(const TermPtr &t);

// Vector of length 2^n -> canonical term. Throws DataError(BadLength).
TermPtr encode(const CVector &v);

// A matrix with 2^m columns and 2^n rows becomes a closed term of type
// Q^m -o Q^n: a single column becomes a lambda that scales and stacks its
// argument into the column's shape; wider matrices split into column halves
// behind a match on the argument. Applying the result to an encoded vector
// and normalizing deterministically computes the matrix-vector product.
// Throws DataError(BadShape) when a dimension is not a power of two.
TermPtr compile_matrix(const CMatrix &m);

// Hardcoded gate matrices, compiled: X, Z, H (columns |+> and |->), CNOT
// (control on the more significant qubit). Throws DataError(UnknownName).
TermPtr gate(const std::string &name);
const CMatrix &gate_matrix(const std::string &name);

// Library states: ket0, ket1, ketp ("ket+"), ketm ("ket-"), and ket<bits>
// for a basis state of as many qubits as bits. Throws DataError(UnknownName).
TermPtr state(const std::string &name);

// Resolver for the parser: gate and state names as above, null for anything
// else (so unknown identifiers stay ordinary variables).
TermPtr builtin(const std::string &name);

struct SampleReport {
    std::size_t shots = 0;
    std::uint64_t seed = 0;
    std::size_t qubits = 0;
    std::map<std::size_t, std::size_t> counts; // outcome index -> hits (absent = 0)

    double frequency(std::size_t outcome) const {
        auto it = counts.find(outcome);
        return shots == 0 || it == counts.end()
                   ? 0.0
                   : static_cast<double>(it->second) / static_cast<double>(shots);
    }
};

// Normalizes t deterministically, checks the result is canonical with
// positive squared norm, then draws `shots` full collapses. Outcome i is hit
// with probability |v_i|^2 / ||v||^2. Each shot draws from its own generator
// seeded with seed XOR shot-index, so reports are identical for any thread
// count. Throws ReduceError(NotCanonical/ZeroNorm).
SampleReport measure(const TermPtr &t, std::size_t shots, std::uint64_t seed,
                     unsigned threads = 1);

} // namespace lsq

#endif
