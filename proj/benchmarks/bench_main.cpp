#include "lsq/encoding.hpp"
#include "lsq/linalg.hpp"
#include "lsq/parser.hpp"
#include "lsq/printer.hpp"
#include "lsq/reduce.hpp"
#include "lsq/typecheck.hpp"

#include <benchmark/benchmark.h>

#include <random>

namespace {

lsq::CVector random_vector(std::size_t len, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    lsq::CVector v(len);
    for (auto &z : v) {
        z = lsq::Scalar(dist(rng), dist(rng));
    }
    return v;
}

// n-qubit Hadamard-on-every-wire matrix.
lsq::CMatrix hadamard_all(std::size_t n) {
    lsq::CMatrix m = lsq::identity(1);
    for (std::size_t i = 0; i < n; ++i) {
        m = lsq::kron(m, lsq::gate_matrix("H"));
    }
    return m;
}

void BM_encode_decode(benchmark::State &state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const lsq::CVector v = random_vector(std::size_t{1} << n, 7);
    for (auto _ : state) {
        lsq::CVector w = lsq::decode(lsq::encode(v));
        benchmark::DoNotOptimize(w);
    }
}
BENCHMARK(BM_encode_decode)->DenseRange(2, 10, 2);

void BM_normalize_gate_app(benchmark::State &state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const lsq::TermPtr gate_term = lsq::compile_matrix(hadamard_all(n));
    const lsq::TermPtr input = lsq::encode(random_vector(std::size_t{1} << n, 11));
    const lsq::TermPtr applied = lsq::app(gate_term, input);
    for (auto _ : state) {
        lsq::TermPtr out = lsq::normal_form(applied, lsq::Mode::det());
        benchmark::DoNotOptimize(out);
    }
}
BENCHMARK(BM_normalize_gate_app)->DenseRange(1, 5, 1);

void BM_parse_pretty_roundtrip(benchmark::State &state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const std::string text = lsq::pretty(lsq::encode(random_vector(std::size_t{1} << n, 13)));
    for (auto _ : state) {
        std::string again = lsq::pretty(lsq::parse_term(text));
        benchmark::DoNotOptimize(again);
    }
}
BENCHMARK(BM_parse_pretty_roundtrip)->DenseRange(2, 8, 2);

void BM_typecheck_canonical(benchmark::State &state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const lsq::TermPtr t = lsq::encode(random_vector(std::size_t{1} << n, 17));
    for (auto _ : state) {
        lsq::PropPtr ty = lsq::typecheck({}, t);
        benchmark::DoNotOptimize(ty);
    }
}
BENCHMARK(BM_typecheck_canonical)->DenseRange(2, 10, 2);

void BM_measure_shots(benchmark::State &state) {
    const auto shots = static_cast<std::size_t>(state.range(0));
    const lsq::TermPtr bell =
        lsq::app(lsq::gate("CNOT"),
                 lsq::sup_pair(lsq::scale(lsq::Scalar(lsq::kInvSqrt2, 0.0), lsq::state("ket0")),
                               lsq::scale(lsq::Scalar(lsq::kInvSqrt2, 0.0), lsq::state("ket0"))));
    for (auto _ : state) {
        lsq::SampleReport report = lsq::measure(bell, shots, 42);
        benchmark::DoNotOptimize(report);
    }
}
BENCHMARK(BM_measure_shots)->Range(256, 1 << 14);

} // namespace

BENCHMARK_MAIN();
