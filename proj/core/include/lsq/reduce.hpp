#ifndef LSQ_REDUCE_HPP
#define LSQ_REDUCE_HPP

#include "lsq/errors.hpp"
#include "lsq/syntax.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace lsq {

// Cut elimination as rewriting. Two modes:
//
//   Deterministic  — a match on a pair reduces to the sum of both branches;
//                    sums and scalings over eliminators commute freely.
//   Probabilistic  — a match on a canonical n-qubit pair collapses to one
//                    branch, chosen by the Born rule from the squared norms
//                    of the two halves; requires a seed, optionally wraps the
//                    surviving half in a renormalizing Scale node.
//
// Rule catalog (names as they appear in traces):
//   beta          (lam x: A. t) v        -> t[v/x], v in (weak) normal form
//   match-det     smatch [t,r] {..}      -> s[t/x] + u[r/y]
//   match-prob    smatch c {..}          -> collapse, c canonical of Q^(n+1)
//   scale-pair    a * [t,r]              -> [a*t, a*r]
//   scale-star    a * star(b)            -> star(ab)
//   pair-sum      [t,r] + [u,v]          -> [t+u, r+v]
//   star-sum      star(a) + star(b)      -> star(a+b)
//   scale-sum     a * (t+r)              -> a*t + a*r
//   scale-scale   a * (b*t)              -> (ab) * t
//   match-sum     smatch (t+r) {..}      -> smatch t {..} + smatch r {..}   [det]
//   match-scale   smatch (a*t) {..}      -> a * smatch t {..}               [det]
//   app-sum       (t+r) s                -> t s + r s                       [det]
//   app-scale     (a*t) s                -> a * (t s)                       [det]
// Extension ((+)/&):
//   case-inl/-inr/-inlr, proj1-pair, proj2-pair,
//   scale-inl/-inr/-inlr/-with, with-sum,
//   sum-inl-inl, sum-inr-inr, sum-inl-inr, sum-inr-inl and the inlr mixes,
//   case-sum, case-scale, proj1-sum, proj1-scale, proj2-sum, proj2-scale  [det]
//
// Strategy: eliminators reduce their scrutinee (or, for beta, the argument)
// to weak normal form before firing; there is no reduction under lam or
// inside match branches. Outermost tries rules at a node before its
// children (left to right), innermost visits children first (right to
// left) — both reach the same canonical form on closed terms of qubit type.

enum class Strategy {
    Outermost, // leftmost-outermost (default)
    Innermost, // rightmost-innermost (for strategy-independence checks)
};

struct Mode {
    enum class Kind { Deterministic, Probabilistic };
    Kind kind = Kind::Deterministic;
    std::uint64_t seed = 0;
    bool renormalize = true; // Probabilistic only
    Strategy strategy = Strategy::Outermost;

    static Mode det(Strategy s = Strategy::Outermost) {
        Mode m;
        m.strategy = s;
        return m;
    }
    static Mode prob(std::uint64_t seed, bool renormalize = true) {
        Mode m;
        m.kind = Kind::Probabilistic;
        m.seed = seed;
        m.renormalize = renormalize;
        return m;
    }
    bool deterministic() const { return kind == Kind::Deterministic; }
};

inline constexpr std::size_t kDefaultFuel = 1000000;

// Squared norms below this count as zero for collapse and measurement.
inline constexpr double kNormEps = 1e-12;

struct StepRecord {
    std::string rule;
    std::string path;   // "/" for the root, else segments like "/f/a/s"
    TermPtr result;     // whole term after this step
    bool probabilistic = false;
    double probability = 0.0; // probability of the chosen branch
    char chose = 0;           // 'L' or 'R'
};

struct ReductionTrace {
    Mode mode;
    TermPtr initial;
    std::vector<StepRecord> steps;
    TermPtr final_term;
    std::size_t step_count() const { return steps.size(); }
};

class FuelExhausted : public ReduceError {
  public:
    explicit FuelExhausted(ReductionTrace partial);
    ReductionTrace trace; // steps taken before fuel ran out
};

// One rewrite step, or nothing when t is in normal form for the mode.
// Probabilistic choices draw from a generator seeded with mode.seed.
// Throws ReduceError(StuckTerm/ZeroNorm) in Probabilistic mode as described
// in the catalog.
std::optional<std::pair<TermPtr, StepRecord>> step(const TermPtr &t, const Mode &mode);

// Iterates step; throws FuelExhausted (carrying the partial trace) when more
// than `fuel` steps would be needed.
ReductionTrace normalize(const TermPtr &t, const Mode &mode, std::size_t fuel = kDefaultFuel);

// Just the normal form.
TermPtr normal_form(const TermPtr &t, const Mode &mode, std::size_t fuel = kDefaultFuel);

// Canonical n-qubit forms: star(a) at n = 0, a pair of two canonical forms
// of n at n+1. The term image of a vector of length 2^n.
bool is_canonical(const TermPtr &t, std::size_t n);

// Depth n such that is_canonical(t, n), if any.
std::optional<std::size_t> canonical_depth(const TermPtr &t);

// Sum of squared amplitude moduli over the leaves of a canonical form.
double canonical_norm_sq(const TermPtr &t);

// Applies one named rule at the root of `t`, as recorded in a trace step;
// returns nothing when the term does not have the rule's redex shape. For
// match-prob the branch comes from `chose`, not from a generator.
std::optional<TermPtr> apply_rule(const TermPtr &t, const std::string &rule, char chose,
                                  bool renormalize);

// Replays a trace from its initial term, checking each recorded step, and
// returns the final term; throws ReduceError(StuckTerm) on any mismatch.
TermPtr replay(const ReductionTrace &trace);

// One line per step: `step k: <rule> at <path> => <term>`, with
// ` p=<prob> chose=<L|R>` appended for probabilistic steps.
std::string trace_to_text(const ReductionTrace &trace);

} // namespace lsq

#endif
