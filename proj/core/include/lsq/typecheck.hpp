#ifndef LSQ_TYPECHECK_HPP
#define LSQ_TYPECHECK_HPP

#include "lsq/errors.hpp"
#include "lsq/syntax.hpp"

#include <string>
#include <vector>

namespace lsq {

struct Binding {
    std::string name;
    PropPtr type;
};

// Typing contexts are additive: every premise of a rule sees the whole
// context. Lookup finds the innermost binding, so shadowing introduced by
// reduction is handled even though parsed terms have unique binders.
using Context = std::vector<Binding>;

// Returns the unique proposition assigned to `t` under `ctx`, or throws
// TypeError (TypeMismatch / UnboundVariable / AnnotationRequired).
PropPtr typecheck(const Context &ctx, const TermPtr &t);

// Strict-linearity lint: flags every lambda- or match-bound variable that is
// not used exactly once in every additive branch of its scope. The two
// branches of smatch/pmatch are parallel worlds; both children of a sum (and
// the body of a scale) belong to the same world. Advisory only; terms that
// fail the lint still typecheck.
struct LintFinding {
    std::string variable;
    std::string detail;
};

struct LintReport {
    std::vector<LintFinding> findings;
    bool clean() const { return findings.empty(); }
};

LintReport linear_lint(const TermPtr &t);

} // namespace lsq

#endif
