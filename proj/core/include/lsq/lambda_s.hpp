#ifndef LSQ_LAMBDA_S_HPP
#define LSQ_LAMBDA_S_HPP

#include "lsq/errors.hpp"
#include "lsq/scalar.hpp"

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace lsq {

// A compact lambda interpreter with two binder kinds. A binder annotated
// S(A) receives its argument whole, in one call-by-name beta step, and must
// use it exactly once (checked at type time). A binder at base type first
// forces its argument into a linear combination of basis values (true,
// false, abstractions) and distributes the application over it, firing beta
// only on basis values:
//
//   (lam x: Bool. t) (a*v + b*w)  ->  a*((lam x: Bool. t) v) + b*((lam x: Bool. t) w)
//
// Sums and scalings always live at span type; a base-typed term coerces
// silently into the matching span where one is expected.

enum class STypeKind { Bool, Arrow, Span };

struct SType;
using STypePtr = std::shared_ptr<const SType>;

struct SType {
    STypeKind kind;
    STypePtr a; // Arrow domain / Span inner
    STypePtr b; // Arrow codomain
};

STypePtr sbool();
STypePtr sarrow(STypePtr domain, STypePtr codomain);
STypePtr sspan(STypePtr inner);
bool s_type_equal(const STypePtr &x, const STypePtr &y);
// T when T is already a span, S(T) otherwise.
STypePtr span_of(const STypePtr &t);

struct STermT;
using STermPtr = std::shared_ptr<const STermT>;

struct SVar {
    std::string name;
};
struct STrue {};
struct SFalse {};
struct SLam {
    std::string var;
    STypePtr annotation;
    STermPtr body;
};
struct SApp {
    STermPtr fn, arg;
};
struct SSum {
    STermPtr left, right;
};
struct SScale {
    Scalar factor;
    STermPtr body;
};

using STermNode = std::variant<SVar, STrue, SFalse, SLam, SApp, SSum, SScale>;

struct STermT {
    STermNode node;
};

STermPtr svar(std::string name);
STermPtr strue();
STermPtr sfalse();
STermPtr slam(std::string var, STypePtr annotation, STermPtr body);
STermPtr sapp(STermPtr fn, STermPtr arg);
STermPtr ssum(STermPtr l, STermPtr r);
STermPtr sscale(Scalar factor, STermPtr body);

template <class T>
const T *s_as(const STermPtr &t) {
    return t ? std::get_if<T>(&t->node) : nullptr;
}

bool s_alpha_equal(const STermPtr &x, const STermPtr &y);
STermPtr s_substitute(const STermPtr &t, const std::string &x, const STermPtr &u);

// True, false, and abstractions — not sums, not scalings.
bool is_basis_value(const STermPtr &t);

struct SBinding {
    std::string name;
    STypePtr type;
};
using SContext = std::vector<SBinding>;

// Errors: TypeMismatch, UnboundVariable, and NonLinearUseOfSpanVariable when
// an S-annotated binder is not used exactly once in its body.
STypePtr s_typecheck(const SContext &ctx, const STermPtr &t);

struct SStep {
    STermPtr term;
    std::string rule; // beta-name, beta-base, dist-sum, dist-scale,
                      // scale-scale, scale-sum, merge
};

// One step, or nothing at a normal form. Throws ReduceError(StuckTerm) for
// a base-typed application whose argument is normal but not a combination
// of basis values.
std::optional<SStep> s_step(const STermPtr &t);

struct SRun {
    STermPtr term;               // canonical result
    std::vector<std::string> rules; // names of the steps taken, in order
};

// Iterates s_step (throws ReduceError(FuelExhausted) past `fuel` steps),
// then restructures combination results into canonical form: coefficients
// merged over alpha-equal basis values, explicit scale on every component,
// true before false before abstractions, sums left-associated. A result
// that is a bare basis value stays as it is; a combination with no
// surviving component becomes 0 * true.
SRun s_normalize(const STermPtr &t, std::size_t fuel = 1000000);

// The components (coefficient, basis value) of a canonical combination;
// a bare basis value is one component with coefficient 1. Nothing when the
// term is not a combination of basis values.
std::optional<std::vector<std::pair<Scalar, STermPtr>>> as_combination(const STermPtr &t);

std::string pretty(const STypePtr &t);
std::string pretty(const STermPtr &t);

// Front-end syntax, mirroring the proof-language files:
//   stype  ::= satom ('->' stype)? ; satom ::= 'Bool' | 'S' '(' stype ')' | '(' stype ')'
//   sterm  ::= ssum ; ssum ::= sscaled ('+' sscaled)* ; sscaled ::= (scalar '*')? sapp
//   sapp   ::= sfactor sfactor* ;
//   sfactor ::= var | 'true' | 'false' | 'lam' var ':' stype '.' sterm | '(' sterm ')'
// Files hold `def name = term ;` items and start with a `%lambda-s` header.
STermPtr parse_s_term(std::string_view text);

struct SDefinition {
    std::string name;
    STermPtr term;
};

struct SSourceFile {
    std::vector<SDefinition> defs;
    STermPtr main; // null when no `main` definition exists
};

// Requires the %lambda-s header line.
SSourceFile parse_s_source(std::string_view text);

} // namespace lsq

#endif
