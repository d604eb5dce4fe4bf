#ifndef LSQ_PARSER_HPP
#define LSQ_PARSER_HPP

#include "lsq/syntax.hpp"

#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace lsq {

// Concrete syntax (ASCII):
//
//   prop   ::= prop1 ('-o' prop)?
//   prop1  ::= atom (('odot' | '(+)' | '&') atom)*   -- one connective per level
//   atom   ::= 'T' | 'Q' '^' nat | '(' prop ')'
//
//   term   ::= sum
//   sum    ::= scaled ('+' scaled)*                  -- left associative
//   scaled ::= (scalar '*')? app
//   app    ::= factor factor*                        -- left associative
//   factor ::= var | 'star' '(' scalar ')'
//            | '[' term ',' term ']' | '<' term ',' term '>'
//            | 'inl' ('{' prop '}')? factor | 'inr' ('{' prop '}')? factor
//            | 'inlr' factor factor | 'proj1' factor | 'proj2' factor
//            | 'lam' var ':' prop '.' term
//            | 'smatch' term '{' var '=>' term '|' var '=>' term '}'
//            | 'pmatch' term '{' 'inl' var '=>' term '|' 'inr' var '=>' term '}'
//            | '(' term ')'
//
// '--' starts a line comment. Scalars: a, ai, a+bi, a-bi, 1/sqrt2 (and the
// negated forms), munched maximally with no interior spaces.

struct ParseOptions {
    // When false, the (+) / & connectives and inl, inr, inlr, pmatch, proj1,
    // proj2, <t,r> are syntax errors.
    bool extensions = true;
    // Resolver for free names (gate/state builtins). Returns null for unknown
    // names, which are left as free variables. Resolved terms must be closed.
    std::function<TermPtr(const std::string &)> resolve_name;
};

PropPtr parse_prop(std::string_view text, const ParseOptions &opts = {});
TermPtr parse_term(std::string_view text, const ParseOptions &opts = {});

// A source file is a sequence of `def name = term ;`. Definition names are
// unique; each body may refer to earlier definitions (inlined at parse time)
// and to resolver names. The definition named `main`, if any, is the program.
struct Definition {
    std::string name;
    TermPtr term;
};

struct SourceFile {
    std::vector<Definition> defs;
    TermPtr main; // null when no `main` definition exists
};

SourceFile parse_source(std::string_view text, const ParseOptions &opts = {});

// True when the first significant line (not blank, not a comment) is exactly
// `%lambda-s`, selecting the lambda-s front end for this file.
bool has_lambda_s_header(std::string_view text);

} // namespace lsq

#endif
