#ifndef LSQ_SYNTAX_HPP
#define LSQ_SYNTAX_HPP

#include "lsq/scalar.hpp"

#include <cstddef>
#include <memory>
#include <set>
#include <string>
#include <variant>

namespace lsq {

// ---------------------------------------------------------------------------
// Propositions
// ---------------------------------------------------------------------------
//
//   A, B ::= T | A odot B | A -o B | A (+) B | A & B
//
// Trees are immutable and freely shared; Top has no children.

enum class PropKind { Top, Odot, Lolli, Plus, With };

struct Prop;
using PropPtr = std::shared_ptr<const Prop>;

struct Prop {
    PropKind kind;
    PropPtr left;
    PropPtr right;
};

PropPtr top();
PropPtr odot(PropPtr a, PropPtr b);
PropPtr lolli(PropPtr a, PropPtr b);
PropPtr plus(PropPtr a, PropPtr b);
PropPtr with(PropPtr a, PropPtr b);

// The n-qubit proposition: qpow(0) = T, qpow(n+1) = qpow(n) odot qpow(n).
// Subtrees are shared, so the result has O(n) distinct nodes.
PropPtr qpow(std::size_t n);

bool prop_equal(const PropPtr &a, const PropPtr &b);

// Number of T leaves (counts shared subtrees once per occurrence).
std::size_t top_leaves(const PropPtr &p);

// ---------------------------------------------------------------------------
// Proof terms
// ---------------------------------------------------------------------------

struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct Var {
    std::string name;
};
struct Star {
    Scalar amplitude;
};
// [t, r] : A odot B
struct SupPair {
    TermPtr left, right;
};
// smatch t { x => r | y => s }
struct MatchSup {
    TermPtr scrutinee;
    std::string left_var;
    TermPtr left_body;
    std::string right_var;
    TermPtr right_body;
};
struct Lam {
    std::string var;
    PropPtr annotation;
    TermPtr body;
};
struct App {
    TermPtr fn, arg;
};
struct Sum {
    TermPtr left, right;
};
struct Scale {
    Scalar factor;
    TermPtr body;
};
// inl t : A (+) B needs the absent summand B to be inferable; `other` carries
// it when the surface syntax supplied an annotation (inl{B} t), else null.
struct Inl {
    TermPtr body;
    PropPtr other;
};
struct Inr {
    TermPtr body;
    PropPtr other;
};
struct Inlr {
    TermPtr left, right;
};
// pmatch t { inl x => r | inr y => s }
struct CasePlus {
    TermPtr scrutinee;
    std::string left_var;
    TermPtr left_body;
    std::string right_var;
    TermPtr right_body;
};
// <t, r> : A & B
struct WithPair {
    TermPtr left, right;
};
struct Proj1 {
    TermPtr body;
};
struct Proj2 {
    TermPtr body;
};

using TermNode = std::variant<Var, Star, SupPair, MatchSup, Lam, App, Sum, Scale, Inl, Inr,
                              Inlr, CasePlus, WithPair, Proj1, Proj2>;

struct Term {
    TermNode node;
};

TermPtr make_term(TermNode node);

TermPtr var(std::string name);
TermPtr star(Scalar amplitude);
TermPtr sup_pair(TermPtr l, TermPtr r);
TermPtr match_sup(TermPtr scrutinee, std::string x, TermPtr left_body, std::string y,
                  TermPtr right_body);
TermPtr lam(std::string x, PropPtr annotation, TermPtr body);
TermPtr app(TermPtr fn, TermPtr arg);
TermPtr sum(TermPtr l, TermPtr r);
TermPtr scale(Scalar factor, TermPtr body);
TermPtr inl(TermPtr body, PropPtr other = nullptr);
TermPtr inr(TermPtr body, PropPtr other = nullptr);
TermPtr inlr(TermPtr l, TermPtr r);
TermPtr case_plus(TermPtr scrutinee, std::string x, TermPtr left_body, std::string y,
                  TermPtr right_body);
TermPtr with_pair(TermPtr l, TermPtr r);
TermPtr proj1(TermPtr body);
TermPtr proj2(TermPtr body);

template <class T>
const T *as(const TermPtr &t) {
    return t ? std::get_if<T>(&t->node) : nullptr;
}

std::set<std::string> free_vars(const TermPtr &t);

// Structural equality modulo bound-variable names. Scalars compare with ==.
bool alpha_equal(const TermPtr &a, const TermPtr &b);

// Capture-avoiding t[u/x]. Returns t itself when x is not free in t.
TermPtr substitute(const TermPtr &t, const std::string &x, const TermPtr &u);

// Renames binders so every binder in the result is distinct (from each other
// and from the free variables). Applied after parsing and inlining.
TermPtr uniquify_binders(const TermPtr &t);

// A name based on `base` that avoids `used`; the chosen name is added to it.
std::string fresh_name(const std::string &base, std::set<std::string> &used);

} // namespace lsq

#endif
