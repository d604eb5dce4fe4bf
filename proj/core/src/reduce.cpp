#include "lsq/reduce.hpp"

#include "lsq/printer.hpp"

#include <random>

namespace lsq {

namespace {

// Uniform in [0,1) built directly from the top 53 bits of the generator, so
// results do not depend on the standard library's distribution internals.
double uniform01(std::mt19937_64 &rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

struct Hit {
    TermPtr term; // whole rewritten (sub)tree at the level of the caller
    std::string rule;
    std::string path; // "/seg" prefixes accumulate while unwinding
    bool probabilistic = false;
    double probability = 0.0;
    char chose = 0;
};

class Reducer {
  public:
    explicit Reducer(const Mode &m)
        : det_(m.deterministic()), innermost_(m.strategy == Strategy::Innermost),
          renorm_(m.renormalize), rng_(m.seed) {}

    std::optional<Hit> find(const TermPtr &t) {
        if (as<Var>(t) || as<Star>(t) || as<Lam>(t)) {
            return std::nullopt;
        }
        const bool elim =
            as<App>(t) || as<MatchSup>(t) || as<CasePlus>(t) || as<Proj1>(t) || as<Proj2>(t);
        if (innermost_ || elim) {
            // Eliminators bring their scrutinee (for beta: the argument) to
            // weak normal form before firing; innermost order always visits
            // children first.
            if (auto h = descend(t)) {
                return h;
            }
            return rule_at(t);
        }
        if (auto h = rule_at(t)) {
            return h;
        }
        return descend(t);
    }

  private:
    template <class Rebuild>
    std::optional<Hit> child(const char *seg, const TermPtr &sub, Rebuild rebuild) {
        if (auto h = find(sub)) {
            h->path.insert(0, seg);
            h->term = rebuild(std::move(h->term));
            return h;
        }
        return std::nullopt;
    }

    template <class RebuildL, class RebuildR>
    std::optional<Hit> two(const char *sl, const TermPtr &l, RebuildL rl, const char *sr,
                           const TermPtr &r, RebuildR rr) {
        if (innermost_) {
            if (auto h = child(sr, r, rr)) {
                return h;
            }
            return child(sl, l, rl);
        }
        if (auto h = child(sl, l, rl)) {
            return h;
        }
        return child(sr, r, rr);
    }

    std::optional<Hit> descend(const TermPtr &t) {
        if (auto *n = as<App>(t)) {
            return two(
                "/f", n->fn, [&](TermPtr s) { return app(s, n->arg); }, //
                "/a", n->arg, [&](TermPtr s) { return app(n->fn, s); });
        }
        if (auto *n = as<Sum>(t)) {
            return two(
                "/l", n->left, [&](TermPtr s) { return sum(s, n->right); }, //
                "/r", n->right, [&](TermPtr s) { return sum(n->left, s); });
        }
        if (auto *n = as<SupPair>(t)) {
            return two(
                "/l", n->left, [&](TermPtr s) { return sup_pair(s, n->right); }, //
                "/r", n->right, [&](TermPtr s) { return sup_pair(n->left, s); });
        }
        if (auto *n = as<Scale>(t)) {
            return child("/b", n->body, [&](TermPtr s) { return scale(n->factor, s); });
        }
        if (auto *n = as<MatchSup>(t)) {
            return child("/s", n->scrutinee, [&](TermPtr s) {
                return match_sup(s, n->left_var, n->left_body, n->right_var, n->right_body);
            });
        }
        if (auto *n = as<CasePlus>(t)) {
            return child("/s", n->scrutinee, [&](TermPtr s) {
                return case_plus(s, n->left_var, n->left_body, n->right_var, n->right_body);
            });
        }
        if (auto *n = as<Inl>(t)) {
            return child("/b", n->body, [&](TermPtr s) { return inl(s, n->other); });
        }
        if (auto *n = as<Inr>(t)) {
            return child("/b", n->body, [&](TermPtr s) { return inr(s, n->other); });
        }
        if (auto *n = as<Inlr>(t)) {
            return two(
                "/l", n->left, [&](TermPtr s) { return inlr(s, n->right); }, //
                "/r", n->right, [&](TermPtr s) { return inlr(n->left, s); });
        }
        if (auto *n = as<WithPair>(t)) {
            return two(
                "/l", n->left, [&](TermPtr s) { return with_pair(s, n->right); }, //
                "/r", n->right, [&](TermPtr s) { return with_pair(n->left, s); });
        }
        if (auto *n = as<Proj1>(t)) {
            return child("/b", n->body, [&](TermPtr s) { return proj1(s); });
        }
        if (auto *n = as<Proj2>(t)) {
            return child("/b", n->body, [&](TermPtr s) { return proj2(s); });
        }
        return std::nullopt;
    }

    std::optional<Hit> rule_at(const TermPtr &t) {
        const char *rule = nullptr;
        if (auto *a = as<App>(t)) {
            if (as<Lam>(a->fn)) {
                rule = "beta";
            } else if (det_ && as<Sum>(a->fn)) {
                rule = "app-sum";
            } else if (det_ && as<Scale>(a->fn)) {
                rule = "app-scale";
            }
        } else if (auto *s = as<Sum>(t)) {
            const TermPtr &l = s->left;
            const TermPtr &r = s->right;
            if (as<Star>(l) && as<Star>(r)) {
                rule = "star-sum";
            } else if (as<SupPair>(l) && as<SupPair>(r)) {
                rule = "pair-sum";
            } else if (as<WithPair>(l) && as<WithPair>(r)) {
                rule = "with-sum";
            } else if (as<Inl>(l) && as<Inl>(r)) {
                rule = "sum-inl-inl";
            } else if (as<Inr>(l) && as<Inr>(r)) {
                rule = "sum-inr-inr";
            } else if (as<Inl>(l) && as<Inr>(r)) {
                rule = "sum-inl-inr";
            } else if (as<Inr>(l) && as<Inl>(r)) {
                rule = "sum-inr-inl";
            } else if (as<Inl>(l) && as<Inlr>(r)) {
                rule = "sum-inl-inlr";
            } else if (as<Inlr>(l) && as<Inl>(r)) {
                rule = "sum-inlr-inl";
            } else if (as<Inr>(l) && as<Inlr>(r)) {
                rule = "sum-inr-inlr";
            } else if (as<Inlr>(l) && as<Inr>(r)) {
                rule = "sum-inlr-inr";
            } else if (as<Inlr>(l) && as<Inlr>(r)) {
                rule = "sum-inlr-inlr";
            }
        } else if (auto *sc = as<Scale>(t)) {
            const TermPtr &b = sc->body;
            if (as<Star>(b)) {
                rule = "scale-star";
            } else if (as<SupPair>(b)) {
                rule = "scale-pair";
            } else if (as<Sum>(b)) {
                rule = "scale-sum";
            } else if (as<Scale>(b)) {
                rule = "scale-scale";
            } else if (as<Inl>(b)) {
                rule = "scale-inl";
            } else if (as<Inr>(b)) {
                rule = "scale-inr";
            } else if (as<Inlr>(b)) {
                rule = "scale-inlr";
            } else if (as<WithPair>(b)) {
                rule = "scale-with";
            }
        } else if (auto *m = as<MatchSup>(t)) {
            if (!det_) {
                return prob_match(t, *m);
            }
            if (as<SupPair>(m->scrutinee)) {
                rule = "match-det";
            } else if (as<Sum>(m->scrutinee)) {
                rule = "match-sum";
            } else if (as<Scale>(m->scrutinee)) {
                rule = "match-scale";
            }
        } else if (auto *c = as<CasePlus>(t)) {
            if (as<Inl>(c->scrutinee)) {
                rule = "case-inl";
            } else if (as<Inr>(c->scrutinee)) {
                rule = "case-inr";
            } else if (as<Inlr>(c->scrutinee)) {
                rule = "case-inlr";
            } else if (det_ && as<Sum>(c->scrutinee)) {
                rule = "case-sum";
            } else if (det_ && as<Scale>(c->scrutinee)) {
                rule = "case-scale";
            }
        } else if (auto *p1 = as<Proj1>(t)) {
            if (as<WithPair>(p1->body)) {
                rule = "proj1-pair";
            } else if (det_ && as<Sum>(p1->body)) {
                rule = "proj1-sum";
            } else if (det_ && as<Scale>(p1->body)) {
                rule = "proj1-scale";
            }
        } else if (auto *p2 = as<Proj2>(t)) {
            if (as<WithPair>(p2->body)) {
                rule = "proj2-pair";
            } else if (det_ && as<Sum>(p2->body)) {
                rule = "proj2-sum";
            } else if (det_ && as<Scale>(p2->body)) {
                rule = "proj2-scale";
            }
        }
        if (!rule) {
            return std::nullopt;
        }
        Hit h;
        h.rule = rule;
        auto res = apply_rule(t, h.rule, 0, renorm_);
        h.term = *res;
        return h;
    }

    std::optional<Hit> prob_match(const TermPtr &t, const MatchSup &m) {
        auto d = canonical_depth(m.scrutinee);
        if (!d || *d == 0) {
            throw ReduceError(ReduceErrorKind::StuckTerm,
                              "probabilistic match needs a canonical scrutinee of qubit type; "
                              "got: " +
                                  pretty(m.scrutinee));
        }
        auto *p = as<SupPair>(m.scrutinee);
        const double n1 = canonical_norm_sq(p->left);
        const double n2 = canonical_norm_sq(p->right);
        if (n1 + n2 <= kNormEps) {
            throw ReduceError(ReduceErrorKind::ZeroNorm,
                              "probabilistic match on a scrutinee of (squared) norm " +
                                  format_real(n1 + n2));
        }
        const double pl = n1 / (n1 + n2);
        Hit h;
        h.rule = "match-prob";
        h.probabilistic = true;
        h.chose = uniform01(rng_) < pl ? 'L' : 'R';
        h.probability = h.chose == 'L' ? pl : 1.0 - pl;
        h.term = *apply_rule(t, h.rule, h.chose, renorm_);
        return h;
    }

    bool det_;
    bool innermost_;
    bool renorm_;
    std::mt19937_64 rng_;
};

StepRecord to_record(Hit &&h) {
    StepRecord rec;
    rec.rule = std::move(h.rule);
    rec.path = h.path.empty() ? "/" : std::move(h.path);
    rec.result = std::move(h.term);
    rec.probabilistic = h.probabilistic;
    rec.probability = h.probability;
    rec.chose = h.chose;
    return rec;
}

// Navigates rec.path and applies rec.rule at its end.
TermPtr apply_at(const TermPtr &t, const std::vector<std::string> &segs, std::size_t i,
                 const StepRecord &rec, bool renormalize) {
    if (i == segs.size()) {
        auto res = apply_rule(t, rec.rule, rec.chose, renormalize);
        if (!res) {
            throw ReduceError(ReduceErrorKind::StuckTerm,
                              "trace replay: rule " + rec.rule + " does not apply at " + rec.path);
        }
        return *res;
    }
    const std::string &s = segs[i];
    auto next = [&](const TermPtr &sub) { return apply_at(sub, segs, i + 1, rec, renormalize); };
    if (auto *n = as<App>(t)) {
        if (s == "f") {
            return app(next(n->fn), n->arg);
        }
        if (s == "a") {
            return app(n->fn, next(n->arg));
        }
    } else if (auto *n = as<Sum>(t)) {
        if (s == "l") {
            return sum(next(n->left), n->right);
        }
        if (s == "r") {
            return sum(n->left, next(n->right));
        }
    } else if (auto *n = as<SupPair>(t)) {
        if (s == "l") {
            return sup_pair(next(n->left), n->right);
        }
        if (s == "r") {
            return sup_pair(n->left, next(n->right));
        }
    } else if (auto *n = as<Scale>(t)) {
        if (s == "b") {
            return scale(n->factor, next(n->body));
        }
    } else if (auto *n = as<MatchSup>(t)) {
        if (s == "s") {
            return match_sup(next(n->scrutinee), n->left_var, n->left_body, n->right_var,
                             n->right_body);
        }
    } else if (auto *n = as<CasePlus>(t)) {
        if (s == "s") {
            return case_plus(next(n->scrutinee), n->left_var, n->left_body, n->right_var,
                             n->right_body);
        }
    } else if (auto *n = as<Inl>(t)) {
        if (s == "b") {
            return inl(next(n->body), n->other);
        }
    } else if (auto *n = as<Inr>(t)) {
        if (s == "b") {
            return inr(next(n->body), n->other);
        }
    } else if (auto *n = as<Inlr>(t)) {
        if (s == "l") {
            return inlr(next(n->left), n->right);
        }
        if (s == "r") {
            return inlr(n->left, next(n->right));
        }
    } else if (auto *n = as<WithPair>(t)) {
        if (s == "l") {
            return with_pair(next(n->left), n->right);
        }
        if (s == "r") {
            return with_pair(n->left, next(n->right));
        }
    } else if (auto *n = as<Proj1>(t)) {
        if (s == "b") {
            return proj1(next(n->body));
        }
    } else if (auto *n = as<Proj2>(t)) {
        if (s == "b") {
            return proj2(next(n->body));
        }
    }
    throw ReduceError(ReduceErrorKind::StuckTerm,
                      "trace replay: no child '" + s + "' under " + pretty(t));
}

std::vector<std::string> split_path(const std::string &path) {
    std::vector<std::string> segs;
    std::size_t i = 0;
    while (i < path.size()) {
        if (path[i] == '/') {
            ++i;
            continue;
        }
        std::size_t j = path.find('/', i);
        if (j == std::string::npos) {
            j = path.size();
        }
        segs.push_back(path.substr(i, j - i));
        i = j;
    }
    return segs;
}

} // namespace

FuelExhausted::FuelExhausted(ReductionTrace partial)
    : ReduceError(ReduceErrorKind::FuelExhausted,
                  "fuel exhausted after " + std::to_string(partial.steps.size()) + " steps"),
      trace(std::move(partial)) {}

std::optional<std::pair<TermPtr, StepRecord>> step(const TermPtr &t, const Mode &mode) {
    Reducer r(mode);
    auto h = r.find(t);
    if (!h) {
        return std::nullopt;
    }
    StepRecord rec = to_record(std::move(*h));
    TermPtr out = rec.result;
    return std::make_pair(std::move(out), std::move(rec));
}

ReductionTrace normalize(const TermPtr &t, const Mode &mode, std::size_t fuel) {
    Reducer r(mode);
    ReductionTrace tr;
    tr.mode = mode;
    tr.initial = t;
    TermPtr cur = t;
    for (;;) {
        auto h = r.find(cur);
        if (!h) {
            break;
        }
        if (tr.steps.size() >= fuel) {
            tr.final_term = cur;
            throw FuelExhausted(std::move(tr));
        }
        tr.steps.push_back(to_record(std::move(*h)));
        cur = tr.steps.back().result;
    }
    tr.final_term = cur;
    return tr;
}

TermPtr normal_form(const TermPtr &t, const Mode &mode, std::size_t fuel) {
    return normalize(t, mode, fuel).final_term;
}

bool is_canonical(const TermPtr &t, std::size_t n) {
    auto d = canonical_depth(t);
    return d && *d == n;
}

std::optional<std::size_t> canonical_depth(const TermPtr &t) {
    if (as<Star>(t)) {
        return 0;
    }
    if (auto *p = as<SupPair>(t)) {
        auto l = canonical_depth(p->left);
        if (!l) {
            return std::nullopt;
        }
        auto r = canonical_depth(p->right);
        if (!r || *l != *r) {
            return std::nullopt;
        }
        return *l + 1;
    }
    return std::nullopt;
}

double canonical_norm_sq(const TermPtr &t) {
    if (auto *s = as<Star>(t)) {
        return sq_modulus(s->amplitude);
    }
    if (auto *p = as<SupPair>(t)) {
        return canonical_norm_sq(p->left) + canonical_norm_sq(p->right);
    }
    return 0.0;
}

std::optional<TermPtr> apply_rule(const TermPtr &t, const std::string &rule, char chose,
                                  bool renormalize) {
    if (rule == "beta") {
        auto *a = as<App>(t);
        const Lam *l = a ? as<Lam>(a->fn) : nullptr;
        if (!l) {
            return std::nullopt;
        }
        return substitute(l->body, l->var, a->arg);
    }
    if (rule == "match-det") {
        auto *m = as<MatchSup>(t);
        const SupPair *p = m ? as<SupPair>(m->scrutinee) : nullptr;
        if (!p) {
            return std::nullopt;
        }
        return sum(substitute(m->left_body, m->left_var, p->left),
                   substitute(m->right_body, m->right_var, p->right));
    }
    if (rule == "match-prob") {
        auto *m = as<MatchSup>(t);
        const SupPair *p = m ? as<SupPair>(m->scrutinee) : nullptr;
        if (!p || (chose != 'L' && chose != 'R')) {
            return std::nullopt;
        }
        TermPtr comp = chose == 'L' ? p->left : p->right;
        if (renormalize) {
            const double nsq = canonical_norm_sq(comp);
            if (!(nsq > 0.0)) {
                return std::nullopt;
            }
            comp = scale(inv_sqrt_real(nsq, 0.0), comp);
        }
        return chose == 'L' ? substitute(m->left_body, m->left_var, comp)
                            : substitute(m->right_body, m->right_var, comp);
    }
    if (rule == "match-sum") {
        auto *m = as<MatchSup>(t);
        const Sum *s = m ? as<Sum>(m->scrutinee) : nullptr;
        if (!s) {
            return std::nullopt;
        }
        return sum(match_sup(s->left, m->left_var, m->left_body, m->right_var, m->right_body),
                   match_sup(s->right, m->left_var, m->left_body, m->right_var, m->right_body));
    }
    if (rule == "match-scale") {
        auto *m = as<MatchSup>(t);
        const Scale *s = m ? as<Scale>(m->scrutinee) : nullptr;
        if (!s) {
            return std::nullopt;
        }
        return scale(s->factor,
                     match_sup(s->body, m->left_var, m->left_body, m->right_var, m->right_body));
    }
    if (rule == "app-sum") {
        auto *a = as<App>(t);
        const Sum *s = a ? as<Sum>(a->fn) : nullptr;
        if (!s) {
            return std::nullopt;
        }
        return sum(app(s->left, a->arg), app(s->right, a->arg));
    }
    if (rule == "app-scale") {
        auto *a = as<App>(t);
        const Scale *s = a ? as<Scale>(a->fn) : nullptr;
        if (!s) {
            return std::nullopt;
        }
        return scale(s->factor, app(s->body, a->arg));
    }
    if (rule == "star-sum") {
        auto *s = as<Sum>(t);
        const Star *l = s ? as<Star>(s->left) : nullptr;
        const Star *r = s ? as<Star>(s->right) : nullptr;
        if (!l || !r) {
            return std::nullopt;
        }
        return star(l->amplitude + r->amplitude);
    }
    if (rule == "pair-sum") {
        auto *s = as<Sum>(t);
        const SupPair *l = s ? as<SupPair>(s->left) : nullptr;
        const SupPair *r = s ? as<SupPair>(s->right) : nullptr;
        if (!l || !r) {
            return std::nullopt;
        }
        return sup_pair(sum(l->left, r->left), sum(l->right, r->right));
    }
    if (rule == "with-sum") {
        auto *s = as<Sum>(t);
        const WithPair *l = s ? as<WithPair>(s->left) : nullptr;
        const WithPair *r = s ? as<WithPair>(s->right) : nullptr;
        if (!l || !r) {
            return std::nullopt;
        }
        return with_pair(sum(l->left, r->left), sum(l->right, r->right));
    }
    if (rule == "scale-star") {
        auto *s = as<Scale>(t);
        const Star *b = s ? as<Star>(s->body) : nullptr;
        if (!b) {
            return std::nullopt;
        }
        return star(s->factor * b->amplitude);
    }
    if (rule == "scale-pair") {
        auto *s = as<Scale>(t);
        const SupPair *b = s ? as<SupPair>(s->body) : nullptr;
        if (!b) {
            return std::nullopt;
        }
        return sup_pair(scale(s->factor, b->left), scale(s->factor, b->right));
    }
    if (rule == "scale-sum") {
        auto *s = as<Scale>(t);
        const Sum *b = s ? as<Sum>(s->body) : nullptr;
        if (!b) {
            return std::nullopt;
        }
        return sum(scale(s->factor, b->left), scale(s->factor, b->right));
    }
    if (rule == "scale-scale") {
        auto *s = as<Scale>(t);
        const Scale *b = s ? as<Scale>(s->body) : nullptr;
        if (!b) {
            return std::nullopt;
        }
        return scale(s->factor * b->factor, b->body);
    }
    if (rule == "scale-inl") {
        auto *s = as<Scale>(t);
        const Inl *b = s ? as<Inl>(s->body) : nullptr;
        if (!b) {
            return std::nullopt;
        }
        return inl(scale(s->factor, b->body), b->other);
    }
    if (rule == "scale-inr") {
        auto *s = as<Scale>(t);
        const Inr *b = s ? as<Inr>(s->body) : nullptr;
        if (!b) {
            return std::nullopt;
        }
        return inr(scale(s->factor, b->body), b->other);
    }
    if (rule == "scale-inlr") {
        auto *s = as<Scale>(t);
        const Inlr *b = s ? as<Inlr>(s->body) : nullptr;
        if (!b) {
            return std::nullopt;
        }
        return inlr(scale(s->factor, b->left), scale(s->factor, b->right));
    }
    if (rule == "scale-with") {
        auto *s = as<Scale>(t);
        const WithPair *b = s ? as<WithPair>(s->body) : nullptr;
        if (!b) {
            return std::nullopt;
        }
        return with_pair(scale(s->factor, b->left), scale(s->factor, b->right));
    }
    if (rule == "case-inl" || rule == "case-inr" || rule == "case-inlr") {
        auto *c = as<CasePlus>(t);
        if (!c) {
            return std::nullopt;
        }
        if (rule == "case-inl") {
            if (auto *b = as<Inl>(c->scrutinee)) {
                return substitute(c->left_body, c->left_var, b->body);
            }
        } else if (rule == "case-inr") {
            if (auto *b = as<Inr>(c->scrutinee)) {
                return substitute(c->right_body, c->right_var, b->body);
            }
        } else {
            if (auto *b = as<Inlr>(c->scrutinee)) {
                return sum(substitute(c->left_body, c->left_var, b->left),
                           substitute(c->right_body, c->right_var, b->right));
            }
        }
        return std::nullopt;
    }
    if (rule == "case-sum") {
        auto *c = as<CasePlus>(t);
        const Sum *s = c ? as<Sum>(c->scrutinee) : nullptr;
        if (!s) {
            return std::nullopt;
        }
        return sum(case_plus(s->left, c->left_var, c->left_body, c->right_var, c->right_body),
                   case_plus(s->right, c->left_var, c->left_body, c->right_var, c->right_body));
    }
    if (rule == "case-scale") {
        auto *c = as<CasePlus>(t);
        const Scale *s = c ? as<Scale>(c->scrutinee) : nullptr;
        if (!s) {
            return std::nullopt;
        }
        return scale(s->factor,
                     case_plus(s->body, c->left_var, c->left_body, c->right_var, c->right_body));
    }
    if (rule == "proj1-pair" || rule == "proj2-pair") {
        const bool first = rule == "proj1-pair";
        const TermPtr body = first ? (as<Proj1>(t) ? as<Proj1>(t)->body : nullptr)
                                   : (as<Proj2>(t) ? as<Proj2>(t)->body : nullptr);
        const WithPair *p = body ? as<WithPair>(body) : nullptr;
        if (!p) {
            return std::nullopt;
        }
        return first ? p->left : p->right;
    }
    if (rule == "proj1-sum" || rule == "proj2-sum") {
        const bool first = rule == "proj1-sum";
        const TermPtr body = first ? (as<Proj1>(t) ? as<Proj1>(t)->body : nullptr)
                                   : (as<Proj2>(t) ? as<Proj2>(t)->body : nullptr);
        const Sum *s = body ? as<Sum>(body) : nullptr;
        if (!s) {
            return std::nullopt;
        }
        return first ? sum(proj1(s->left), proj1(s->right)) : sum(proj2(s->left), proj2(s->right));
    }
    if (rule == "proj1-scale" || rule == "proj2-scale") {
        const bool first = rule == "proj1-scale";
        const TermPtr body = first ? (as<Proj1>(t) ? as<Proj1>(t)->body : nullptr)
                                   : (as<Proj2>(t) ? as<Proj2>(t)->body : nullptr);
        const Scale *s = body ? as<Scale>(body) : nullptr;
        if (!s) {
            return std::nullopt;
        }
        return first ? scale(s->factor, proj1(s->body)) : scale(s->factor, proj2(s->body));
    }
    if (rule == "sum-inl-inl") {
        auto *s = as<Sum>(t);
        const Inl *l = s ? as<Inl>(s->left) : nullptr;
        const Inl *r = s ? as<Inl>(s->right) : nullptr;
        if (!l || !r) {
            return std::nullopt;
        }
        return inl(sum(l->body, r->body), l->other ? l->other : r->other);
    }
    if (rule == "sum-inr-inr") {
        auto *s = as<Sum>(t);
        const Inr *l = s ? as<Inr>(s->left) : nullptr;
        const Inr *r = s ? as<Inr>(s->right) : nullptr;
        if (!l || !r) {
            return std::nullopt;
        }
        return inr(sum(l->body, r->body), l->other ? l->other : r->other);
    }
    if (rule == "sum-inl-inr") {
        auto *s = as<Sum>(t);
        const Inl *l = s ? as<Inl>(s->left) : nullptr;
        const Inr *r = s ? as<Inr>(s->right) : nullptr;
        if (!l || !r) {
            return std::nullopt;
        }
        return inlr(l->body, r->body);
    }
    if (rule == "sum-inr-inl") {
        auto *s = as<Sum>(t);
        const Inr *l = s ? as<Inr>(s->left) : nullptr;
        const Inl *r = s ? as<Inl>(s->right) : nullptr;
        if (!l || !r) {
            return std::nullopt;
        }
        return inlr(r->body, l->body);
    }
    if (rule == "sum-inl-inlr") {
        auto *s = as<Sum>(t);
        const Inl *l = s ? as<Inl>(s->left) : nullptr;
        const Inlr *r = s ? as<Inlr>(s->right) : nullptr;
        if (!l || !r) {
            return std::nullopt;
        }
        return inlr(sum(l->body, r->left), r->right);
    }
    if (rule == "sum-inlr-inl") {
        auto *s = as<Sum>(t);
        const Inlr *l = s ? as<Inlr>(s->left) : nullptr;
        const Inl *r = s ? as<Inl>(s->right) : nullptr;
        if (!l || !r) {
            return std::nullopt;
        }
        return inlr(sum(l->left, r->body), l->right);
    }
    if (rule == "sum-inr-inlr") {
        auto *s = as<Sum>(t);
        const Inr *l = s ? as<Inr>(s->left) : nullptr;
        const Inlr *r = s ? as<Inlr>(s->right) : nullptr;
        if (!l || !r) {
            return std::nullopt;
        }
        return inlr(r->left, sum(l->body, r->right));
    }
    if (rule == "sum-inlr-inr") {
        auto *s = as<Sum>(t);
        const Inlr *l = s ? as<Inlr>(s->left) : nullptr;
        const Inr *r = s ? as<Inr>(s->right) : nullptr;
        if (!l || !r) {
            return std::nullopt;
        }
        return inlr(l->left, sum(l->right, r->body));
    }
    if (rule == "sum-inlr-inlr") {
        auto *s = as<Sum>(t);
        const Inlr *l = s ? as<Inlr>(s->left) : nullptr;
        const Inlr *r = s ? as<Inlr>(s->right) : nullptr;
        if (!l || !r) {
            return std::nullopt;
        }
        return inlr(sum(l->left, r->left), sum(l->right, r->right));
    }
    return std::nullopt;
}

TermPtr replay(const ReductionTrace &trace) {
    TermPtr cur = trace.initial;
    std::size_t k = 0;
    for (const StepRecord &rec : trace.steps) {
        ++k;
        cur = apply_at(cur, split_path(rec.path), 0, rec, trace.mode.renormalize);
        if (!alpha_equal(cur, rec.result)) {
            throw ReduceError(ReduceErrorKind::StuckTerm,
                              "trace replay: step " + std::to_string(k) +
                                  " diverges from the recorded result");
        }
    }
    if (trace.final_term && !alpha_equal(cur, trace.final_term)) {
        throw ReduceError(ReduceErrorKind::StuckTerm,
                          "trace replay: final term differs from the recorded one");
    }
    return cur;
}

std::string trace_to_text(const ReductionTrace &trace) {
    std::string out;
    std::size_t k = 0;
    for (const StepRecord &rec : trace.steps) {
        out += "step " + std::to_string(++k) + ": " + rec.rule + " at " + rec.path;
        if (rec.probabilistic) {
            out += " p=" + format_real(rec.probability) + " chose=";
            out += rec.chose;
        }
        out += " => " + pretty(rec.result) + "\n";
    }
    return out;
}

} // namespace lsq
