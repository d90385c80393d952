#include "topkat/reduce.hpp"

#include "topkat/error.hpp"

namespace topkat {

Term top_expansion(const Alphabet& alphabet) {
    std::vector<Term> actions;
    for (const auto& a : alphabet.actions())
        if (a != top_action_name)
            actions.push_back(Term::act(a));
    actions.push_back(Term::act(std::string(top_action_name)));
    return Term::star(sum(actions));
}

namespace {

Term substitute_top(const Term& t, const Term& expansion) {
    switch (t.kind()) {
    case Kind::top: return expansion;
    case Kind::zero:
    case Kind::one:
    case Kind::act:
    case Kind::test:
    case Kind::neg: return t;
    case Kind::star: return Term::star(substitute_top(t.lhs(), expansion));
    case Kind::plus: return Term::plus(substitute_top(t.lhs(), expansion), substitute_top(t.rhs(), expansion));
    case Kind::dot: return Term::dot(substitute_top(t.lhs(), expansion), substitute_top(t.rhs(), expansion));
    }
    return t;
}

} // namespace

Term reduce(const Term& t, const Alphabet& alphabet) {
    if (!contains_top(t))
        return t;
    return substitute_top(t, top_expansion(alphabet));
}

Term embed_back(const Term& t) {
    switch (t.kind()) {
    case Kind::act: return t.name() == top_action_name ? Term::top() : t;
    case Kind::zero:
    case Kind::one:
    case Kind::top:
    case Kind::test:
    case Kind::neg: return t;
    case Kind::star: return Term::star(embed_back(t.lhs()));
    case Kind::plus: return Term::plus(embed_back(t.lhs()), embed_back(t.rhs()));
    case Kind::dot: return Term::dot(embed_back(t.lhs()), embed_back(t.rhs()));
    }
    return t;
}

Alphabet prune(const Alphabet& alphabet, const Term& t1, const Term& t2) {
    auto actions = actions_of(t1);
    actions.merge(actions_of(t2));
    auto tests = tests_of(t1);
    tests.merge(tests_of(t2));
    return alphabet.restrict_to(actions, tests);
}

Verdict topkat_equivalent(const Term& t1, const Term& t2, const Alphabet& alphabet, std::size_t atom_cap) {
    check_declared(t1, alphabet);
    check_declared(t2, alphabet);
    const ExtendedAlphabet full(alphabet);
    const ExtendedAlphabet pruned(prune(alphabet, t1, t2));

    Verdict v = equivalent(reduce(t1, pruned.base()), reduce(t2, pruned.base()), pruned.alphabet(), atom_cap);
    if (v.holds())
        return v;

    GuardedString w = translate(*v.witness, pruned.alphabet(), full.alphabet());
    if (full.alphabet().tests().size() > atom_cap)
        return Verdict::refuted(std::move(w), v.side);
    bool in_left = member(w, reduce(t1, full.base()), full.alphabet(), atom_cap);
    bool in_right = member(w, reduce(t2, full.base()), full.alphabet(), atom_cap);
    if (in_left == in_right || in_left != (v.side == Side::left))
        throw InternalError("witness does not survive lifting to the full alphabet");
    return Verdict::refuted(std::move(w), v.side);
}

Verdict topkat_leq(const Term& t1, const Term& t2, const Alphabet& alphabet, std::size_t atom_cap) {
    return topkat_equivalent(Term::plus(t1, t2), t2, alphabet, atom_cap);
}

} // namespace topkat
