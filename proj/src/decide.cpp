#include "topkat/decide.hpp"

#include "topkat/error.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <unordered_map>

namespace topkat {

StateSet::StateSet(std::vector<Term> members) : terms(std::move(members)) {
    std::erase_if(terms, [](const Term& t) { return t.kind() == Kind::zero; });
    std::sort(terms.begin(), terms.end());
    terms.erase(std::unique(terms.begin(), terms.end()), terms.end());
}

namespace {

using Id = std::uint32_t;
using SetId = std::uint32_t;

/**
 * Per-invocation derivative automaton. Terms are interned so that
 * structurally equal terms share an id; state sets are sorted id vectors,
 * interned in turn.
 */
class Engine {
public:
    Engine(const Alphabet& alphabet, std::size_t atom_cap)
        : alphabet_(alphabet), atoms_(all_atoms(alphabet, atom_cap)) {}

    const std::vector<Atom>& atoms() const { return atoms_; }
    std::size_t action_count() const { return alphabet_.actions().size(); }

    Id intern(const Term& t) {
        if (auto it = ids_.find(t); it != ids_.end())
            return it->second;
        if (t.kind() == Kind::top)
            throw SortError("the decision procedure accepts T-free terms only; reduce the term first");
        if (t.kind() == Kind::act && !alphabet_.is_action(t.name()))
            throw InputError("undeclared action '" + t.name() + "'");
        if (t.kind() == Kind::test && !alphabet_.is_test(t.name()))
            throw InputError("undeclared test '" + t.name() + "'");
        Id id = static_cast<Id>(terms_.size());
        terms_.push_back(t);
        ids_.emplace(t, id);
        eps_.emplace_back();
        return id;
    }

    const Term& term(Id id) const { return terms_[id]; }

    bool eps(Id id, std::size_t atom) {
        auto& row = eps_[id];
        if (row.empty())
            row.assign(atoms_.size(), -1);
        if (row[atom] < 0)
            row[atom] = compute_eps(terms_[id], atoms_[atom]) ? 1 : 0;
        return row[atom] == 1;
    }

    const std::vector<Id>& deriv(Id id, std::size_t atom, std::size_t action) {
        std::uint64_t key = (static_cast<std::uint64_t>(id) * atoms_.size() + atom) * action_count() + action;
        if (auto it = derivs_.find(key); it != derivs_.end())
            return it->second;
        std::vector<Term> out;
        compute_deriv(terms_[id], atom, action, out);
        std::vector<Id> ids;
        for (const auto& d : out)
            ids.push_back(intern(d));
        std::sort(ids.begin(), ids.end());
        ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
        return derivs_.emplace(key, std::move(ids)).first->second;
    }

    SetId intern_set(std::vector<Id> members) {
        std::sort(members.begin(), members.end());
        members.erase(std::unique(members.begin(), members.end()), members.end());
        auto [it, inserted] = set_ids_.emplace(members, static_cast<SetId>(sets_.size()));
        if (inserted)
            sets_.push_back(std::move(members));
        return it->second;
    }

    bool set_eps(SetId s, std::size_t atom) {
        for (Id id : sets_[s])
            if (eps(id, atom))
                return true;
        return false;
    }

    SetId step(SetId s, std::size_t atom, std::size_t action) {
        std::uint64_t key = (static_cast<std::uint64_t>(s) * atoms_.size() + atom) * action_count() + action;
        if (auto it = steps_.find(key); it != steps_.end())
            return it->second;
        std::vector<Id> next;
        for (Id id : sets_[s]) {
            const auto& d = deriv(id, atom, action);
            next.insert(next.end(), d.begin(), d.end());
        }
        SetId r = intern_set(std::move(next));
        steps_.emplace(key, r);
        return r;
    }

    std::size_t atom_index(Atom a) const {
        auto it = std::lower_bound(atoms_.begin(), atoms_.end(), a);
        if (it == atoms_.end() || *it != a)
            throw InputError("atom does not belong to the alphabet");
        return static_cast<std::size_t>(it - atoms_.begin());
    }

private:
    static Term mk_dot(const Term& a, const Term& b) {
        if (a.kind() == Kind::zero || b.kind() == Kind::zero)
            return Term::zero();
        if (a.kind() == Kind::one)
            return b;
        if (b.kind() == Kind::one)
            return a;
        if (a.kind() == Kind::dot)
            return Term::dot(a.lhs(), mk_dot(a.rhs(), b));
        return Term::dot(a, b);
    }

    bool compute_eps(const Term& t, Atom a) const {
        switch (t.kind()) {
        case Kind::zero: return false;
        case Kind::one: return true;
        case Kind::test: return a.value(*alphabet_.test_index(t.name()));
        case Kind::neg: return !compute_eps(t.lhs(), a);
        case Kind::act: return false;
        case Kind::plus: return compute_eps(t.lhs(), a) || compute_eps(t.rhs(), a);
        case Kind::dot: return compute_eps(t.lhs(), a) && compute_eps(t.rhs(), a);
        case Kind::star: return true;
        case Kind::top: break;
        }
        throw SortError("T in decision procedure input");
    }

    void compute_deriv(const Term& t, std::size_t atom, std::size_t action, std::vector<Term>& out) {
        switch (t.kind()) {
        case Kind::zero:
        case Kind::one:
        case Kind::test:
        case Kind::neg:
            return;
        case Kind::act:
            if (*alphabet_.action_index(t.name()) == action)
                out.push_back(Term::one());
            return;
        case Kind::plus:
            compute_deriv(t.lhs(), atom, action, out);
            compute_deriv(t.rhs(), atom, action, out);
            return;
        case Kind::dot: {
            std::vector<Term> left;
            compute_deriv(t.lhs(), atom, action, left);
            for (const auto& d : left) {
                Term r = mk_dot(d, t.rhs());
                if (r.kind() != Kind::zero)
                    out.push_back(r);
            }
            if (compute_eps(t.lhs(), atoms_[atom]))
                compute_deriv(t.rhs(), atom, action, out);
            return;
        }
        case Kind::star: {
            std::vector<Term> inner;
            compute_deriv(t.lhs(), atom, action, inner);
            for (const auto& d : inner)
                out.push_back(mk_dot(d, t));
            return;
        }
        case Kind::top:
            break;
        }
        throw SortError("T in decision procedure input");
    }

    const Alphabet& alphabet_;
    std::vector<Atom> atoms_;
    std::vector<Term> terms_;
    std::unordered_map<Term, Id, TermHash> ids_;
    std::vector<std::vector<signed char>> eps_;
    std::unordered_map<std::uint64_t, std::vector<Id>> derivs_;
    std::vector<std::vector<Id>> sets_;
    std::map<std::vector<Id>, SetId> set_ids_;
    std::unordered_map<std::uint64_t, SetId> steps_;
};

struct UnionFind {
    std::vector<SetId> parent;

    SetId find(SetId x) {
        if (x >= parent.size()) {
            std::size_t old = parent.size();
            parent.resize(x + 1);
            std::iota(parent.begin() + static_cast<std::ptrdiff_t>(old), parent.end(), static_cast<SetId>(old));
        }
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }

    void unite(SetId a, SetId b) { parent[find(a)] = find(b); }
};

bool epsilon_mismatch(Engine& engine, SetId x, SetId y) {
    for (std::size_t a = 0; a < engine.atoms().size(); ++a)
        if (engine.set_eps(x, a) != engine.set_eps(y, a))
            return true;
    return false;
}

bool bisimilar(Engine& engine, SetId start_left, SetId start_right) {
    UnionFind classes;
    std::deque<std::pair<SetId, SetId>> todo{{start_left, start_right}};
    while (!todo.empty()) {
        auto [x, y] = todo.front();
        todo.pop_front();
        if (classes.find(x) == classes.find(y))
            continue;
        if (epsilon_mismatch(engine, x, y))
            return false;
        classes.unite(x, y);
        for (std::size_t a = 0; a < engine.atoms().size(); ++a)
            for (std::size_t p = 0; p < engine.action_count(); ++p)
                todo.emplace_back(engine.step(x, a, p), engine.step(y, a, p));
    }
    return true;
}

Verdict shortest_witness(Engine& engine, SetId start_left, SetId start_right) {
    struct Visit {
        SetId left, right;
        std::size_t parent;
        std::uint32_t atom, action;
    };
    std::vector<Visit> visits{{start_left, start_right, 0, 0, 0}};
    std::map<std::pair<SetId, SetId>, std::size_t> seen{{{start_left, start_right}, 0}};
    for (std::size_t head = 0; head < visits.size(); ++head) {
        const Visit v = visits[head];
        for (std::size_t a = 0; a < engine.atoms().size(); ++a) {
            bool in_left = engine.set_eps(v.left, a);
            if (in_left == engine.set_eps(v.right, a))
                continue;
            std::vector<Atom> atoms{engine.atoms()[a]};
            std::vector<std::uint32_t> acts;
            for (std::size_t i = head; i != 0; i = visits[i].parent) {
                acts.push_back(visits[i].action);
                atoms.push_back(engine.atoms()[visits[i].atom]);
            }
            std::reverse(atoms.begin(), atoms.end());
            std::reverse(acts.begin(), acts.end());
            return Verdict::refuted(GuardedString(std::move(atoms), std::move(acts)),
                                    in_left ? Side::left : Side::right);
        }
        for (std::size_t a = 0; a < engine.atoms().size(); ++a)
            for (std::size_t p = 0; p < engine.action_count(); ++p) {
                std::pair<SetId, SetId> next{engine.step(v.left, a, p), engine.step(v.right, a, p)};
                if (seen.emplace(next, visits.size()).second)
                    visits.push_back({next.first, next.second, head, static_cast<std::uint32_t>(a),
                                      static_cast<std::uint32_t>(p)});
            }
    }
    throw InternalError("bisimulation failed but no distinguishing string was found");
}

bool member_in(Engine& engine, const GuardedString& s, Id start) {
    SetId current = engine.intern_set({start});
    for (std::size_t i = 0; i < s.length(); ++i) {
        if (s.acts[i] >= engine.action_count())
            throw InputError("guarded string uses an action outside the alphabet");
        current = engine.step(current, engine.atom_index(s.atoms[i]), s.acts[i]);
    }
    return engine.set_eps(current, engine.atom_index(s.last()));
}

} // namespace

bool epsilon(const Term& t, Atom a, const Alphabet& alphabet) {
    Engine engine(alphabet, default_atom_cap);
    check_declared(t, alphabet);
    return engine.eps(engine.intern(t), engine.atom_index(a));
}

StateSet deriv(const Term& t, Atom a, std::string_view action, const Alphabet& alphabet) {
    check_declared(t, alphabet);
    auto p = alphabet.action_index(action);
    if (!p)
        throw InputError("undeclared action '" + std::string(action) + "'");
    Engine engine(alphabet, default_atom_cap);
    std::vector<Term> out;
    for (Id id : engine.deriv(engine.intern(t), engine.atom_index(a), *p))
        out.push_back(engine.term(id));
    return StateSet(std::move(out));
}

bool member(const GuardedString& s, const Term& t, const Alphabet& alphabet, std::size_t atom_cap) {
    check_declared(t, alphabet);
    Engine engine(alphabet, atom_cap);
    return member_in(engine, s, engine.intern(t));
}

Verdict equivalent(const Term& t1, const Term& t2, const Alphabet& alphabet, std::size_t atom_cap) {
    check_declared(t1, alphabet);
    check_declared(t2, alphabet);
    Engine engine(alphabet, atom_cap);
    Id left = engine.intern(t1);
    Id right = engine.intern(t2);
    SetId start_left = engine.intern_set({left});
    SetId start_right = engine.intern_set({right});
    if (bisimilar(engine, start_left, start_right))
        return Verdict::equivalent();

    Verdict v = shortest_witness(engine, start_left, start_right);
    bool in_left = member_in(engine, *v.witness, left);
    bool in_right = member_in(engine, *v.witness, right);
    if (in_left == in_right || in_left != (v.side == Side::left))
        throw InternalError("witness is not accepted by exactly one side");
    return v;
}

Verdict leq(const Term& t1, const Term& t2, const Alphabet& alphabet, std::size_t atom_cap) {
    return equivalent(Term::plus(t1, t2), t2, alphabet, atom_cap);
}

} // namespace topkat
