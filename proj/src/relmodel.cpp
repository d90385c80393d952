#include "topkat/relmodel.hpp"

#include "topkat/error.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <sstream>

namespace topkat {

Relation::Relation(std::size_t n) : n_(n), bits_(n * ((n + 63) / 64), 0) {}

Relation Relation::identity(std::size_t n) {
    Relation r(n);
    for (std::size_t i = 0; i < n; ++i)
        r.insert(i, i);
    return r;
}

Relation Relation::complete(std::size_t n) {
    Relation r(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            r.insert(i, j);
    return r;
}

Relation Relation::from_pairs(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
    Relation r(n);
    for (auto [i, j] : pairs)
        r.insert(i, j);
    return r;
}

bool Relation::contains(std::size_t i, std::size_t j) const {
    if (i >= n_ || j >= n_)
        return false;
    return (row(i)[j / 64] >> (j % 64)) & 1U;
}

void Relation::insert(std::size_t i, std::size_t j) {
    if (i >= n_ || j >= n_)
        throw InputError("pair (" + std::to_string(i) + "," + std::to_string(j) + ") outside a carrier of size " +
                         std::to_string(n_));
    row(i)[j / 64] |= std::uint64_t{1} << (j % 64);
}

std::vector<std::pair<std::size_t, std::size_t>> Relation::pairs() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j)
            if (contains(i, j))
                out.emplace_back(i, j);
    return out;
}

bool Relation::empty() const {
    for (auto w : bits_)
        if (w)
            return false;
    return true;
}

Relation Relation::operator|(const Relation& other) const {
    Relation r = *this;
    for (std::size_t k = 0; k < bits_.size(); ++k)
        r.bits_[k] |= other.bits_[k];
    return r;
}

Relation Relation::operator-(const Relation& other) const {
    Relation r = *this;
    for (std::size_t k = 0; k < bits_.size(); ++k)
        r.bits_[k] &= ~other.bits_[k];
    return r;
}

Relation Relation::then(const Relation& other) const {
    Relation r(n_);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j)
            if (contains(i, j))
                for (std::size_t w = 0; w < words(); ++w)
                    r.row(i)[w] |= other.row(j)[w];
    return r;
}

Relation Relation::closure() const {
    Relation r = *this | identity(n_);
    for (std::size_t k = 0; k < n_; ++k)
        for (std::size_t i = 0; i < n_; ++i)
            if (r.contains(i, k))
                for (std::size_t w = 0; w < words(); ++w)
                    r.row(i)[w] |= r.row(k)[w];
    return r;
}

bool Relation::subset_of(const Relation& other) const {
    for (std::size_t k = 0; k < bits_.size(); ++k)
        if (bits_[k] & ~other.bits_[k])
            return false;
    return true;
}

PointSet dom(const Relation& r) {
    PointSet out;
    for (auto [i, j] : r.pairs())
        out.insert(i);
    return out;
}

PointSet cod(const Relation& r) {
    PointSet out;
    for (auto [i, j] : r.pairs())
        out.insert(j);
    return out;
}

Relation converse(const Relation& r) {
    Relation out(r.carrier_size());
    for (auto [i, j] : r.pairs())
        out.insert(j, i);
    return out;
}

RelInterpretation RelInterpretation::empty(std::size_t n, const Alphabet& alphabet) {
    RelInterpretation interp;
    interp.carrier_size = n;
    for (const auto& a : alphabet.actions())
        interp.actions.emplace(a, Relation(n));
    for (const auto& b : alphabet.tests())
        interp.tests.emplace(b, Relation(n));
    return interp;
}

void RelInterpretation::validate() const {
    const Relation id = Relation::identity(carrier_size);
    for (const auto& [name, r] : actions)
        if (r.carrier_size() != carrier_size)
            throw InputError("relation for '" + name + "' has the wrong carrier size");
    for (const auto& [name, r] : tests) {
        if (r.carrier_size() != carrier_size)
            throw InputError("relation for '" + name + "' has the wrong carrier size");
        if (!r.subset_of(id))
            throw InputError("test '" + name + "' is not a subset of the identity");
    }
}

Relation eval(const Term& t, const RelInterpretation& interp) {
    const std::size_t n = interp.carrier_size;
    switch (t.kind()) {
    case Kind::zero: return Relation(n);
    case Kind::one: return Relation::identity(n);
    case Kind::top: return Relation::complete(n);
    case Kind::act: {
        auto it = interp.actions.find(t.name());
        if (it == interp.actions.end())
            throw InputError("no interpretation for action '" + t.name() + "'");
        return it->second;
    }
    case Kind::test: {
        auto it = interp.tests.find(t.name());
        if (it == interp.tests.end())
            throw InputError("no interpretation for test '" + t.name() + "'");
        return it->second;
    }
    case Kind::neg: return Relation::identity(n) - eval(t.lhs(), interp);
    case Kind::plus: return eval(t.lhs(), interp) | eval(t.rhs(), interp);
    case Kind::dot: return eval(t.lhs(), interp).then(eval(t.rhs(), interp));
    case Kind::star: return eval(t.lhs(), interp).closure();
    }
    throw InternalError("unknown term kind");
}

namespace {

bool includes(const PointSet& big, const PointSet& small) {
    return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

} // namespace

EncodingReport check_encoding(const RelInterpretation& interp, const Term& r1, const Term& r2) {
    const Relation top = Relation::complete(interp.carrier_size);
    const Relation e1 = eval(r1, interp);
    const Relation e2 = eval(r2, interp);
    return {
        e2.then(top).subset_of(e1.then(top)),
        includes(dom(e1), dom(e2)),
        top.then(e2).subset_of(top.then(e1)),
        includes(cod(e1), cod(e2)),
    };
}

ComparisonKind parse_comparison_kind(const std::string& text) {
    if (text == "equality")
        return ComparisonKind::equality;
    if (text == "leq")
        return ComparisonKind::leq;
    if (text == "dom-geq" || text == "dom_geq")
        return ComparisonKind::dom_geq;
    if (text == "cod-geq" || text == "cod_geq")
        return ComparisonKind::cod_geq;
    throw InputError("unknown comparison kind '" + text + "'");
}

std::string to_string(ComparisonKind kind) {
    switch (kind) {
    case ComparisonKind::equality: return "equality";
    case ComparisonKind::leq: return "leq";
    case ComparisonKind::dom_geq: return "dom-geq";
    case ComparisonKind::cod_geq: return "cod-geq";
    }
    return "?";
}

bool violates(ComparisonKind kind, const Term& t1, const Term& t2, const RelInterpretation& interp) {
    const Relation e1 = eval(t1, interp);
    const Relation e2 = eval(t2, interp);
    switch (kind) {
    case ComparisonKind::equality: return e1 != e2;
    case ComparisonKind::leq: return !e1.subset_of(e2);
    case ComparisonKind::dom_geq: return !includes(dom(e1), dom(e2));
    case ComparisonKind::cod_geq: return !includes(cod(e1), cod(e2));
    }
    return false;
}

std::string describe_violation(ComparisonKind kind, const Term& t1, const Term& t2, const RelInterpretation& interp) {
    const Relation e1 = eval(t1, interp);
    const Relation e2 = eval(t2, interp);
    std::ostringstream out;
    auto pair_only_in = [&](const Relation& a, const Relation& b, const char* side) {
        for (auto [i, j] : a.pairs())
            if (!b.contains(i, j)) {
                out << "pair (" << i << "," << j << ") is in the " << side << " term only";
                return true;
            }
        return false;
    };
    auto point_only_in = [&](const PointSet& a, const PointSet& b, const char* what) {
        for (auto x : a)
            if (!b.contains(x)) {
                out << "point " << x << " is in " << what << "(" << render(t2) << ") but not in " << what << "("
                    << render(t1) << ")";
                return;
            }
    };
    switch (kind) {
    case ComparisonKind::equality:
        if (!pair_only_in(e1, e2, "left"))
            pair_only_in(e2, e1, "right");
        break;
    case ComparisonKind::leq: pair_only_in(e1, e2, "left"); break;
    case ComparisonKind::dom_geq: point_only_in(dom(e2), dom(e1), "dom"); break;
    case ComparisonKind::cod_geq: point_only_in(cod(e2), cod(e1), "cod"); break;
    }
    return out.str();
}

std::uint64_t enumeration_count(std::size_t actions, std::size_t tests, std::size_t max_n) {
    constexpr std::uint64_t saturated = ~std::uint64_t{0};
    auto mul = [](std::uint64_t a, std::uint64_t b) {
        if (a != 0 && b > saturated / a)
            return saturated;
        return a * b;
    };
    auto pow2 = [](std::size_t e) { return e >= 64 ? saturated : std::uint64_t{1} << e; };
    std::uint64_t total = 0;
    for (std::size_t n = 1; n <= max_n; ++n) {
        std::uint64_t count = 1;
        for (std::size_t i = 0; i < actions; ++i)
            count = mul(count, pow2(n * n));
        for (std::size_t i = 0; i < tests; ++i)
            count = mul(count, pow2(n));
        total = (saturated - total < count) ? saturated : total + count;
    }
    return total;
}

namespace {

using Predicate = std::function<bool(const RelInterpretation&)>;

Relation relation_from_code(std::size_t n, std::uint64_t code) {
    Relation r(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if ((code >> (i * n + j)) & 1U)
                r.insert(i, j);
    return r;
}

Relation test_from_code(std::size_t n, std::uint64_t code) {
    Relation r(n);
    for (std::size_t i = 0; i < n; ++i)
        if ((code >> i) & 1U)
            r.insert(i, i);
    return r;
}

std::optional<RelInterpretation> search(const Alphabet& relevant, const Alphabet& alphabet, std::size_t max_n,
                                        const SearchBudget& budget, const Predicate& is_counterexample) {
    if (max_n < 1)
        throw InputError("the largest carrier size must be at least 1");
    const auto& acts = relevant.actions();
    const auto& tests = relevant.tests();

    if (budget.exhaustive) {
        std::uint64_t count = enumeration_count(acts.size(), tests.size(), max_n);
        if (count > budget.ceiling || max_n * max_n >= 64)
            throw ResourceError("exhaustive search needs " + std::to_string(count) +
                                " interpretations, ceiling is " + std::to_string(budget.ceiling));
        for (std::size_t n = 1; n <= max_n; ++n) {
            const std::size_t digits = acts.size() + tests.size();
            std::vector<std::uint64_t> code(digits, 0);
            auto radix = [&](std::size_t d) {
                return std::uint64_t{1} << (d < acts.size() ? n * n : n);
            };
            auto advance = [&] {
                for (std::size_t d = digits; d-- > 0;) {
                    if (++code[d] < radix(d))
                        return true;
                    code[d] = 0;
                }
                return false;
            };
            do {
                RelInterpretation interp = RelInterpretation::empty(n, alphabet);
                for (std::size_t d = 0; d < acts.size(); ++d)
                    interp.actions[acts[d]] = relation_from_code(n, code[d]);
                for (std::size_t d = 0; d < tests.size(); ++d)
                    interp.tests[tests[d]] = test_from_code(n, code[acts.size() + d]);
                if (is_counterexample(interp))
                    return interp;
            } while (advance());
        }
        return std::nullopt;
    }

    std::mt19937_64 rng(budget.seed);
    const std::size_t n = max_n;
    for (std::size_t s = 0; s < budget.samples; ++s) {
        RelInterpretation interp = RelInterpretation::empty(n, alphabet);
        for (const auto& a : acts) {
            Relation r(n);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    if (rng() >> 63)
                        r.insert(i, j);
            interp.actions[a] = r;
        }
        for (const auto& b : tests) {
            Relation r(n);
            for (std::size_t i = 0; i < n; ++i)
                if (rng() >> 63)
                    r.insert(i, i);
            interp.tests[b] = r;
        }
        if (is_counterexample(interp))
            return interp;
    }
    return std::nullopt;
}

Alphabet relevant_primitives(const Alphabet& alphabet, const std::vector<Term>& terms) {
    std::set<std::string> acts;
    std::set<std::string> tests;
    for (const auto& t : terms) {
        check_declared(t, alphabet);
        acts.merge(actions_of(t));
        tests.merge(tests_of(t));
    }
    return alphabet.restrict_to(acts, tests);
}

} // namespace

std::optional<RelCountermodel> search_countermodel(ComparisonKind kind, const Term& t1, const Term& t2,
                                                   const Alphabet& alphabet, std::size_t max_n,
                                                   const SearchBudget& budget) {
    const Alphabet relevant = relevant_primitives(alphabet, {t1, t2});
    auto found = search(relevant, alphabet, max_n, budget,
                        [&](const RelInterpretation& interp) { return violates(kind, t1, t2, interp); });
    if (!found)
        return std::nullopt;
    if (!violates(kind, t1, t2, *found))
        throw InternalError("countermodel failed re-verification");
    return RelCountermodel{*found, describe_violation(kind, t1, t2, *found)};
}

bool holds(const TopInequality& ineq, const RelInterpretation& interp) {
    return includes(cod(eval(ineq.rhs, interp)), cod(eval(ineq.lhs, interp)));
}

std::optional<RelCountermodel> falsify_implication(const std::vector<TopInequality>& hyps, const TopInequality& goal,
                                                   const Alphabet& alphabet, std::size_t max_n,
                                                   const SearchBudget& budget) {
    std::vector<Term> terms{goal.lhs, goal.rhs};
    for (const auto& h : hyps) {
        terms.push_back(h.lhs);
        terms.push_back(h.rhs);
    }
    for (const auto& t : terms)
        if (contains_top(t))
            throw SortError("T-inequalities compare T-free terms; '" + render(t) + "' contains T");
    const Alphabet relevant = relevant_primitives(alphabet, terms);
    auto refutes = [&](const RelInterpretation& interp) {
        if (holds(goal, interp))
            return false;
        for (const auto& h : hyps)
            if (!holds(h, interp))
                return false;
        return true;
    };
    auto found = search(relevant, alphabet, max_n, budget, refutes);
    if (!found)
        return std::nullopt;
    if (!refutes(*found))
        throw InternalError("implication countermodel failed re-verification");
    return RelCountermodel{*found, describe_violation(ComparisonKind::cod_geq, goal.rhs, goal.lhs, *found)};
}

} // namespace topkat
