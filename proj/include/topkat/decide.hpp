#ifndef TOPKAT_DECIDE_HPP
#define TOPKAT_DECIDE_HPP

#include "topkat/semantics.hpp"
#include "topkat/syntax.hpp"

#include <optional>
#include <string_view>
#include <vector>

namespace topkat {

/// A finite set of terms denoting the union of their languages. Members are
/// kept sorted by the structural term order and free of duplicates.
struct StateSet {
    std::vector<Term> terms;

    StateSet() = default;
    explicit StateSet(std::vector<Term> members);
    bool empty() const noexcept { return terms.empty(); }
    bool operator==(const StateSet&) const = default;
};

enum class Side { left, right };

/// Outcome of comparing two terms. When not equivalent, `witness` belongs
/// to the language of the term named by `side` and not to the other one.
struct Verdict {
    std::optional<GuardedString> witness;
    Side side = Side::left;

    bool holds() const noexcept { return !witness.has_value(); }
    static Verdict equivalent() { return {}; }
    static Verdict refuted(GuardedString w, Side side) { return {std::move(w), side}; }
};

/// Whether the single-atom string <a> belongs to the language of t.
bool epsilon(const Term& t, Atom a, const Alphabet& alphabet);

/// Partial derivative: strings s such that `a action s` is in the language of t.
/// Results are lightly normalised (0 dropped, units absorbed, sequences
/// right-nested).
StateSet deriv(const Term& t, Atom a, std::string_view action, const Alphabet& alphabet);

bool member(const GuardedString& s, const Term& t, const Alphabet& alphabet,
            std::size_t atom_cap = default_atom_cap);

/**
 * Decides whether two T-free terms denote the same guarded-string language.
 *
 * Determinised derivative sets of both terms are explored breadth-first and
 * merged with a union-find (Hopcroft-Karp style). If a mismatch is found a
 * second breadth-first pass without merging recovers the shortest
 * distinguishing string, ties broken by atom order then action order, and
 * the witness is checked with `member` before it is returned.
 */
Verdict equivalent(const Term& t1, const Term& t2, const Alphabet& alphabet,
                   std::size_t atom_cap = default_atom_cap);

/// t1 <= t2, i.e. t1 + t2 = t2. A witness lies in t1 and not in t2.
Verdict leq(const Term& t1, const Term& t2, const Alphabet& alphabet, std::size_t atom_cap = default_atom_cap);

} // namespace topkat

#endif
