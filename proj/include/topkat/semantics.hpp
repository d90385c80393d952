#ifndef TOPKAT_SEMANTICS_HPP
#define TOPKAT_SEMANTICS_HPP

#include "topkat/syntax.hpp"

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace topkat {

/// Largest test alphabet for which atoms are enumerated explicitly.
inline constexpr std::size_t default_atom_cap = 10;

/**
 * A total truth assignment to the tests of an alphabet.
 * Bit i holds the value of the i-th declared test.
 *
 * Atoms are ordered lexicographically along the declaration order with
 * false before true, so over tests {b, c} the order is
 * !b!c < !bc < b!c < bc.
 */
struct Atom {
    std::uint32_t bits = 0;

    bool value(std::size_t test) const noexcept { return (bits >> test) & 1U; }
    bool operator==(const Atom&) const = default;
    friend std::strong_ordering operator<=>(Atom a, Atom b) noexcept {
        std::uint32_t diff = a.bits ^ b.bits;
        if (diff == 0)
            return std::strong_ordering::equal;
        std::uint32_t lowest = diff & (~diff + 1);
        return (a.bits & lowest) ? std::strong_ordering::greater : std::strong_ordering::less;
    }
};

/**
 * alpha_0 p_1 alpha_1 ... p_n alpha_n, with actions stored as indices into
 * the action list of the alphabet the string was built over.
 *
 * Ordered by number of actions, then lexicographically along the
 * alternating sequence (atom order, then action declaration order).
 */
struct GuardedString {
    std::vector<Atom> atoms{Atom{}};
    std::vector<std::uint32_t> acts;

    GuardedString() = default;
    explicit GuardedString(Atom a) : atoms{a} {}
    GuardedString(std::vector<Atom> atoms, std::vector<std::uint32_t> acts);

    std::size_t length() const noexcept { return acts.size(); }
    Atom first() const noexcept { return atoms.front(); }
    Atom last() const noexcept { return atoms.back(); }

    /// alpha_0 p_1 ... alpha_j.
    GuardedString prefix(std::size_t j) const;
    /// alpha_j p_{j+1} ... alpha_n.
    GuardedString suffix(std::size_t j) const;
    GuardedString reversed() const;

    bool operator==(const GuardedString&) const = default;
    friend std::strong_ordering operator<=>(const GuardedString& a, const GuardedString& b);
};

using Language = std::set<GuardedString>;

/// All 2^|tests| atoms in ascending order. Throws ResourceError above the cap.
std::vector<Atom> all_atoms(const Alphabet& alphabet, std::size_t atom_cap = default_atom_cap);

/// Boolean value of a test-only term under an atom. Throws SortError otherwise.
bool satisfies(Atom a, const Term& t, const Alphabet& alphabet);

/// s1 ⋄ s2: defined iff the last atom of s1 is the first atom of s2.
std::optional<GuardedString> fuse(const GuardedString& s1, const GuardedString& s2);

/// Every guarded string with at most max_actions actions.
Language all_guarded_strings(const Alphabet& alphabet, std::size_t max_actions,
                             std::size_t atom_cap = default_atom_cap);

/// { s1 ⋄ s2 : s1 ∈ lhs, s2 ∈ rhs } cut to at most max_actions actions.
Language fuse_languages(const Language& lhs, const Language& rhs, std::size_t max_actions);

/**
 * Guarded strings of the language interpretation of a T-free term with at
 * most max_actions actions, computed by direct set operations.
 *
 * This is the reference oracle for the decision procedure and shares no
 * code with it.
 */
Language lang_bounded(const Term& t, const Alphabet& alphabet, std::size_t max_actions,
                      std::size_t atom_cap = default_atom_cap);

/// `[b&!c]`; `[]` for an empty test alphabet.
std::string render_atom(Atom a, const Alphabet& alphabet);
/// `[b&!c] p [b&c]`.
std::string render(const GuardedString& s, const Alphabet& alphabet);
/// Inverse of render; every test must appear exactly once in each atom.
GuardedString parse_guarded_string(std::string_view text, const Alphabet& alphabet);

/// Re-expresses s over another alphabet. Tests missing from `from` are set
/// false; actions are matched by name.
GuardedString translate(const GuardedString& s, const Alphabet& from, const Alphabet& to);

} // namespace topkat

#endif
