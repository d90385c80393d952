#ifndef TOPKAT_REDUCE_HPP
#define TOPKAT_REDUCE_HPP

#include "topkat/decide.hpp"
#include "topkat/syntax.hpp"

namespace topkat {

/// A base alphabet together with the fresh action that stands for T.
class ExtendedAlphabet {
public:
    explicit ExtendedAlphabet(Alphabet base) : base_(std::move(base)), extended_(base_.with_top_action()) {}

    const Alphabet& base() const noexcept { return base_; }
    /// Base actions followed by `__top__`; tests unchanged.
    const Alphabet& alphabet() const noexcept { return extended_; }
    std::string_view top_action() const noexcept { return top_action_name; }

private:
    Alphabet base_;
    Alphabet extended_;
};

/// (a_1 + ... + a_k + __top__)*, the largest element over the extended alphabet.
Term top_expansion(const Alphabet& alphabet);

/// Replaces every T by `top_expansion(alphabet)`; everything else is kept.
Term reduce(const Term& t, const Alphabet& alphabet);

/// Replaces the action `__top__` by T.
Term embed_back(const Term& t);

/// Smallest alphabet declaring every primitive of t1 and t2, in the
/// declaration order of `alphabet`.
Alphabet prune(const Alphabet& alphabet, const Term& t1, const Term& t2);

/**
 * Decides t1 = t2 in TopKAT by comparing the reducts in KAT over the
 * extended alphabet. Primitives absent from both terms are dropped before
 * reducing. Witnesses are expressed over
 * `ExtendedAlphabet(alphabet).alphabet()`, with dropped tests set false.
 */
Verdict topkat_equivalent(const Term& t1, const Term& t2, const Alphabet& alphabet,
                          std::size_t atom_cap = default_atom_cap);

/// t1 <= t2 in TopKAT; a witness lies in the reduct of t1 only.
Verdict topkat_leq(const Term& t1, const Term& t2, const Alphabet& alphabet,
                   std::size_t atom_cap = default_atom_cap);

} // namespace topkat

#endif
