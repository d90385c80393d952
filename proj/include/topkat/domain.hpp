#ifndef TOPKAT_DOMAIN_HPP
#define TOPKAT_DOMAIN_HPP

#include "topkat/decide.hpp"
#include "topkat/relmodel.hpp"
#include "topkat/semantics.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace topkat {

/**
 * A finite relational model extracted from a language witness. Carrier
 * element i is labelled by `carrier[i]`, a guarded string over the
 * alphabet extended with `__top__`.
 */
struct ExtractedModel {
    RelInterpretation interp;
    std::vector<GuardedString> carrier;
    std::size_t violating_point = 0;
};

/// Provable, or refuted with a verified relational countermodel.
struct ComparisonVerdict {
    struct Refutation {
        ExtractedModel model;
        GuardedString witness;  // over the extended alphabet
        Side side = Side::right;
    };
    std::optional<Refutation> refutation;

    bool provable() const noexcept { return !refutation.has_value(); }
};

/**
 * Decides cod(t1) >= cod(t2) over all relational models for T-free terms,
 * through the TopKAT inequality T t2 <= T t1. A refutation carries the
 * model built by `build_cod_countermodel`, checked by evaluation.
 */
ComparisonVerdict cod_geq(const Term& t1, const Term& t2, const Alphabet& alphabet,
                          std::size_t atom_cap = default_atom_cap);

/**
 * Decides dom(t1) >= dom(t2) through t2 T <= t1 T. The verdict is
 * cross-checked against cod_geq(reverse(t1), reverse(t2)).
 */
ComparisonVerdict dom_geq(const Term& t1, const Term& t2, const Alphabet& alphabet,
                          std::size_t atom_cap = default_atom_cap);

/**
 * Prefix model of a witness w in G(r(T t2)) \ G(r(T t1)).
 *
 * Carrier: the prefixes of w cut at atoms, shortest first. An action p
 * relates x to y when y extends x by one p step; a test b holds at x when
 * the last atom of x satisfies b. Postcondition (checked): w is in
 * cod(eval(t2)) and not in cod(eval(t1)).
 */
ExtractedModel build_cod_countermodel(const GuardedString& w, const Term& t1, const Term& t2,
                                      const Alphabet& alphabet);

/// Suffix model of a witness w in G(r(t2 T)) \ G(r(t1 T)); w is carrier
/// element 0 and lies in dom(eval(t2)) only.
ExtractedModel build_dom_countermodel(const GuardedString& w, const Term& t1, const Term& t2,
                                      const Alphabet& alphabet);

/**
 * Pairs (s, s ⋄ s') with s ranging over all guarded strings over the
 * extended alphabet and s' over the bounded language of t, keeping pairs
 * whose second component has at most max_actions actions. Computed by the
 * bounded language oracle only.
 */
std::vector<std::pair<GuardedString, GuardedString>> prefix_model_image(const Term& t, const Alphabet& alphabet,
                                                                        std::size_t max_actions);

/// Second components of `prefix_model_image`.
Language prefix_model_codomain(const Term& t, const Alphabet& alphabet, std::size_t max_actions);

} // namespace topkat

#endif
