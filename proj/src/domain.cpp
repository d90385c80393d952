#include "topkat/domain.hpp"

#include "topkat/error.hpp"
#include "topkat/reduce.hpp"

namespace topkat {

namespace {

void require_top_free(const Term& t) {
    if (contains_top(t))
        throw SortError("term '" + render(t) +
                        "' contains T; domain/codomain comparison is only complete for T-free terms");
}

/// Relations shared by the prefix and suffix models: position j steps to
/// j+1 along the j-th action of w, and tests are read off the atom at j.
RelInterpretation chain_model(const GuardedString& w, const Alphabet& alphabet) {
    const Alphabet extended = alphabet.with_top_action();
    RelInterpretation interp = RelInterpretation::empty(w.length() + 1, alphabet);
    for (std::size_t j = 0; j < w.length(); ++j) {
        const std::string& name = extended.actions().at(w.acts[j]);
        if (auto it = interp.actions.find(name); it != interp.actions.end())
            it->second.insert(j, j + 1);
    }
    for (std::size_t j = 0; j <= w.length(); ++j)
        for (std::size_t b = 0; b < alphabet.tests().size(); ++b)
            if (w.atoms[j].value(b))
                interp.tests[alphabet.tests()[b]].insert(j, j);
    return interp;
}

bool includes(const PointSet& s, std::size_t x) { return s.contains(x); }

} // namespace

ExtractedModel build_cod_countermodel(const GuardedString& w, const Term& t1, const Term& t2,
                                      const Alphabet& alphabet) {
    const Alphabet extended = alphabet.with_top_action();
    const Term top_t1 = reduce(Term::dot(Term::top(), t1), alphabet);
    const Term top_t2 = reduce(Term::dot(Term::top(), t2), alphabet);
    if (!member(w, top_t2, extended) || member(w, top_t1, extended))
        throw InputError("witness must lie in the language of T t2 and outside that of T t1");

    ExtractedModel m;
    m.interp = chain_model(w, alphabet);
    for (std::size_t j = 0; j <= w.length(); ++j)
        m.carrier.push_back(w.prefix(j));
    m.violating_point = w.length();

    if (!includes(cod(eval(t2, m.interp)), m.violating_point) ||
        includes(cod(eval(t1, m.interp)), m.violating_point))
        throw InternalError("prefix model does not separate the codomains");
    return m;
}

ExtractedModel build_dom_countermodel(const GuardedString& w, const Term& t1, const Term& t2,
                                      const Alphabet& alphabet) {
    const Alphabet extended = alphabet.with_top_action();
    const Term t1_top = reduce(Term::dot(t1, Term::top()), alphabet);
    const Term t2_top = reduce(Term::dot(t2, Term::top()), alphabet);
    if (!member(w, t2_top, extended) || member(w, t1_top, extended))
        throw InputError("witness must lie in the language of t2 T and outside that of t1 T");

    ExtractedModel m;
    m.interp = chain_model(w, alphabet);
    for (std::size_t j = 0; j <= w.length(); ++j)
        m.carrier.push_back(w.suffix(j));
    m.violating_point = 0;

    if (!includes(dom(eval(t2, m.interp)), m.violating_point) ||
        includes(dom(eval(t1, m.interp)), m.violating_point))
        throw InternalError("suffix model does not separate the domains");
    return m;
}

ComparisonVerdict cod_geq(const Term& t1, const Term& t2, const Alphabet& alphabet, std::size_t atom_cap) {
    require_top_free(t1);
    require_top_free(t2);
    Verdict v = topkat_leq(Term::dot(Term::top(), t2), Term::dot(Term::top(), t1), alphabet, atom_cap);
    if (v.holds())
        return {};
    return {ComparisonVerdict::Refutation{build_cod_countermodel(*v.witness, t1, t2, alphabet), *v.witness,
                                          Side::right}};
}

ComparisonVerdict dom_geq(const Term& t1, const Term& t2, const Alphabet& alphabet, std::size_t atom_cap) {
    require_top_free(t1);
    require_top_free(t2);
    Verdict v = topkat_leq(Term::dot(t2, Term::top()), Term::dot(t1, Term::top()), alphabet, atom_cap);
    Verdict mirrored = topkat_leq(Term::dot(Term::top(), reverse(t2)), Term::dot(Term::top(), reverse(t1)),
                                  alphabet, atom_cap);
    if (v.holds() != mirrored.holds())
        throw InternalError("domain verdict disagrees with the codomain verdict on reversed terms");
    if (v.holds())
        return {};
    return {ComparisonVerdict::Refutation{build_dom_countermodel(*v.witness, t1, t2, alphabet), *v.witness,
                                          Side::right}};
}

std::vector<std::pair<GuardedString, GuardedString>> prefix_model_image(const Term& t, const Alphabet& alphabet,
                                                                        std::size_t max_actions) {
    require_top_free(t);
    const Alphabet extended = alphabet.with_top_action();
    const Language lang = lang_bounded(t, extended, max_actions);
    std::vector<std::pair<GuardedString, GuardedString>> out;
    for (const auto& s : all_guarded_strings(extended, max_actions))
        for (const auto& s1 : lang)
            if (s.length() + s1.length() <= max_actions)
                if (auto f = fuse(s, s1))
                    out.emplace_back(s, std::move(*f));
    return out;
}

Language prefix_model_codomain(const Term& t, const Alphabet& alphabet, std::size_t max_actions) {
    Language out;
    for (auto& [from, to] : prefix_model_image(t, alphabet, max_actions))
        out.insert(to);
    return out;
}

} // namespace topkat
