#include "topkat/logic.hpp"

#include "topkat/error.hpp"
#include "topkat/reduce.hpp"

#include <algorithm>
#include <cctype>

namespace topkat {

Direction parse_direction(const std::string& text) {
    if (text == "under-approx" || text == "under-approximate")
        return Direction::under_approximate;
    if (text == "as-printed")
        return Direction::as_printed;
    throw InputError("unknown direction '" + text + "' (expected under-approx or as-printed)");
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

} // namespace

Triple parse_triple(std::string_view line, const Alphabet& alphabet) {
    line = trim(line);
    Triple tr;
    char open = 0;
    char close = 0;
    std::string_view rest;
    if (line.starts_with("hoare")) {
        tr.kind = TripleKind::hoare;
        open = '{';
        close = '}';
        rest = line.substr(5);
    } else if (line.starts_with("incorrectness")) {
        tr.kind = TripleKind::incorrectness;
        open = '[';
        close = ']';
        rest = line.substr(13);
    } else {
        throw InputError("triple must start with 'hoare' or 'incorrectness': " + std::string(line));
    }
    rest = trim(rest);
    auto pre_end = rest.find(close);
    auto post_begin = rest.rfind(open);
    if (rest.empty() || rest.front() != open || rest.back() != close || pre_end == std::string_view::npos ||
        post_begin == std::string_view::npos || post_begin <= pre_end)
        throw InputError(std::string("expected ") + open + "pre" + close + " program " + open + "post" + close +
                         ": " + std::string(line));
    tr.pre = parse(rest.substr(1, pre_end - 1), alphabet);
    tr.prog = parse(rest.substr(pre_end + 1, post_begin - pre_end - 1), alphabet);
    tr.post = parse(rest.substr(post_begin + 1, rest.size() - post_begin - 2), alphabet);
    check_sorts(tr);
    return tr;
}

std::string render(const Triple& triple) {
    if (triple.kind == TripleKind::hoare)
        return "hoare {" + render(triple.pre) + "} " + render(triple.prog) + " {" + render(triple.post) + "}";
    return "incorrectness [" + render(triple.pre) + "] " + render(triple.prog) + " [" + render(triple.post) + "]";
}

void check_sorts(const Triple& triple) {
    if (!is_test_term(triple.pre))
        throw SortError("precondition '" + render(triple.pre) + "' is not a test");
    if (!is_test_term(triple.post))
        throw SortError("postcondition '" + render(triple.post) + "' is not a test");
    if (contains_top(triple.prog))
        throw SortError("program '" + render(triple.prog) + "' contains T; triples are checked for T-free programs");
}

EncodedTriple encode(const Triple& triple, Direction direction) {
    check_sorts(triple);
    const Term pre_prog = Term::dot(triple.pre, triple.prog);
    if (triple.kind == TripleKind::hoare)
        return {EncodedTriple::Form::equation, Term::dot(pre_prog, Term::neg(triple.post)), Term::zero()};
    if (direction == Direction::under_approximate)
        return {EncodedTriple::Form::top_inequality, triple.post, pre_prog};
    return {EncodedTriple::Form::top_inequality, pre_prog, triple.post};
}

TripleResult check_triple(const Triple& triple, const Alphabet& alphabet, Direction direction) {
    const EncodedTriple enc = encode(triple, direction);
    TripleResult result;
    if (enc.form == EncodedTriple::Form::equation) {
        result.equation = topkat_equivalent(enc.lhs, enc.rhs, alphabet);
        result.comparison = cod_geq(Term::zero(), enc.lhs, alphabet);
        result.provable = result.equation->holds();
        if (result.provable != result.comparison.provable())
            throw InternalError("Hoare equation and its codomain encoding disagree");
        return result;
    }
    // T lhs <= T rhs is cod(rhs) >= cod(lhs).
    result.comparison = cod_geq(enc.rhs, enc.lhs, alphabet);
    result.provable = result.comparison.provable();
    return result;
}

Rule parse_rule(const std::string& text) {
    if (text == "sequencing")
        return Rule::sequencing;
    if (text == "consequence")
        return Rule::consequence;
    if (text == "choice")
        return Rule::choice;
    throw InputError("unknown rule '" + text + "' (expected sequencing, consequence or choice)");
}

std::string to_string(Rule rule) {
    switch (rule) {
    case Rule::sequencing: return "sequencing";
    case Rule::consequence: return "consequence";
    case Rule::choice: return "choice";
    }
    return "?";
}

std::vector<std::string> rule_parameters(Rule rule) {
    switch (rule) {
    case Rule::sequencing: return {"a", "b", "c", "p", "q"};
    case Rule::consequence: return {"a", "a2", "b", "b2", "p"};
    case Rule::choice: return {"a", "b", "c", "p", "q"};
    }
    return {};
}

RuleInstance instantiate(Rule rule, const std::map<std::string, Term>& bindings, Direction direction) {
    for (const auto& [name, term] : bindings) {
        auto params = rule_parameters(rule);
        if (std::find(params.begin(), params.end(), name) == params.end())
            throw InputError("rule " + to_string(rule) + " has no parameter '" + name + "'");
    }
    auto get = [&](const std::string& name) {
        auto it = bindings.find(name);
        if (it == bindings.end())
            throw InputError("rule " + to_string(rule) + " needs a binding for '" + name + "'");
        return it->second;
    };
    // [pre] prog [post] in the chosen orientation.
    auto triple = [&](const Term& pre, const Term& prog, const Term& post) {
        if (direction == Direction::under_approximate)
            return TopInequality{post, Term::dot(pre, prog)};
        return TopInequality{Term::dot(pre, prog), post};
    };
    auto below = [](const Term& small, const Term& big) { return TopInequality{small, big}; };

    switch (rule) {
    case Rule::sequencing: {
        Term a = get("a"), b = get("b"), c = get("c"), p = get("p"), q = get("q");
        return {{triple(a, p, b), triple(b, q, c)}, triple(a, Term::dot(p, q), c)};
    }
    case Rule::consequence: {
        Term a = get("a"), a2 = get("a2"), b = get("b"), b2 = get("b2"), p = get("p");
        if (direction == Direction::under_approximate)
            return {{triple(a, p, b), below(a, a2), below(b2, b)}, triple(a2, p, b2)};
        return {{triple(a, p, b), below(a2, a), below(b, b2)}, triple(a2, p, b2)};
    }
    case Rule::choice: {
        Term a = get("a"), b = get("b"), c = get("c"), p = get("p"), q = get("q");
        return {{triple(a, p, b), triple(a, q, c)}, triple(a, Term::plus(p, q), Term::plus(b, c))};
    }
    }
    throw InternalError("unknown rule");
}

RuleReport check_rule_instance(Rule rule, const std::map<std::string, Term>& bindings, const Alphabet& alphabet,
                               std::size_t max_n, const SearchBudget& budget, Direction direction) {
    RuleReport report{instantiate(rule, bindings, direction), std::nullopt};
    report.countermodel = falsify_implication(report.instance.hyps, report.instance.goal, alphabet, max_n, budget);
    return report;
}

TopInequality parse_top_inequality(std::string_view text, const Alphabet& alphabet) {
    auto at = text.find("<=");
    if (at == std::string_view::npos)
        throw InputError("expected 'lhs <= rhs': " + std::string(text));
    return {parse(text.substr(0, at), alphabet), parse(text.substr(at + 2), alphabet)};
}

std::string render(const TopInequality& ineq) {
    return render(Term::dot(Term::top(), ineq.lhs)) + " <= " + render(Term::dot(Term::top(), ineq.rhs));
}

} // namespace topkat
