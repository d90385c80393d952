#ifndef TOPKAT_LOGIC_HPP
#define TOPKAT_LOGIC_HPP

#include "topkat/decide.hpp"
#include "topkat/domain.hpp"
#include "topkat/relmodel.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace topkat {

enum class TripleKind { hoare, incorrectness };

/**
 * Orientation of the incorrectness encoding.
 *
 * under_approximate: [a] p [b] means every b-state is reached from an
 * a-state through p, i.e. T b <= T a p.
 * as_printed: the opposite orientation T a p <= T b.
 */
enum class Direction { under_approximate, as_printed };

Direction parse_direction(const std::string& text);

struct Triple {
    TripleKind kind = TripleKind::hoare;
    Term pre = Term::one();
    Term prog = Term::one();
    Term post = Term::one();
};

/// `hoare {b} p;q {c}` or `incorrectness [b] p;q [c]`.
Triple parse_triple(std::string_view line, const Alphabet& alphabet);
std::string render(const Triple& triple);

/// Throws SortError unless pre/post are tests and prog is T-free.
void check_sorts(const Triple& triple);

/// What a triple is reduced to. Hoare triples become the KAT equation
/// `lhs = rhs`; incorrectness triples become `T lhs <= T rhs`.
struct EncodedTriple {
    enum class Form { equation, top_inequality } form;
    Term lhs;
    Term rhs;
};

EncodedTriple encode(const Triple& triple, Direction direction = Direction::under_approximate);

struct TripleResult {
    bool provable = false;
    /// Hoare only: verdict of the KAT equation.
    std::optional<Verdict> equation;
    /// Relational verdict; for Hoare triples this is cod(0) >= cod(pre prog !post).
    ComparisonVerdict comparison;
};

TripleResult check_triple(const Triple& triple, const Alphabet& alphabet,
                          Direction direction = Direction::under_approximate);

enum class Rule { sequencing, consequence, choice };

Rule parse_rule(const std::string& text);
std::string to_string(Rule rule);
/// Metavariables a rule instance must bind.
std::vector<std::string> rule_parameters(Rule rule);

struct RuleInstance {
    std::vector<TopInequality> hyps;
    TopInequality goal;
};

/**
 * Hypotheses and goal of a proof rule as T-inequalities.
 *
 *   sequencing:  [a] p [b], [b] q [c]          / [a] p q [c]
 *   consequence: [a] p [b], a <= a2, b2 <= b   / [a2] p [b2]   (under-approximate)
 *                [a] p [b], a2 <= a, b <= b2   / [a2] p [b2]   (as printed)
 *   choice:      [a] p [b], [a] q [c]          / [a] p + q [b + c]
 */
RuleInstance instantiate(Rule rule, const std::map<std::string, Term>& bindings, Direction direction);

struct RuleReport {
    RuleInstance instance;
    std::optional<RelCountermodel> countermodel;
};

/// One-sided: a missing countermodel only means none exists within the budget.
RuleReport check_rule_instance(Rule rule, const std::map<std::string, Term>& bindings, const Alphabet& alphabet,
                               std::size_t max_n, const SearchBudget& budget,
                               Direction direction = Direction::under_approximate);

/// `lhs <= rhs`, read as T lhs <= T rhs.
TopInequality parse_top_inequality(std::string_view text, const Alphabet& alphabet);
std::string render(const TopInequality& ineq);

} // namespace topkat

#endif
