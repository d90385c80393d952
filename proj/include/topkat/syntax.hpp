#ifndef TOPKAT_SYNTAX_HPP
#define TOPKAT_SYNTAX_HPP

#include <compare>
#include <cstddef>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace topkat {

/// Identifier of the fresh action standing for T after reduction.
inline constexpr std::string_view top_action_name = "__top__";

/**
 * Action and test identifiers of a term language.
 *
 * The declaration order is significant: it fixes the bit layout of atoms,
 * the order in which actions are explored by the decision procedure and the
 * order of summands when T is expanded.
 */
class Alphabet {
public:
    Alphabet() = default;

    /// Validates user identifiers: nonempty, well-formed, not `T`, no `__`
    /// prefix, no duplicates, actions and tests disjoint.
    Alphabet(std::vector<std::string> actions, std::vector<std::string> tests);

    /// Same alphabet plus the reserved top action appended to the actions.
    Alphabet with_top_action() const;

    const std::vector<std::string>& actions() const noexcept { return actions_; }
    const std::vector<std::string>& tests() const noexcept { return tests_; }

    std::optional<std::size_t> action_index(std::string_view name) const;
    std::optional<std::size_t> test_index(std::string_view name) const;
    bool is_action(std::string_view name) const { return action_index(name).has_value(); }
    bool is_test(std::string_view name) const { return test_index(name).has_value(); }
    bool has_top_action() const;

    /// Keep only the listed primitives, preserving declaration order.
    Alphabet restrict_to(const std::set<std::string>& actions, const std::set<std::string>& tests) const;

    bool operator==(const Alphabet&) const = default;

private:
    struct Unchecked {};
    Alphabet(Unchecked, std::vector<std::string> actions, std::vector<std::string> tests)
        : actions_(std::move(actions)), tests_(std::move(tests)) {}

    std::vector<std::string> actions_;
    std::vector<std::string> tests_;
};

enum class Kind { zero, one, top, act, test, neg, plus, dot, star };

/**
 * Immutable TopKAT term. Copies share structure.
 *
 * Negation is only constructible over test-only terms; `Term::neg` throws
 * SortError otherwise.
 */
class Term {
public:
    static Term zero();
    static Term one();
    static Term top();
    static Term act(std::string name);
    static Term test(std::string name);
    static Term neg(Term t);
    static Term plus(Term lhs, Term rhs);
    static Term dot(Term lhs, Term rhs);
    static Term star(Term t);

    Kind kind() const noexcept;
    /// Identifier of an act or test leaf; empty otherwise.
    const std::string& name() const noexcept;
    /// Operand of neg/star, left operand of plus/dot.
    const Term& lhs() const;
    const Term& rhs() const;

    std::size_t hash() const noexcept;
    /// Number of nodes.
    std::size_t size() const noexcept;

    /// Structural comparison; a total order on terms.
    friend std::strong_ordering operator<=>(const Term& a, const Term& b);
    friend bool operator==(const Term& a, const Term& b);

private:
    struct Node;
    explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    static Term make(Kind kind, std::string name, std::optional<Term> lhs, std::optional<Term> rhs);

    std::shared_ptr<const Node> node_;
};

struct TermHash {
    std::size_t operator()(const Term& t) const noexcept { return t.hash(); }
};

/// Sum of the given terms, left-associated; 0 when empty.
Term sum(const std::vector<Term>& terms);
/// Sequence of the given terms, left-associated; 1 when empty.
Term seq(const std::vector<Term>& terms);

/// True iff t is built from 0, 1, tests and the Boolean connectives only.
bool is_test_term(const Term& t);
bool contains_top(const Term& t);
/// Flips every sequential composition; an involution.
Term reverse(const Term& t);

/// Identifiers of actions / tests occurring in t.
std::set<std::string> actions_of(const Term& t);
std::set<std::string> tests_of(const Term& t);

/// Throws InputError unless every identifier of t is declared with the matching sort.
void check_declared(const Term& t, const Alphabet& alphabet);

/**
 * Parses a term. Grammar, loosest binding first:
 *
 *     term    := seq ("+" seq)*
 *     seq     := star ((";" | ".")? star)*
 *     star    := atomexp "*"*
 *     atomexp := "0" | "1" | "T" | ident | "!" atomexp | "(" term ")"
 *
 * Both binary operators associate to the left.
 */
Term parse(std::string_view text, const Alphabet& alphabet);

/// Renders with the fewest parentheses that make `parse` return the same tree.
std::string render(const Term& t);

} // namespace topkat

#endif
