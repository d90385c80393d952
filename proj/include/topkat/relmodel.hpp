#ifndef TOPKAT_RELMODEL_HPP
#define TOPKAT_RELMODEL_HPP

#include "topkat/syntax.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace topkat {

/// A binary relation on {0, ..., n-1}, stored as a dense bit matrix.
class Relation {
public:
    explicit Relation(std::size_t n = 0);

    static Relation identity(std::size_t n);
    static Relation complete(std::size_t n);
    static Relation from_pairs(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& pairs);

    std::size_t carrier_size() const noexcept { return n_; }
    bool contains(std::size_t i, std::size_t j) const;
    void insert(std::size_t i, std::size_t j);
    std::vector<std::pair<std::size_t, std::size_t>> pairs() const;
    bool empty() const;

    Relation operator|(const Relation& other) const;
    Relation operator-(const Relation& other) const;
    /// Relational composition: (x, z) with (x, y) in *this and (y, z) in other.
    Relation then(const Relation& other) const;
    /// Reflexive-transitive closure.
    Relation closure() const;
    bool subset_of(const Relation& other) const;

    bool operator==(const Relation&) const = default;

private:
    std::size_t words() const noexcept { return (n_ + 63) / 64; }
    std::uint64_t* row(std::size_t i) { return bits_.data() + i * words(); }
    const std::uint64_t* row(std::size_t i) const { return bits_.data() + i * words(); }

    std::size_t n_ = 0;
    std::vector<std::uint64_t> bits_;
};

using PointSet = std::set<std::size_t>;

PointSet dom(const Relation& r);
PointSet cod(const Relation& r);
Relation converse(const Relation& r);

/// Relations for every primitive of an alphabet over a common finite carrier.
/// Test relations are subsets of the identity.
struct RelInterpretation {
    std::size_t carrier_size = 0;
    std::map<std::string, Relation> actions;
    std::map<std::string, Relation> tests;

    /// Empty relations for every primitive of the alphabet.
    static RelInterpretation empty(std::size_t n, const Alphabet& alphabet);

    /// Throws InputError if sizes disagree or a test leaves the identity.
    void validate() const;
    bool operator==(const RelInterpretation&) const = default;
};

/// Compositional evaluation. T is the complete relation on the carrier.
Relation eval(const Term& t, const RelInterpretation& interp);

/// Both sides of the two domain/codomain encodings by T, evaluated in one model.
struct EncodingReport {
    bool top_right_geq;  // R1 T >= R2 T
    bool dom_geq;        // dom(R1) >= dom(R2)
    bool top_left_geq;   // T R1 >= T R2
    bool cod_geq;        // cod(R1) >= cod(R2)

    bool domain_encoding_holds() const noexcept { return top_right_geq == dom_geq; }
    bool codomain_encoding_holds() const noexcept { return top_left_geq == cod_geq; }
};

EncodingReport check_encoding(const RelInterpretation& interp, const Term& r1, const Term& r2);

enum class ComparisonKind { equality, leq, dom_geq, cod_geq };

/// Parses "equality", "leq", "dom-geq"/"dom_geq", "cod-geq"/"cod_geq".
ComparisonKind parse_comparison_kind(const std::string& text);
std::string to_string(ComparisonKind kind);

/// Default ceiling on the number of interpretations visited exhaustively.
inline constexpr std::uint64_t default_enumeration_ceiling = 10'000'000;

struct SearchBudget {
    bool exhaustive = true;
    std::size_t samples = 0;
    std::uint64_t seed = 0;
    std::uint64_t ceiling = default_enumeration_ceiling;

    static SearchBudget enumerate(std::uint64_t ceiling = default_enumeration_ceiling) {
        return {true, 0, 0, ceiling};
    }
    static SearchBudget random(std::size_t samples, std::uint64_t seed) { return {false, samples, seed, 0}; }
};

/// Whether `interp` violates "t1 KIND t2" (t1 = t2, t1 <= t2, dom(t1) >= dom(t2), cod(t1) >= cod(t2)).
bool violates(ComparisonKind kind, const Term& t1, const Term& t2, const RelInterpretation& interp);

/// Human-readable account of why interp violates the comparison.
std::string describe_violation(ComparisonKind kind, const Term& t1, const Term& t2, const RelInterpretation& interp);

struct RelCountermodel {
    RelInterpretation interp;
    std::string report;
};

/**
 * Looks for a finite relational model refuting "t1 KIND t2". Sound only:
 * absence of a countermodel proves nothing beyond the searched space.
 *
 * Exhaustive mode walks carrier sizes 1..max_n; within a size, primitives
 * occurring in the terms are enumerated as an odometer in alphabet order
 * (actions before tests, last primitive fastest), each relation by its
 * integer encoding where bit i*n+j stands for the pair (i, j). Primitives
 * not occurring in the terms stay empty. Random mode draws `samples`
 * interpretations of size max_n from a seeded mt19937_64.
 */
std::optional<RelCountermodel> search_countermodel(ComparisonKind kind, const Term& t1, const Term& t2,
                                                   const Alphabet& alphabet, std::size_t max_n,
                                                   const SearchBudget& budget);

/// T lhs <= T rhs, i.e. cod(lhs) is contained in cod(rhs).
struct TopInequality {
    Term lhs = Term::zero();
    Term rhs = Term::zero();
};

bool holds(const TopInequality& ineq, const RelInterpretation& interp);

/// Searches for a model satisfying every hypothesis and violating the goal.
/// A refuter only; a missing result does not establish the implication.
std::optional<RelCountermodel> falsify_implication(const std::vector<TopInequality>& hyps, const TopInequality& goal,
                                                   const Alphabet& alphabet, std::size_t max_n,
                                                   const SearchBudget& budget);

/// Number of interpretations exhaustive search would visit, saturating.
std::uint64_t enumeration_count(std::size_t actions, std::size_t tests, std::size_t max_n);

} // namespace topkat

#endif
