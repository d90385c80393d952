#include "support/generators.hpp"
#include "topkat/domain.hpp"
#include "topkat/error.hpp"
#include "topkat/reduce.hpp"

#include <doctest.h>

using namespace topkat;

namespace {
const Alphabet p_b({"p"}, {"b"});
const Alphabet pq_b({"p", "q"}, {"b"});
Term t(const std::string& text, const Alphabet& a = pq_b) { return parse(text, a); }

bool in(const PointSet& s, std::size_t x) { return s.count(x) == 1; }

// Every action pair extends its source by one step of that action; tests read the last atom.
void check_prefix_shape(const ExtractedModel& m, const Alphabet& base) {
    const Alphabet ext = base.with_top_action();
    for (const auto& [name, rel] : m.interp.actions) {
        auto idx = ext.action_index(name);
        REQUIRE(idx.has_value());
        for (auto [x, y] : rel.pairs()) {
            const GuardedString& sx = m.carrier[x];
            const GuardedString& sy = m.carrier[y];
            REQUIRE(sy.length() == sx.length() + 1);
            CHECK(sy.prefix(sx.length()) == sx);
            CHECK(sy.acts.back() == *idx);
        }
    }
    for (const auto& [name, rel] : m.interp.tests) {
        std::size_t bit = *ext.test_index(name);
        for (std::size_t x = 0; x < m.carrier.size(); ++x)
            CHECK(rel.contains(x, x) == m.carrier[x].last().value(bit));
    }
}
} // namespace

TEST_CASE("cod_geq examples") {
    CHECK(cod_geq(t("p", p_b), t("p b", p_b), p_b).provable());
    CHECK_FALSE(search_countermodel(ComparisonKind::cod_geq, t("p", p_b), t("p b", p_b), p_b, 2,
                                    SearchBudget::enumerate())
                    .has_value());

    ComparisonVerdict v = cod_geq(t("p b", p_b), t("p", p_b), p_b);
    REQUIRE_FALSE(v.provable());
    const auto& r = *v.refutation;
    const Alphabet ext = p_b.with_top_action();
    CHECK(r.witness.acts.back() == *ext.action_index("p"));
    CHECK_FALSE(r.witness.last().value(0));
    CHECK(r.model.carrier.size() == r.witness.length() + 1);
    CHECK(r.model.violating_point == r.witness.length());
    CHECK(r.model.carrier.back() == r.witness);
    for (std::size_t j = 0; j < r.model.carrier.size(); ++j)
        CHECK(r.model.carrier[j] == r.witness.prefix(j));
    CHECK(in(cod(eval(t("p", p_b), r.model.interp)), r.model.violating_point));
    CHECK_FALSE(in(cod(eval(t("p b", p_b), r.model.interp)), r.model.violating_point));
    check_prefix_shape(r.model, p_b);
}

TEST_CASE("T-containing comparisons are rejected") {
    CHECK_THROWS_AS(cod_geq(t("p T p", p_b), t("p", p_b), p_b), SortError);
    CHECK_THROWS_WITH_AS(cod_geq(t("p T p", p_b), t("p", p_b), p_b), doctest::Contains("complete"), SortError);
    CHECK_THROWS_AS(dom_geq(t("p", p_b), Term::top(), p_b), SortError);
}

TEST_CASE("dom_geq examples") {
    CHECK(dom_geq(t("p", p_b), t("b p", p_b), p_b).provable());
    CHECK_FALSE(search_countermodel(ComparisonKind::dom_geq, t("p", p_b), t("b p", p_b), p_b, 2,
                                    SearchBudget::enumerate())
                    .has_value());
    ComparisonVerdict v = dom_geq(t("b p", p_b), t("p", p_b), p_b);
    REQUIRE_FALSE(v.provable());
    const auto& r = *v.refutation;
    CHECK(r.model.violating_point == 0);
    CHECK(r.model.carrier.front() == r.witness);
    CHECK(r.model.carrier.size() == r.witness.length() + 1);
    for (std::size_t j = 0; j < r.model.carrier.size(); ++j)
        CHECK(r.model.carrier[j] == r.witness.suffix(j));
    CHECK(in(dom(eval(t("p", p_b), r.model.interp)), 0));
    CHECK_FALSE(in(dom(eval(t("b p", p_b), r.model.interp)), 0));
}

TEST_CASE("domain comparison is an inequality, not an equation") {
    // dom(p + q) contains dom(p) everywhere, yet (p + q) T = p T fails
    Term t1 = t("p + q");
    Term t2 = t("p");
    CHECK(dom_geq(t1, t2, pq_b).provable());
    CHECK_FALSE(dom_geq(t2, t1, pq_b).provable());
    CHECK(topkat_leq(Term::dot(t2, Term::top()), Term::dot(t1, Term::top()), pq_b).holds());
    CHECK_FALSE(topkat_equivalent(Term::dot(t1, Term::top()), Term::dot(t2, Term::top()), pq_b).holds());
}

TEST_CASE("countermodel builders check their preconditions") {
    const Alphabet ext = p_b.with_top_action();
    GuardedString not_in_t2 = parse_guarded_string("[b]", ext);
    CHECK_THROWS_AS(build_cod_countermodel(not_in_t2, t("p b", p_b), t("p", p_b), p_b), InputError);
    GuardedString in_both = parse_guarded_string("[!b] p [b]", ext);
    CHECK_THROWS_AS(build_cod_countermodel(in_both, t("p b", p_b), t("p", p_b), p_b), InputError);
    ExtractedModel m = build_cod_countermodel(parse_guarded_string("[b] __top__ [b] p [!b]", ext), t("p b", p_b),
                                              t("p", p_b), p_b);
    CHECK(m.carrier.size() == 3);
    CHECK(render(m.carrier[1], ext) == "[b] __top__ [b]");
    check_prefix_shape(m, p_b);
}

TEST_CASE("prefix model image") {
    const Alphabet k({"p"}, {});
    auto image = prefix_model_image(t("p", k), k, 1);
    // sources: the single atom; targets: [] p []
    REQUIRE(image.size() == 1);
    CHECK(render(image[0].second, k.with_top_action()) == "[] p []");
    Language c = prefix_model_codomain(t("p", k), k, 2);
    CHECK(c == lang_bounded(reduce(t("T p", k), k), k.with_top_action(), 2));
}

TEST_CASE("property: cod_geq verdicts are relationally sound") {
    testing::Gen gen(601);
    int refuted = 0;
    for (int i = 0; i < 40; ++i) {
        Alphabet a = gen.alphabet(2, 1);
        Term x = gen.term(a, 3);
        Term y = gen.term(a, 3);
        ComparisonVerdict v = cod_geq(x, y, a);
        if (v.provable()) {
            auto found = search_countermodel(ComparisonKind::cod_geq, x, y, a, 2, SearchBudget::enumerate());
            CHECK_FALSE(found.has_value());
        } else {
            ++refuted;
            const auto& m = v.refutation->model;
            CHECK(violates(ComparisonKind::cod_geq, x, y, m.interp));
            CHECK(in(cod(eval(y, m.interp)), m.violating_point));
            CHECK_FALSE(in(cod(eval(x, m.interp)), m.violating_point));
            check_prefix_shape(m, a);
        }
    }
    CHECK(refuted > 0);
}

TEST_CASE("property: dom_geq mirrors cod_geq on reversed terms") {
    testing::Gen gen(602);
    for (int i = 0; i < 60; ++i) {
        Alphabet a = gen.alphabet();
        Term x = gen.term(a, 4);
        Term y = gen.term(a, 4);
        ComparisonVerdict d = dom_geq(x, y, a);
        ComparisonVerdict c = cod_geq(reverse(x), reverse(y), a);
        REQUIRE(d.provable() == c.provable());
        if (!d.provable()) {
            const auto& m = d.refutation->model;
            CHECK(in(dom(eval(y, m.interp)), m.violating_point));
            CHECK_FALSE(in(dom(eval(x, m.interp)), m.violating_point));
        }
    }
}

TEST_CASE("property: bounded prefix model codomain") {
    testing::Gen gen(603);
    for (int i = 0; i < 15; ++i) {
        Alphabet a = gen.alphabet(1, 1);
        Term x = gen.term(a, 3);
        ExtendedAlphabet ext(a);
        for (std::size_t n = 0; n <= 2; ++n)
            CHECK(prefix_model_codomain(x, a, n) ==
                  lang_bounded(reduce(Term::dot(Term::top(), x), a), ext.alphabet(), n));
    }
}
