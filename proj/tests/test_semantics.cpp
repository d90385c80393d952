#include "support/generators.hpp"
#include "topkat/error.hpp"
#include "topkat/semantics.hpp"

#include <doctest.h>

using namespace topkat;

namespace {
const Alphabet p_b({"p"}, {"b"});
const Alphabet pq_bc({"p", "q"}, {"b", "c"});

GuardedString gs(const std::string& text, const Alphabet& a) { return parse_guarded_string(text, a); }
} // namespace

TEST_CASE("all_atoms") {
    CHECK(all_atoms(Alphabet({"p"}, {})).size() == 1);
    auto one = all_atoms(p_b);
    REQUIRE(one.size() == 2);
    CHECK(render_atom(one[0], p_b) == "[!b]");
    CHECK(render_atom(one[1], p_b) == "[b]");
    auto two = all_atoms(pq_bc);
    REQUIRE(two.size() == 4);
    std::vector<std::string> names;
    for (Atom a : two)
        names.push_back(render_atom(a, pq_bc));
    CHECK(names == std::vector<std::string>{"[!b&!c]", "[!b&c]", "[b&!c]", "[b&c]"});
    CHECK(std::is_sorted(two.begin(), two.end()));
    CHECK_THROWS_AS(all_atoms(pq_bc, 1), ResourceError);
    CHECK_THROWS_WITH_AS(all_atoms(pq_bc, 1), doctest::Contains("1"), ResourceError);
}

TEST_CASE("satisfies") {
    Atom b_notc{0b01};
    CHECK(satisfies(b_notc, parse("b !c", pq_bc), pq_bc));
    for (Atom a : all_atoms(pq_bc)) {
        CHECK(satisfies(a, parse("b + !b", pq_bc), pq_bc));
        CHECK_FALSE(satisfies(a, Term::zero(), pq_bc));
    }
    CHECK_THROWS_AS(satisfies(b_notc, parse("p", pq_bc), pq_bc), SortError);
    CHECK_THROWS_AS(satisfies(b_notc, Term::top(), pq_bc), SortError);
}

TEST_CASE("fuse") {
    CHECK(fuse(gs("[b]", p_b), gs("[b] p [!b]", p_b)) == gs("[b] p [!b]", p_b));
    CHECK_FALSE(fuse(gs("[b] p [!b]", p_b), gs("[b] p [b]", p_b)).has_value());
    CHECK(fuse(gs("[b] p [!b]", p_b), gs("[!b] p [b]", p_b)) == gs("[b] p [!b] p [b]", p_b));
    CHECK(fuse(gs("[b] p [!b]", p_b), gs("[!b]", p_b)) == gs("[b] p [!b]", p_b));
}

TEST_CASE("guarded string text form") {
    const Alphabet none({"p"}, {});
    CHECK(render(GuardedString{}, none) == "[]");
    CHECK(render(gs("[b&!c] p [b&c]", pq_bc), pq_bc) == "[b&!c] p [b&c]");
    CHECK_THROWS_AS(gs("[b] p [b&c]", pq_bc), InputError);
    CHECK_THROWS_AS(gs("[b&!c] r [b&c]", pq_bc), InputError);
    CHECK(gs("[c&b]", pq_bc) == gs("[b&c]", pq_bc));
    CHECK_THROWS_AS(gs("[b&b&c]", pq_bc), InputError);
    CHECK(gs("[b&c] q [!b&!c]", pq_bc).reversed() == gs("[!b&!c] q [b&c]", pq_bc));
    auto s = gs("[b&c] q [!b&!c] p [b&!c]", pq_bc);
    CHECK(s.prefix(1) == gs("[b&c] q [!b&!c]", pq_bc));
    CHECK(s.suffix(1) == gs("[!b&!c] p [b&!c]", pq_bc));
    CHECK(s.length() == 2);
}

TEST_CASE("guarded string order: length first, then atoms and actions") {
    CHECK(gs("[b&c]", pq_bc) < gs("[!b&!c] p [!b&!c]", pq_bc));
    CHECK(gs("[!b&c]", pq_bc) < gs("[b&!c]", pq_bc));
    CHECK(gs("[!b&!c] p [b&c]", pq_bc) < gs("[!b&!c] q [!b&!c]", pq_bc));
}

TEST_CASE("translate") {
    const Alphabet small({"q"}, {"c"});
    auto s = gs("[c] q [!c]", small);
    CHECK(translate(s, small, pq_bc) == gs("[!b&c] q [!b&!c]", pq_bc));
    CHECK_THROWS_AS(translate(gs("[b&c] p [b&c]", pq_bc), pq_bc, small), InputError);
}

TEST_CASE("lang_bounded examples") {
    CHECK(lang_bounded(Term::one(), p_b, 2) == Language{gs("[!b]", p_b), gs("[b]", p_b)});
    Language p = lang_bounded(Term::act("p"), p_b, 1);
    CHECK(p.size() == 4);
    for (const auto& s : p)
        CHECK(s.length() == 1);
    const Alphabet k({"p"}, {});
    CHECK(lang_bounded(Term::star(Term::act("p")), k, 2) ==
          Language{gs("[]", k), gs("[] p []", k), gs("[] p [] p []", k)});
    CHECK(lang_bounded(Term::act("p"), p_b, 0).empty());
    CHECK_THROWS_AS(lang_bounded(Term::top(), p_b, 1), SortError);
}

TEST_CASE("all_guarded_strings counts") {
    // |At| = 2, |K| = 2: 2 + 2*2*2 + 2*2*2*2*2
    CHECK(all_guarded_strings(Alphabet({"p", "q"}, {"b"}), 2).size() == 2 + 8 + 32);
}

TEST_CASE("property: bounded languages grow with the bound") {
    testing::Gen gen(201);
    for (int i = 0; i < 150; ++i) {
        Alphabet a = gen.alphabet();
        Term t = gen.term(a, 4);
        for (std::size_t n = 0; n < 3; ++n) {
            Language small = lang_bounded(t, a, n);
            Language big = lang_bounded(t, a, n + 1);
            CHECK(std::includes(big.begin(), big.end(), small.begin(), small.end()));
            for (const auto& s : small)
                CHECK(s.length() <= n);
        }
    }
}

TEST_CASE("property: dot and star agree with fusion powers") {
    testing::Gen gen(202);
    for (int i = 0; i < 100; ++i) {
        Alphabet a = gen.alphabet();
        Term t1 = gen.term(a, 3);
        Term t2 = gen.term(a, 3);
        const std::size_t n = 3;
        CHECK(lang_bounded(Term::dot(t1, t2), a, n) ==
              fuse_languages(lang_bounded(t1, a, n), lang_bounded(t2, a, n), n));

        Language base = lang_bounded(t1, a, n);
        Language power = lang_bounded(Term::one(), a, n);
        Language acc = power;
        for (std::size_t k = 1; k <= n + 1; ++k) {
            power = fuse_languages(power, base, n);
            acc.insert(power.begin(), power.end());
        }
        CHECK(lang_bounded(Term::star(t1), a, n) == acc);
    }
}

TEST_CASE("property: satisfies respects Boolean laws") {
    testing::Gen gen(203);
    for (int i = 0; i < 300; ++i) {
        Alphabet a = gen.alphabet(1, 2);
        Term x = gen.test_term(a, 3);
        Term y = gen.test_term(a, 3);
        Term z = gen.test_term(a, 3);
        for (Atom at : all_atoms(a)) {
            CHECK(satisfies(at, Term::neg(Term::plus(x, y)), a) ==
                  satisfies(at, Term::dot(Term::neg(x), Term::neg(y)), a));
            CHECK(satisfies(at, Term::neg(Term::dot(x, y)), a) ==
                  satisfies(at, Term::plus(Term::neg(x), Term::neg(y)), a));
            CHECK(satisfies(at, Term::dot(x, Term::plus(y, z)), a) ==
                  satisfies(at, Term::plus(Term::dot(x, y), Term::dot(x, z)), a));
            CHECK(satisfies(at, Term::plus(x, Term::dot(y, z)), a) ==
                  satisfies(at, Term::dot(Term::plus(x, y), Term::plus(x, z)), a));
        }
    }
}

TEST_CASE("property: fusion is associative where defined") {
    testing::Gen gen(204);
    Language all = all_guarded_strings(p_b, 1);
    std::vector<GuardedString> v(all.begin(), all.end());
    for (int i = 0; i < 500; ++i) {
        const auto& x = v[gen.below(v.size())];
        const auto& y = v[gen.below(v.size())];
        const auto& z = v[gen.below(v.size())];
        auto xy = fuse(x, y);
        auto yz = fuse(y, z);
        std::optional<GuardedString> l = xy ? fuse(*xy, z) : std::nullopt;
        std::optional<GuardedString> r = yz ? fuse(x, *yz) : std::nullopt;
        CHECK(l == r);
    }
}
