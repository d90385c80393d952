#include "support/generators.hpp"
#include "topkat/error.hpp"
#include "topkat/syntax.hpp"

#include <doctest.h>

using namespace topkat;

namespace {
const Alphabet pq_bc({"p", "q"}, {"b", "c"});
Term P() { return Term::act("p"); }
Term Q() { return Term::act("q"); }
Term B() { return Term::test("b"); }
Term C() { return Term::test("c"); }
} // namespace

TEST_CASE("parse builds the expected trees") {
    CHECK(parse("p (b + !c)* q", pq_bc) ==
          Term::dot(Term::dot(P(), Term::star(Term::plus(B(), Term::neg(C())))), Q()));
    CHECK(parse("1 + p p*", pq_bc) == Term::plus(Term::one(), Term::dot(P(), Term::star(P()))));
    CHECK(parse("p;q.b", pq_bc) == Term::dot(Term::dot(P(), Q()), B()));
    CHECK(parse("p + q + b", pq_bc) == Term::plus(Term::plus(P(), Q()), B()));
    CHECK(parse("T p T", pq_bc) == Term::dot(Term::dot(Term::top(), P()), Term::top()));
    CHECK(parse("!!b", pq_bc) == Term::neg(Term::neg(B())));
    CHECK(parse("p**", pq_bc) == Term::star(Term::star(P())));
    CHECK(parse("!b*", pq_bc) == Term::star(Term::neg(B())));
}

TEST_CASE("parse rejects malformed input") {
    CHECK_THROWS_AS(parse("!(p)", pq_bc), ParseError);
    CHECK_THROWS_WITH_AS(parse("!(p)", pq_bc), doctest::Contains("negation of non-test"), ParseError);
    CHECK_THROWS_AS(parse("!T", pq_bc), ParseError);
    CHECK_THROWS_AS(parse("p +", pq_bc), ParseError);
    CHECK_THROWS_AS(parse("(p", pq_bc), ParseError);
    CHECK_THROWS_AS(parse("p)", pq_bc), ParseError);
    CHECK_THROWS_AS(parse("", pq_bc), ParseError);
    CHECK_THROWS_AS(parse("p # q", pq_bc), ParseError);
    CHECK_THROWS_AS(parse("r", pq_bc), InputError);
    CHECK_THROWS_WITH_AS(parse("p + 2", pq_bc), doctest::Contains("position 4"), ParseError);
}

TEST_CASE("negation is restricted to tests") {
    CHECK_THROWS_AS(Term::neg(P()), SortError);
    CHECK_THROWS_AS(Term::neg(Term::top()), SortError);
    CHECK_NOTHROW(Term::neg(Term::plus(B(), Term::dot(C(), Term::zero()))));
    CHECK(is_test_term(Term::neg(B())));
    CHECK_FALSE(is_test_term(Term::star(B())));
    CHECK_FALSE(is_test_term(P()));
}

TEST_CASE("alphabet validation") {
    CHECK_THROWS_AS(Alphabet({"T"}, {}), InputError);
    CHECK_THROWS_AS(Alphabet({"__top__"}, {}), InputError);
    CHECK_THROWS_AS(Alphabet({"p", "p"}, {}), InputError);
    CHECK_THROWS_AS(Alphabet({"p"}, {"p"}), InputError);
    CHECK_THROWS_AS(Alphabet({"1p"}, {}), InputError);
    CHECK_THROWS_AS(Alphabet({""}, {}), InputError);
    Alphabet ext = pq_bc.with_top_action();
    CHECK(ext.actions() == std::vector<std::string>{"p", "q", "__top__"});
    CHECK(ext.has_top_action());
    CHECK_FALSE(pq_bc.has_top_action());
    CHECK(pq_bc.restrict_to({"q"}, {"c"}) == Alphabet({"q"}, {"c"}));
    CHECK(pq_bc.test_index("c") == 1);
}

TEST_CASE("render") {
    CHECK(render(Term::zero()) == "0");
    CHECK(render(Term::star(Term::plus(P(), Q()))) == "(p + q)*");
    CHECK(render(Term::top()) == "T");
    CHECK(render(Term::dot(P(), Term::dot(Q(), B()))) == "p (q b)");
    CHECK(render(Term::dot(Term::dot(P(), Q()), B())) == "p q b");
    CHECK(render(Term::plus(P(), Term::plus(Q(), B()))) == "p + (q + b)");
    CHECK(render(Term::neg(Term::plus(B(), C()))) == "!(b + c)");
    CHECK(render(Term::star(Term::star(P()))) == "p**");
}

TEST_CASE("contains_top") {
    CHECK(contains_top(parse("p T p", pq_bc)));
    CHECK_FALSE(contains_top(parse("p b", pq_bc)));
    CHECK(contains_top(Term::top()));
}

TEST_CASE("reverse") {
    CHECK(reverse(Term::dot(P(), Q())) == Term::dot(Q(), P()));
    CHECK(reverse(Term::dot(Term::top(), P())) == Term::dot(P(), Term::top()));
    CHECK(reverse(parse("(p q)* + b", pq_bc)) == parse("(q p)* + b", pq_bc));
}

TEST_CASE("check_declared and collected primitives") {
    Term t = parse("p b q* !c", pq_bc);
    CHECK(actions_of(t) == std::set<std::string>{"p", "q"});
    CHECK(tests_of(t) == std::set<std::string>{"b", "c"});
    CHECK_NOTHROW(check_declared(t, pq_bc));
    CHECK_THROWS_AS(check_declared(t, Alphabet({"p"}, {"b", "c"})), InputError);
    CHECK_THROWS_AS(check_declared(Term::act("b"), pq_bc), InputError);
}

TEST_CASE("sum and seq") {
    CHECK(sum({}) == Term::zero());
    CHECK(seq({}) == Term::one());
    CHECK(sum({P(), Q(), B()}) == Term::plus(Term::plus(P(), Q()), B()));
    CHECK(seq({P(), Q()}) == Term::dot(P(), Q()));
}

TEST_CASE("structural order is total and consistent with hashing") {
    Term a = parse("p + q", pq_bc);
    Term b = parse("p + q", pq_bc);
    CHECK(a == b);
    CHECK(a.hash() == b.hash());
    CHECK((a <=> parse("q + p", pq_bc)) != std::strong_ordering::equal);
    CHECK(a.size() == 3);
}

TEST_CASE("property: parse inverts render") {
    testing::Gen gen(101);
    for (int i = 0; i < 500; ++i) {
        Alphabet a = gen.alphabet();
        Term t = gen.term(a, 5, true);
        INFO(render(t));
        CHECK(parse(render(t), a) == t);
    }
}

TEST_CASE("property: reverse is an involution preserving contains_top") {
    testing::Gen gen(102);
    for (int i = 0; i < 500; ++i) {
        Alphabet a = gen.alphabet();
        Term t = gen.term(a, 5, true);
        CHECK(reverse(reverse(t)) == t);
        CHECK(contains_top(reverse(t)) == contains_top(t));
    }
}
