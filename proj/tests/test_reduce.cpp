#include "support/generators.hpp"
#include "topkat/error.hpp"
#include "topkat/reduce.hpp"

#include <doctest.h>

using namespace topkat;

namespace {
const Alphabet p_only({"p"}, {});
const Alphabet pq_b({"p", "q"}, {"b"});
Term t(const std::string& text, const Alphabet& a = pq_b) { return parse(text, a); }
} // namespace

TEST_CASE("reduce") {
    CHECK(render(reduce(Term::top(), p_only)) == "(p + __top__)*");
    CHECK(render(top_expansion(pq_b)) == "(p + q + __top__)*");
    CHECK(reduce(t("p b"), pq_b) == t("p b"));
    CHECK(render(reduce(t("T p T", p_only), p_only)) == "(p + __top__)* p (p + __top__)*");
    CHECK_FALSE(contains_top(reduce(t("T* + p T b"), pq_b)));
}

TEST_CASE("embed_back") {
    CHECK(embed_back(Term::act(std::string(top_action_name))) == Term::top());
    CHECK(embed_back(Term::act("p")) == Term::act("p"));
    Term back = embed_back(reduce(t("p T"), pq_b));
    CHECK(back != t("p T"));
    CHECK(render(back) == "p (p + q + T)*");
    CHECK(topkat_equivalent(back, t("p T"), pq_b).holds());
}

TEST_CASE("topkat decisions") {
    CHECK(topkat_equivalent(Term::top(), embed_back(reduce(Term::top(), pq_b)), pq_b).holds());
    CHECK(topkat_leq(t("p"), Term::top(), pq_b).holds());
    CHECK(topkat_leq(t("T p"), t("T (p + q)"), pq_b).holds());
    CHECK(topkat_leq(t("p T p T", p_only), t("p T", p_only), p_only).holds());

    Verdict v = topkat_leq(t("p T", p_only), t("p T p T", p_only), p_only);
    REQUIRE_FALSE(v.holds());
    const ExtendedAlphabet ext(p_only);
    CHECK(render(*v.witness, ext.alphabet()) == "[] p []");
    CHECK(member(*v.witness, reduce(t("p T", p_only), p_only), ext.alphabet()));
    CHECK_FALSE(member(*v.witness, reduce(t("p T p T", p_only), p_only), ext.alphabet()));

    Verdict w = topkat_leq(t("p", p_only), t("p T p", p_only), p_only);
    CHECK_FALSE(w.holds());
}

TEST_CASE("topkat witnesses are stated over the full extended alphabet") {
    const Alphabet big({"p", "q"}, {"b", "c"});
    Verdict v = topkat_equivalent(t("q", big), t("q c", big), big);
    REQUIRE_FALSE(v.holds());
    const ExtendedAlphabet ext(big);
    CHECK(render(*v.witness, ext.alphabet()) == "[!b&!c] q [!b&!c]");
    CHECK(member(*v.witness, t("q", big), ext.alphabet()));
}

TEST_CASE("prune") {
    const Alphabet big({"p", "q", "r"}, {"b", "c", "d"});
    CHECK(prune(big, t("r d", big), t("p", big)) == Alphabet({"p", "r"}, {"d"}));
    CHECK(prune(big, t("1", big), t("0", big)) == Alphabet({}, {}));
}

TEST_CASE("property: largest element") {
    testing::Gen gen(401);
    for (int i = 0; i < 100; ++i) {
        Alphabet a = gen.alphabet();
        ExtendedAlphabet ext(a);
        Term x = gen.term(ext.alphabet(), 5);
        CHECK(leq(x, reduce(Term::top(), a), ext.alphabet()).holds());
        CHECK(topkat_leq(gen.term(a, 5, true), Term::top(), a).holds());
    }
}

TEST_CASE("property: reduction round trip") {
    testing::Gen gen(402);
    for (int i = 0; i < 200; ++i) {
        Alphabet a = gen.alphabet();
        Term x = gen.term(a, 5, true);
        CHECK(topkat_equivalent(embed_back(reduce(x, a)), x, a).holds());
        if (!contains_top(x))
            CHECK(embed_back(reduce(x, a)) == x);
    }
}

TEST_CASE("property: conservativity on T-free terms") {
    testing::Gen gen(403);
    for (int i = 0; i < 200; ++i) {
        Alphabet a = gen.alphabet();
        Term x = gen.term(a, 4);
        Term y = gen.coin(40) ? gen.rewrite(x) : gen.term(a, 4);
        Verdict k = equivalent(x, y, a);
        Verdict tk = topkat_equivalent(x, y, a);
        REQUIRE(k.holds() == tk.holds());
        if (!k.holds()) {
            CHECK(k.side == tk.side);
            ExtendedAlphabet ext(a);
            CHECK(translate(*k.witness, a, ext.alphabet()) == *tk.witness);
        }
    }
}

TEST_CASE("property: pruning does not change verdicts") {
    testing::Gen gen(404);
    const Alphabet big({"p", "q", "r"}, {"b", "c", "d"});
    for (int i = 0; i < 100; ++i) {
        Alphabet small = gen.alphabet();
        Term x = gen.term(small, 4, true);
        Term y = gen.coin(40) ? gen.rewrite(x) : gen.term(small, 4, true);
        Verdict v1 = topkat_equivalent(x, y, small);
        Verdict v2 = topkat_equivalent(x, y, big);
        REQUIRE(v1.holds() == v2.holds());
        if (!v1.holds()) {
            ExtendedAlphabet e1(small), e2(big);
            CHECK(translate(*v1.witness, e1.alphabet(), e2.alphabet()) == *v2.witness);
        }
    }
}
