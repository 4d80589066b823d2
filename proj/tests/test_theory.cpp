#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "realchrom/theory.hpp"

using namespace realchrom;

namespace {

Monomial W(const std::string& s) { return Monomial::parse(s); }

const TheoryId bpr{TheoryKind::Bpr, 0};
const TheoryId bprn1{TheoryKind::Bprn, 1};
const TheoryId bprn2{TheoryKind::Bprn, 2};
const TheoryId tate1{TheoryKind::Tate, 1};
const TheoryId bc1{TheoryKind::BorelCoh, 1};
const TheoryId bh1{TheoryKind::BorelHom, 1};
const TheoryId geo1{TheoryKind::Geometric, 1};

}  // namespace

TEST_CASE("theory names round-trip") {
    for (auto kind : {TheoryKind::Bpr, TheoryKind::Bprn, TheoryKind::Tate, TheoryKind::BorelCoh,
                      TheoryKind::BorelHom, TheoryKind::Geometric}) {
        TheoryId th{kind, 2};
        auto back = TheoryId::parse(th.name(), 2);
        REQUIRE(back.has_value());
        CHECK(back->kind == kind);
        CHECK(back->n == 2);
    }
    CHECK(!TheoryId::parse("borel", 1).has_value());
    CHECK(!TheoryId::parse("", 1).has_value());
    CHECK(!TheoryId::parse("bprn", -1).has_value());
    CHECK(TheoryId{TheoryKind::Bprn, 2}.sigmaPeriod() == 8);
    CHECK(TheoryId{TheoryKind::Bpr, 5}.supportCap() == -1);
    CHECK(TheoryId{TheoryKind::Tate, 3}.supportCap() == 3);
}

TEST_CASE("normal form: pinned reductions") {
    // lone v0 splits off a 2
    auto r = normalForm(bpr, W("v0"));
    CHECK(!r.zero);
    CHECK(r.valuation == 1);
    CHECK(r.basis == Monomial::unit());

    // the Euler class kills high filtration: t = 2^{min+1}-1 annihilates
    CHECK(normalForm(bpr, W("v1 a^3")).zero);
    CHECK(normalForm(bpr, W("v1 a^2")).zero == false);
    CHECK(normalForm(bpr, W("v2 a^7")).zero);
    CHECK(!normalForm(bpr, W("v2 a^6")).zero);

    // already in normal form
    r = normalForm(bpr, W("v1 v2 s^4"));
    CHECK(!r.zero);
    CHECK(r.valuation == 0);
    CHECK(r.basis == W("v1 v2 s^4"));

    // one pair strips, the leftover carrier stays because 4 does not divide -2
    r = normalForm(bpr, W("v0^2 v1^2 s^-2"));
    CHECK(r.valuation == 1);
    CHECK(r.basis == W("v0 v1^2 s^-2"));

    // carrier with a divisible sigma-power strips completely
    r = normalForm(bpr, W("v0 v1^2 s^-4"));
    CHECK(r.valuation == 1);
    CHECK(r.basis == W("v1^2 s^-4"));

    // torsion kill: a positive valuation meeting any a-power is zero
    CHECK(normalForm(bpr, W("v0 v1 a")).zero);
    CHECK(normalForm(bpr, W("v0^2 a^5")).zero);
}

TEST_CASE("normal form: membership pre-checks") {
    CHECK_THROWS_AS(normalForm(bprn1, W("v2")), NotInTheoryError);  // index above the cap
    CHECK_THROWS_AS(normalForm(bprn2, W("v3 s^-8")), NotInTheoryError);
    CHECK_THROWS_AS(normalForm(bpr, W("v1^-1")), NotInTheoryError);  // negative v-exponent
    CHECK_THROWS_AS(normalForm(bpr, W("a^-1")), NotInTheoryError);   // no negative filtration
    CHECK_THROWS_AS(normalForm(bpr, W("s^2")), NotInTheoryError);    // no bare sigma upstairs
    CHECK_THROWS_AS(normalForm(bprn1, W("s^2")), NotInTheoryError);  // positive sigma-power
    CHECK_THROWS_AS(normalForm(bprn1, W("s^-2")), NotInTheoryError);  // 4 must divide
    CHECK(!normalForm(bprn1, W("s^-4")).zero);

    // carrier words need even sigma-powers; positive-support words need
    // divisibility by the period of the smallest index
    CHECK_THROWS_AS(normalForm(bpr, W("v0 s^-3")), NotInTheoryError);
    CHECK_THROWS_AS(normalForm(bpr, W("v1 s^-3")), NotInTheoryError);
    CHECK(!normalForm(bpr, W("v1 s^-4")).zero);
    CHECK_THROWS_AS(normalForm(bpr, W("v2 s^4")), NotInTheoryError);  // 8 does not divide 4
    CHECK(!normalForm(bpr, W("v2 s^8")).zero);

    // the localized theories carry no v-generators at all
    CHECK_THROWS_AS(normalForm(tate1, W("v1 s^-4")), NotInTheoryError);
    CHECK_THROWS_AS(normalForm(geo1, W("v1 s^-4")), NotInTheoryError);
    CHECK_THROWS_AS(normalForm(tate1, W("s^-3")), NotInTheoryError);
    CHECK(!normalForm(tate1, W("s^-4 a^-5")).zero);
    CHECK(!normalForm(tate1, W("s^4 a^5")).zero);
    CHECK_THROWS_AS(normalForm(geo1, W("s^4")), NotInTheoryError);  // only negative powers
    CHECK(!normalForm(geo1, W("s^-4 a^-3")).zero);

    // Borel homology allows negative a-powers, Borel cohomology does not
    CHECK(!normalForm(bh1, W("a^-5")).zero);
    CHECK_THROWS_AS(normalForm(bc1, W("a^-5")), NotInTheoryError);
    CHECK_THROWS_AS(normalForm(bh1, W("s^-4")), NotInTheoryError);  // no bare sigma there
    CHECK(!normalForm(bc1, W("s^4")).zero);  // both signs downstairs
    CHECK(!normalForm(bc1, W("s^-4")).zero);
}

TEST_CASE("normal form: Borel cohomology glues the carrier") {
    auto r = normalForm(bc1, W("v0 s^-4"));
    CHECK(!r.zero);
    CHECK(r.valuation == 1);
    CHECK(r.basis == W("s^-4"));
    r = normalForm(bc1, W("v0 s^4"));
    CHECK(r.valuation == 1);
    CHECK(r.basis == W("s^4"));
    // not divisible by 4: the carrier stays
    r = normalForm(bc1, W("v0 s^-2"));
    CHECK(r.valuation == 0);
    CHECK(r.basis == W("v0 s^-2"));
    // the truncated theory never strips a lone carrier off a bare sigma-power
    r = normalForm(bprn1, W("v0 s^-4"));
    CHECK(r.valuation == 0);
    CHECK(r.basis == W("v0 s^-4"));
}

TEST_CASE("basis orders") {
    CHECK(basisOrder(bprn1, Monomial::unit()) == GenOrder::Free);
    CHECK(basisOrder(bprn1, W("v1 a")) == GenOrder::Two);
    CHECK(basisOrder(bprn1, W("v1^4 s^-4")) == GenOrder::Free);
    CHECK(basisOrder(bprn1, W("s^-4")) == GenOrder::Two);
    CHECK(basisOrder(bc1, W("s^-4")) == GenOrder::Free);   // glued: 2 s^-4 = v0 s^-4
    CHECK(basisOrder(bc1, W("s^-4 a")) == GenOrder::Two);
    CHECK(basisOrder(tate1, W("s^4 a^-9")) == GenOrder::Two);
    CHECK(basisOrder(geo1, W("s^-8 a^3")) == GenOrder::Two);
    CHECK(basisOrder(bh1, W("a^-5")) == GenOrder::Two);
    CHECK(basisOrder(bh1, W("a^5")) == GenOrder::Two);
    CHECK(basisOrder(bh1, Monomial::unit()) == GenOrder::Free);

    // non-basis words report nothing
    CHECK(!basisOrder(bpr, W("v0")).has_value());            // reduces with valuation
    CHECK(!basisOrder(bpr, W("v1 a^3")).has_value());        // zero
    CHECK(!basisOrder(bc1, W("v0 s^-4")).has_value());       // glued away
    CHECK(!basisOrder(bprn1, W("v2")).has_value());          // not in the theory
    CHECK(!basisOrder(bprn1, W("v0^2 v1 s^-2")).has_value());
}

namespace {

// Random formal words biased toward interesting strata of each theory.
Monomial randomTheoryWord(std::mt19937_64& rng, const TheoryId& th) {
    std::uniform_int_distribution<int> vcount(0, 3), idx(0, th.supportCap() < 0 ? 5 : th.supportCap());
    std::uniform_int_distribution<long long> vexp(1, 4), sexp(-20, 20), aexp(0, 12);
    Monomial w;
    const bool localized = th.kind == TheoryKind::Tate || th.kind == TheoryKind::Geometric;
    if (!localized) {
        const int nv = vcount(rng);
        for (int i = 0; i < nv; ++i) {
            Monomial f = Monomial::v(idx(rng), vexp(rng));
            w = w * f;
        }
    }
    long long s = sexp(rng);
    if (th.kind == TheoryKind::Tate) s = 4 * s;
    if (th.kind == TheoryKind::Geometric) s = -4 * (s < 0 ? -s : s);
    w.setSexp(s);
    long long t = aexp(rng);
    if (th.kind == TheoryKind::BorelHom && (rng() & 1)) t = -t;
    if (localized) t = t - 6;
    w.setAexp(t);
    return w;
}

}  // namespace

TEST_CASE("rewrite order does not matter") {
    std::mt19937_64 rng(31337);
    const TheoryId theories[] = {bpr, bprn1, bprn2, tate1, bc1, bh1, geo1};
    long long reduced = 0;
    for (int i = 0; i < 4000; ++i) {
        const TheoryId th = theories[i % 7];
        Monomial w = randomTheoryWord(rng, th);
        Reduction base;
        try {
            base = normalForm(th, w);
        } catch (const NotInTheoryError&) {
            // membership is a pre-check, independent of rule order
            for (int j = 0; j < 5; ++j)
                CHECK_THROWS_AS(normalFormShuffled(th, w, rng), NotInTheoryError);
            continue;
        }
        ++reduced;
        for (int j = 0; j < 20; ++j) {
            Reduction r = normalFormShuffled(th, w, rng);
            REQUIRE(r.zero == base.zero);
            if (!r.zero) {
                REQUIRE(r.valuation == base.valuation);
                REQUIRE(r.basis == base.basis);
            }
        }
    }
    CHECK(reduced > 500);  // the sampler must actually hit the theories
}

TEST_CASE("normal forms are idempotent and dimension-preserving") {
    std::mt19937_64 rng(777);
    const TheoryId theories[] = {bpr, bprn1, bprn2, tate1, bc1, bh1, geo1};
    for (int i = 0; i < 6000; ++i) {
        const TheoryId th = theories[i % 7];
        Monomial w = randomTheoryWord(rng, th);
        Reduction r;
        try {
            r = normalForm(th, w);
        } catch (const NotInTheoryError&) {
            continue;
        }
        if (r.zero) continue;
        REQUIRE(r.basis.dimension() == w.dimension());
        Reduction again = normalForm(th, r.basis);
        REQUIRE(!again.zero);
        REQUIRE(again.valuation == 0);
        REQUIRE(again.basis == r.basis);
        REQUIRE(basisOrder(th, r.basis).has_value());
    }
}
