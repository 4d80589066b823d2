#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "realchrom/groups.hpp"
#include "realchrom/ss.hpp"

using namespace realchrom;

namespace {

using Snapshot = std::set<std::tuple<long long, long long, long long, int, long long, std::string>>;

Snapshot snapshot(const PageWindow& ss) {
    Snapshot out;
    for (const auto& [b, cells] : ss.survivors())
        for (const CellRecord& c : cells)
            out.insert({b.k, b.l, c.filtration, c.order == GenOrder::Free ? 0 : 1, c.repVal,
                        c.name.text()});
    return out;
}

TheoryId closedFormTheory(SSKind kind, int n) {
    switch (kind) {
        case SSKind::Tate: return {TheoryKind::Tate, n};
        case SSKind::Borel: return {TheoryKind::BorelCoh, n};
        case SSKind::Geometric: return {TheoryKind::Geometric, n};
        default: return {TheoryKind::Bpr, 0};
    }
}

}  // namespace

TEST_CASE("every window agrees with the closed forms at small scale") {
    for (SSKind kind : {SSKind::Tate, SSKind::Borel, SSKind::Geometric}) {
        for (int n = 0; n <= 2; ++n) {
            if (kind == SSKind::Geometric && n == 0) continue;
            PageWindow ss({kind, n, 12, 12, 0});
            ss.runToEnd();
            CHECK(ss.exhausted());
            auto report = compareToClosedForm(ss, closedFormTheory(kind, n));
            CAPTURE(static_cast<int>(kind));
            CAPTURE(n);
            CHECK(report.disagreements == 0);
        }
    }
}

TEST_CASE("differentials shift bidegree by (-1, 0) and land where claimed") {
    PageWindow ss({SSKind::Tate, 1, 10, 10, 0});
    long long rulesSeen = 0;
    while (!ss.exhausted()) {
        for (const RuleInstance& r : ss.currentRules(true)) {
            ++rulesSeen;
            CHECK(r.source.dimension() == r.sourceDeg);
            Bidegree target = r.target.dimension();
            CHECK(target.k == r.sourceDeg.k - 1);
            CHECK(target.l == r.sourceDeg.l);
            CHECK(r.coefficient != 0);
        }
        ss.turnPage();
    }
    CHECK(rulesSeen > 0);
}

TEST_CASE("differentials compose to zero page by page") {
    // d after d vanishes: no cell is a target on the page where it is a source,
    // and no source fires twice across pages
    for (SSKind kind : {SSKind::Tate, SSKind::Borel}) {
        PageWindow ss({kind, 1, 10, 10, 0});
        std::set<std::string> everFired;
        while (!ss.exhausted()) {
            std::set<std::string> sources, targets;
            for (const RuleInstance& r : ss.currentRules(true)) {
                CHECK(sources.insert(r.source.text()).second);  // one rule per source
                targets.insert(r.target.text());
                CHECK(everFired.insert(r.source.text()).second);
            }
            for (const auto& s : sources) CHECK(targets.count(s) == 0);
            ss.turnPage();
        }
    }
}

TEST_CASE("page numbers follow the stage pattern and only increase") {
    PageWindow ss({SSKind::Tate, 2, 8, 8, 0});
    CHECK(ss.stage() == 0);
    int last = ss.page();
    CHECK(last >= 1);
    while (!ss.exhausted()) {
        ss.turnPage();
        CHECK(ss.page() >= last);
        CHECK(ss.page() == (1 << (ss.stage() + 1)) - 1);
        last = ss.page();
    }
    CHECK_THROWS_AS(ss.turnPage(), std::logic_error);  // nothing left to turn
    CHECK(ss.exhausted());
}

TEST_CASE("widening the working strip does not change the answer") {
    for (SSKind kind : {SSKind::Tate, SSKind::Borel, SSKind::Geometric}) {
        const int n = kind == SSKind::Geometric ? 1 : 0;
        PageWindow narrow({kind, n, 10, 10, 0});
        PageWindow wide({kind, n, 10, 10, 7});
        narrow.runToEnd();
        wide.runToEnd();
        CHECK(snapshot(narrow) == snapshot(wide));
    }
    PageWindow narrow({SSKind::TateFullTower, 0, 12, 12, 0});
    PageWindow wide({SSKind::TateFullTower, 0, 12, 12, 5});
    narrow.runToEnd();
    wide.runToEnd();
    CHECK(snapshot(narrow) == snapshot(wide));
}

TEST_CASE("the untruncated tower clears everything off the a-power column") {
    PageWindow ss({SSKind::TateFullTower, 0, 14, 14, 0});
    ss.runToEnd();
    std::string bad;
    CHECK(allAPowers(ss, &bad));
    CHECK(bad.empty());
    // and the column itself is fully populated with order-two cells
    auto surv = ss.survivors();
    for (long long l = -14; l <= 14; ++l) {
        auto it = surv.find({0, l});
        REQUIRE(it != surv.end());
        REQUIRE(it->second.size() == 1);
        CHECK(it->second[0].order == GenOrder::Two);
        CHECK(it->second[0].name.aexp() == -l);
        CHECK(it->second[0].name.vexp().empty());
        CHECK(it->second[0].name.sexp() == 0);
    }
    for (const auto& [b, cells] : surv) CHECK((b.k == 0 || cells.empty()));
}

TEST_CASE("truncated windows stop at their closing page") {
    // with everything resolved, the final page reflects the last firing stage
    PageWindow ss({SSKind::Tate, 0, 8, 8, 0});
    ss.runToEnd();
    CHECK(ss.exhausted());
    auto rules = ss.currentRules(true);
    CHECK(rules.empty());
}

TEST_CASE("geometric window survivors carry the closed-form names") {
    PageWindow ss({SSKind::Geometric, 2, 16, 16, 0});
    ss.runToEnd();
    auto surv = ss.survivors();
    for (const auto& [b, cells] : surv) {
        GroupSummary g = groupAt({TheoryKind::Geometric, 2}, b);
        REQUIRE(cells.size() == static_cast<std::size_t>(g.freeRank + g.z2Count));
        for (const CellRecord& c : cells) {
            CHECK(c.order == GenOrder::Two);
            CHECK(c.name.dimension() == b);
        }
    }
    // one-column theory: nothing off the multiples of the period at k >= 0
    for (const auto& [b, cells] : surv) {
        if (cells.empty()) continue;
        CHECK(b.k >= 0);
        CHECK(b.k % 8 == 0);
    }
    CHECK(surv.count({8, 3}) + surv.count({16, 0}) >= 1);
}

TEST_CASE("geometric pages are short") {
    PageWindow ss({SSKind::Geometric, 1, 8, 8, 0});
    int turns = 0;
    while (!ss.exhausted() && turns < 5) {
        ss.turnPage();
        ++turns;
    }
    CHECK(ss.exhausted());
    CHECK(turns <= 2);
}

TEST_CASE("comparison refuses mismatched input") {
    PageWindow ss({SSKind::Tate, 1, 6, 6, 0});
    CHECK_THROWS_AS(compareToClosedForm(ss, TheoryId{TheoryKind::Tate, 1}),
                    std::invalid_argument);  // not exhausted yet
    ss.runToEnd();
    CHECK_THROWS_AS(compareToClosedForm(ss, TheoryId{TheoryKind::Tate, 2}),
                    std::invalid_argument);  // wrong height
    CHECK_THROWS_AS(compareToClosedForm(ss, TheoryId{TheoryKind::BorelCoh, 1}),
                    std::invalid_argument);  // wrong kind
    CHECK(compareToClosedForm(ss, TheoryId{TheoryKind::Tate, 1}).disagreements == 0);
}

TEST_CASE("configuration guards") {
    CHECK_THROWS_AS(PageWindow({SSKind::Geometric, 0, 8, 8, 0}), std::invalid_argument);
    CHECK_THROWS_AS(PageWindow({SSKind::Tate, 17, 8, 8, 0}), ResourceLimitError);
    CHECK_THROWS_AS(PageWindow({SSKind::Geometric, 41, 8, 8, 0}), ResourceLimitError);
    CHECK_THROWS_AS(PageWindow({SSKind::Tate, -1, 8, 8, 0}), std::invalid_argument);
    CHECK_THROWS_AS(PageWindow({SSKind::Tate, 1, -1, 8, 0}), std::invalid_argument);
    CHECK_THROWS_AS(PageWindow({SSKind::TateFullTower, 0, 4000, 4000, 0}), ResourceLimitError);
}

TEST_CASE("borel window marks the glued bidegrees and nothing else") {
    PageWindow ss({SSKind::Borel, 1, 12, 12, 0});
    ss.runToEnd();
    auto report = compareToClosedForm(ss, TheoryId{TheoryKind::BorelCoh, 1});
    CHECK(report.disagreements == 0);
    std::set<std::pair<long long, long long>> got;
    for (Bidegree b : report.literalDiffCells) got.insert({b.k, b.l});
    std::set<std::pair<long long, long long>> want;
    for (long long m = 1; 4 * m <= 12; ++m) {
        want.insert({4 * m, -4 * m});
        want.insert({-4 * m, 4 * m});
    }
    CHECK(got == want);
}

TEST_CASE("tate window has no extension ambiguity at height zero") {
    PageWindow ss({SSKind::Tate, 0, 10, 10, 0});
    ss.runToEnd();
    auto report = compareToClosedForm(ss, TheoryId{TheoryKind::Tate, 0});
    CHECK(report.disagreements == 0);
    CHECK(report.ambiguous == 0);
    CHECK(report.literalDiffCells.empty());
}
