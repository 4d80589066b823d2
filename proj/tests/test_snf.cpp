#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "realchrom/snf.hpp"

using namespace realchrom;

namespace {

Mat make(int r, int c, std::vector<long long> entries) {
    Mat m(r, c);
    m.d = std::move(entries);
    REQUIRE(m.d.size() == static_cast<std::size_t>(r) * c);
    return m;
}

Mat mul(const Mat& a, const Mat& b) {
    REQUIRE(a.cols == b.rows);
    Mat p(a.rows, b.cols);
    for (int i = 0; i < a.rows; ++i)
        for (int k = 0; k < a.cols; ++k)
            for (int j = 0; j < b.cols; ++j) p.at(i, j) += a.at(i, k) * b.at(k, j);
    return p;
}

Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

bool isZero(const Mat& m) {
    return std::all_of(m.d.begin(), m.d.end(), [](long long x) { return x == 0; });
}

GroupInvariants inv(long long freeRank, std::vector<long long> torsion) {
    return GroupInvariants{freeRank, std::move(torsion)};
}

}  // namespace

TEST_CASE("smith diagonal on known matrices") {
    CHECK(smithDiagonal(make(2, 2, {2, 0, 0, 3})) == std::vector<long long>{1, 6});
    CHECK(smithDiagonal(make(2, 2, {2, 4, 6, 8})) == std::vector<long long>{2, 4});
    CHECK(smithDiagonal(identity(3)) == std::vector<long long>{1, 1, 1});
    CHECK(smithDiagonal(Mat(2, 3)).empty());
    CHECK(smithDiagonal(Mat(0, 0)).empty());
    CHECK(smithDiagonal(make(2, 2, {1, 2, 2, 4})) == std::vector<long long>{1});
    CHECK(smithDiagonal(make(1, 3, {2, 4, 6})) == std::vector<long long>{2});
    CHECK(smithDiagonal(make(1, 1, {-5})) == std::vector<long long>{5});
}

TEST_CASE("smith diagonal is invariant under unimodular row and column operations") {
    std::mt19937_64 rng(0x5eedcafe);
    std::uniform_int_distribution<int> small(1, 3);
    std::uniform_int_distribution<long long> coef(-2, 2);
    for (int trial = 0; trial < 400; ++trial) {
        // plant a divisor chain on the diagonal of a rectangular matrix
        std::vector<long long> chain;
        long long d = small(rng);
        for (int i = 0; i < 3; ++i) {
            chain.push_back(d);
            d *= small(rng);
        }
        Mat m(3, 4);
        for (int i = 0; i < 3; ++i) m.at(i, i) = chain[static_cast<std::size_t>(i)];

        for (int op = 0; op < 12; ++op) {
            int kind = static_cast<int>(rng() % 4);
            if (kind == 0) {
                int i = static_cast<int>(rng() % 3), j = static_cast<int>(rng() % 3);
                long long f = coef(rng);
                if (i != j)
                    for (int c = 0; c < m.cols; ++c) m.at(j, c) += f * m.at(i, c);
            } else if (kind == 1) {
                int i = static_cast<int>(rng() % 4), j = static_cast<int>(rng() % 4);
                long long f = coef(rng);
                if (i != j)
                    for (int r = 0; r < m.rows; ++r) m.at(r, j) += f * m.at(r, i);
            } else if (kind == 2) {
                int i = static_cast<int>(rng() % 3), j = static_cast<int>(rng() % 3);
                for (int c = 0; c < m.cols; ++c) std::swap(m.at(i, c), m.at(j, c));
            } else {
                int i = static_cast<int>(rng() % 4), j = static_cast<int>(rng() % 4);
                for (int r = 0; r < m.rows; ++r) std::swap(m.at(r, i), m.at(r, j));
            }
        }
        CHECK(smithDiagonal(m) == chain);
    }
}

TEST_CASE("smith diagonal forms a divisor chain on random matrices") {
    std::mt19937_64 rng(0xd1a60);
    std::uniform_int_distribution<long long> entry(-6, 6);
    for (int trial = 0; trial < 400; ++trial) {
        int r = 1 + static_cast<int>(rng() % 4), c = 1 + static_cast<int>(rng() % 4);
        Mat m(r, c);
        for (auto& x : m.d) x = entry(rng);
        auto d = smithDiagonal(m);
        REQUIRE(d.size() <= static_cast<std::size_t>(std::min(r, c)));
        for (std::size_t i = 0; i < d.size(); ++i) {
            CHECK(d[i] > 0);
            if (i + 1 < d.size()) CHECK(d[i + 1] % d[i] == 0);
        }
    }
}

TEST_CASE("kernel lattice on known matrices") {
    Mat k = kernelLattice(make(1, 2, {1, 2}));
    REQUIRE(k.cols == 1);
    CHECK(isZero(mul(make(1, 2, {1, 2}), k)));
    CHECK(smithDiagonal(k) == std::vector<long long>{1});  // primitive generator

    CHECK(kernelLattice(identity(3)).cols == 0);
    CHECK(kernelLattice(Mat(2, 3)).cols == 3);  // zero map: everything
    CHECK(kernelLattice(Mat(0, 2)).cols == 2);
}

TEST_CASE("kernel lattice is a saturated basis of the full kernel") {
    std::mt19937_64 rng(0x2b5f);
    std::uniform_int_distribution<long long> entry(-4, 4);
    for (int trial = 0; trial < 600; ++trial) {
        int r = 1 + static_cast<int>(rng() % 4), c = 1 + static_cast<int>(rng() % 5);
        Mat m(r, c);
        for (auto& x : m.d) x = entry(rng);
        Mat k = kernelLattice(m);
        CHECK(isZero(mul(m, k)));
        long long rank = static_cast<long long>(smithDiagonal(m).size());
        REQUIRE(k.cols == c - rank);
        if (k.cols > 0) {
            // saturated and independent: all invariant factors are 1
            auto d = smithDiagonal(k);
            REQUIRE(static_cast<int>(d.size()) == k.cols);
            for (long long di : d) CHECK(di == 1);
        }
    }
}

TEST_CASE("subgroup invariants: free cases") {
    Mat none(2, 0);
    CHECK(subgroupInvariants(none, none, 2) == inv(0, {}));
    CHECK(subgroupInvariants(make(2, 1, {1, 1}), none, 2) == inv(1, {}));
    CHECK(subgroupInvariants(make(2, 1, {2, 0}), none, 2) == inv(1, {}));
    CHECK(subgroupInvariants(make(2, 2, {1, 2, 1, 2}), none, 2) == inv(1, {}));
    CHECK(subgroupInvariants(identity(3), Mat(3, 0), 3) == inv(3, {}));
}

TEST_CASE("subgroup invariants: torsion knowns, two-locally") {
    CHECK(subgroupInvariants(identity(2), make(2, 2, {2, 0, 0, 4}), 2) == inv(0, {2, 4}));
    CHECK(subgroupInvariants(make(2, 1, {2, 0}), make(2, 2, {4, 0, 0, 2}), 2) == inv(0, {2}));
    // odd torsion is discarded: these groups are only read at the prime 2
    CHECK(subgroupInvariants(identity(2), make(2, 2, {2, 0, 0, 3}), 2) == inv(0, {2}));
    CHECK(subgroupInvariants(identity(1), make(1, 1, {3}), 1) == inv(0, {}));
    CHECK(subgroupInvariants(identity(1), make(1, 1, {12}), 1) == inv(0, {4}));
}

TEST_CASE("subgroup invariants match an exhaustive closure oracle") {
    std::mt19937_64 rng(0xfeed5eed);
    std::uniform_int_distribution<long long> entry(-8, 8);
    std::uniform_int_distribution<int> expo(1, 4);
    for (int trial = 0; trial < 500; ++trial) {
        const long long ma = 1LL << expo(rng), mb = 1LL << expo(rng);
        const int p = static_cast<int>(rng() % 4);
        Mat sub(2, p);
        for (auto& x : sub.d) x = entry(rng);
        Mat rel = make(2, 2, {ma, 0, 0, mb});

        // brute force: the subgroup the columns generate inside Z/ma x Z/mb
        auto norm = [&](long long x, long long y) {
            return std::pair<long long, long long>{((x % ma) + ma) % ma, ((y % mb) + mb) % mb};
        };
        std::set<std::pair<long long, long long>> group{{0, 0}};
        std::vector<std::pair<long long, long long>> work{{0, 0}};
        while (!work.empty()) {
            auto [x, y] = work.back();
            work.pop_back();
            for (int j = 0; j < p; ++j) {
                auto nx = norm(x + sub.at(0, j), y + sub.at(1, j));
                if (group.insert(nx).second) work.push_back(nx);
            }
        }
        long long size = static_cast<long long>(group.size());
        long long exponent = 1;
        for (auto [x, y] : group) {
            long long ord = 1;
            auto cur = std::pair<long long, long long>{x, y};
            while (cur != std::pair<long long, long long>{0, 0}) {
                cur = norm(cur.first + x, cur.second + y);
                ++ord;
            }
            exponent = std::max(exponent, ord);
        }
        // a subgroup of a product of two cyclic 2-groups has at most two
        // invariant factors, so (size, exponent) pins it down
        std::vector<long long> torsion;
        if (size / exponent > 1) torsion.push_back(size / exponent);
        if (exponent > 1) torsion.push_back(exponent);

        CHECK(subgroupInvariants(sub, rel, 2) == inv(0, torsion));
    }
}

TEST_CASE("homology at the middle: knowns") {
    CHECK(homologyAtMiddle(make(1, 1, {2}), make(1, 1, {0})) == inv(0, {2}));
    CHECK(homologyAtMiddle(make(1, 1, {1}), make(1, 1, {0})) == inv(0, {}));
    CHECK(homologyAtMiddle(make(1, 1, {0}), make(1, 1, {0})) == inv(1, {}));
    CHECK(homologyAtMiddle(make(2, 1, {1, 0}), make(1, 2, {0, 1})) == inv(0, {}));
    CHECK(homologyAtMiddle(make(2, 2, {2, 0, 0, 3}), Mat(1, 2)) == inv(0, {2}));
    CHECK(homologyAtMiddle(make(2, 2, {4, 0, 0, 8}), Mat(1, 2)) == inv(0, {4, 8}));
    // nonzero composite: the quotient only sees im(f) inside ker(g)
    CHECK(homologyAtMiddle(make(1, 1, {1}), make(1, 1, {1})) == inv(0, {}));
    CHECK(homologyAtMiddle(Mat(2, 0), Mat(1, 2)) == inv(2, {}));
}

TEST_CASE("homology is invariant under change of basis") {
    std::mt19937_64 rng(0xbada55);
    std::uniform_int_distribution<long long> entry(-3, 3);
    for (int trial = 0; trial < 300; ++trial) {
        const int na = 1 + static_cast<int>(rng() % 3);
        const int nb = 1 + static_cast<int>(rng() % 3);
        const int nc = 1 + static_cast<int>(rng() % 3);
        // draw g, then make f a random map into ker(g) so the pair is an
        // honest complex segment
        Mat g(nc, nb);
        for (auto& x : g.d) x = entry(rng);
        Mat kg = kernelLattice(g);
        Mat coeffs(kg.cols, na);
        for (auto& x : coeffs.d) x = entry(rng);
        Mat fk = kg.cols > 0 ? mul(kg, coeffs) : Mat(nb, na);

        GroupInvariants base = homologyAtMiddle(fk, g);

        // unimodular U acting on the middle, with tracked inverse
        Mat u = identity(nb), v = identity(nb);
        for (int op = 0; op < 8; ++op) {
            int i = static_cast<int>(rng() % nb), j = static_cast<int>(rng() % nb);
            if (i == j) continue;
            long long c = entry(rng);
            Mat e = identity(nb), einv = identity(nb);
            e.at(j, i) = c;
            einv.at(j, i) = -c;
            u = mul(e, u);
            v = mul(v, einv);
        }
        CHECK(isZero(mul(g, fk)));
        CHECK(homologyAtMiddle(mul(u, fk), mul(g, v)) == base);

        // basis changes on the outer terms never matter
        Mat w = identity(na);
        if (na > 1) w.at(0, na - 1) = 2;
        Mat x = identity(nc);
        if (nc > 1) x.at(nc - 1, 0) = -3;
        CHECK(homologyAtMiddle(mul(fk, w), g) == base);
        CHECK(homologyAtMiddle(fk, mul(x, g)) == base);
    }
}
