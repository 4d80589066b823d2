#include "realchrom/diagram.hpp"

#include <algorithm>

#include "check_internal.hpp"
#include "groups_internal.hpp"
#include "realchrom/snf.hpp"

namespace realchrom {

namespace {

TheoryId firstTheory(int n) { return {TheoryKind::BorelHom, n}; }
TheoryId middleTheory(int n, Row row) {
    return {row == Row::Top ? TheoryKind::Bprn : TheoryKind::BorelCoh, n};
}
TheoryId thirdTheory(int n, Row row) {
    return {row == Row::Top ? TheoryKind::Geometric : TheoryKind::Tate, n};
}

Mat appendCols(const Mat& a, const Mat& b) {
    RC_CHECK(a.rows == b.rows || a.cols == 0 || b.cols == 0, "row mismatch appending columns");
    const int rows = a.cols == 0 ? b.rows : a.rows;
    Mat out(rows, a.cols + b.cols);
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < a.cols; ++j) out.at(i, j) = a.at(i, j);
        for (int j = 0; j < b.cols; ++j) out.at(i, a.cols + j) = b.at(i, j);
    }
    return out;
}

int genIndex(const GroupSummary& g, const Monomial& w) {
    for (std::size_t i = 0; i < g.generators.size(); ++i)
        if (g.generators[i].first == w) return static_cast<int>(i);
    return -1;
}

Mat torsionRelations(const GroupSummary& g) {
    int count = 0;
    for (auto& [w, ord] : g.generators) {
        (void)w;
        if (ord == GenOrder::Two) ++count;
    }
    Mat rel(static_cast<int>(g.generators.size()), count);
    int c = 0;
    for (std::size_t i = 0; i < g.generators.size(); ++i)
        if (g.generators[i].second == GenOrder::Two) rel.at(static_cast<int>(i), c++) = 2;
    return rel;
}

std::string shapeText(const GroupSummary& g) {
    if (g.trivial()) return "0";
    std::string out;
    if (g.freeRank > 0) {
        out += "Z(2)";
        if (g.freeRank > 1) out += "^" + std::to_string(g.freeRank);
    }
    if (g.z2Count > 0) {
        if (!out.empty()) out += "+";
        out += "Z/2";
        if (g.z2Count > 1) out += "^" + std::to_string(g.z2Count);
    }
    return out;
}

// A free class from the v-word block sharing a bidegree with a torsion bare
// sigma-power: the spot where the group extension is not pinned by orders.
bool isCollision(const GroupSummary& middle) {
    bool firstFree = false, secondTorsion = false;
    for (auto& [w, ord] : middle.generators) {
        if (ord == GenOrder::Free && (!w.vexp().empty() || w.sexp() == 0)) firstFree = true;
        if (ord == GenOrder::Two && w.vexp().empty() && w.sexp() != 0) secondTorsion = true;
    }
    return firstFree && secondTorsion;
}

std::string fmtInv(const GroupInvariants& inv) {
    std::string out = "free^" + std::to_string(inv.freeRank);
    for (long long t : inv.torsion) out += " Z/" + std::to_string(t);
    return out;
}

bool sameGens(const GroupSummary& x, const GroupSummary& y) {
    if (x.generators.size() != y.generators.size()) return false;
    for (std::size_t i = 0; i < x.generators.size(); ++i)
        if (x.generators[i].first != y.generators[i].first ||
            x.generators[i].second != y.generators[i].second)
            return false;
    return true;
}

}  // namespace

MapImage diagramFirstToMiddle(int n, Row row, const Monomial& basisWord) {
    RC_CHECK(basisOrder(firstTheory(n), basisWord).has_value(),
             "word is not a Borel-homology basis element");
    if (!basisWord.vexp().empty()) {
        Reduction r = normalForm(middleTheory(n, row), basisWord);
        if (r.zero) return {true, 0, {}};
        return {false, r.valuation, r.basis};
    }
    if (basisWord.isUnit()) return {false, 1, Monomial::unit()};  // the norm doubles the unit
    return {true, 0, {}};  // a-power families are invisible downstairs
}

MapImage diagramMiddleToThird(int n, Row row, const Monomial& basisWord) {
    RC_CHECK(basisOrder(middleTheory(n, row), basisWord).has_value(),
             "word is not a basis element of the middle theory");
    if (!basisWord.vexp().empty()) return {true, 0, {}};
    Reduction r = normalForm(thirdTheory(n, row), basisWord);
    RC_CHECK(!r.zero && r.valuation == 0, "sigma/a-words pass to the localization unchanged");
    return {false, 0, r.basis};
}

MapImage diagramConnecting(int n, Row row, const Monomial& thirdBasisWord) {
    RC_CHECK(basisOrder(thirdTheory(n, row), thirdBasisWord).has_value(),
             "word is not a basis element of the localized theory");
    if (thirdBasisWord.sexp() == 0 && thirdBasisWord.aexp() <= -1)
        return {false, 0, Monomial::a(thirdBasisWord.aexp())};
    return {true, 0, {}};
}

ExactnessReport auditRow(int n, Row row, long long K, long long L) {
    const TheoryId fTh = firstTheory(n);
    const TheoryId mTh = middleTheory(n, row);
    const TheoryId tTh = thirdTheory(n, row);

    ExactnessReport rep;
    rep.row = row;
    for (long long l = -L; l <= L; ++l) {
        for (long long k = -K; k <= K; ++k) {
            const Bidegree b{k, l};
            const GroupSummary A = groupAt(fTh, b);
            const GroupSummary M = groupAt(mTh, b);
            const GroupSummary T = groupAt(tTh, b);
            const GroupSummary Tin = groupAt(tTh, {k + 1, l});
            const GroupSummary Aout = groupAt(fTh, {k - 1, l});

            const int ma = static_cast<int>(A.generators.size());
            const int mm = static_cast<int>(M.generators.size());
            const int mt = static_cast<int>(T.generators.size());
            if (ma + mm + mt == 0 && Tin.trivial() && Aout.trivial()) continue;

            Mat f(mm, ma);
            for (int j = 0; j < ma; ++j) {
                MapImage img =
                    diagramFirstToMiddle(n, row, A.generators[static_cast<std::size_t>(j)].first);
                if (img.zero) continue;
                int i = genIndex(M, img.gen);
                RC_CHECK(i >= 0, "image word missing from the middle group");
                RC_CHECK(img.valuation <= 30, "unexpectedly deep valuation");
                f.at(i, j) = 1LL << img.valuation;
            }
            Mat g(mt, mm);
            for (int j = 0; j < mm; ++j) {
                MapImage img =
                    diagramMiddleToThird(n, row, M.generators[static_cast<std::size_t>(j)].first);
                if (img.zero) continue;
                int i = genIndex(T, img.gen);
                RC_CHECK(i >= 0, "image word missing from the localized group");
                g.at(i, j) = 1;
            }
            const Mat relM = torsionRelations(M);
            const Mat relT = torsionRelations(T);

            ExactnessCell cell;
            cell.b = b;
            cell.display = shapeText(Tin) + " -> " + shapeText(A) + " -> " + shapeText(M) +
                           " -> " + shapeText(T) + " -> " + shapeText(Aout);

            // composite must vanish in T-bar: zero on free coords, even on torsion
            bool compositeZero = true;
            for (int j = 0; j < ma && compositeZero; ++j)
                for (int i = 0; i < mt && compositeZero; ++i) {
                    long long y = 0;
                    for (int r = 0; r < mm; ++r) y += g.at(i, r) * f.at(r, j);
                    const bool torsion =
                        T.generators[static_cast<std::size_t>(i)].second == GenOrder::Two;
                    if (torsion ? (y % 2 != 0) : (y != 0)) compositeZero = false;
                }

            if (!compositeZero) {
                cell.status = ExactStatus::Violation;
                cell.detail = "maps do not compose to zero";
                ++rep.violations;
                rep.cells.push_back(std::move(cell));
                continue;
            }

            // kernel upstairs of the induced map to T-bar
            Mat s1(mm, 0);
            {
                Mat ker = kernelLattice(appendCols(g, relT));
                s1 = Mat(mm, ker.cols);
                for (int i = 0; i < mm; ++i)
                    for (int j = 0; j < ker.cols; ++j) s1.at(i, j) = ker.at(i, j);
            }
            // homology at the middle term: kernel modulo image (and relations)
            const GroupInvariants h = subgroupInvariants(s1, appendCols(f, relM), mm);
            const bool exact = h.freeRank == 0 && h.torsion.empty();

            if (!exact) {
                cell.status = ExactStatus::Violation;
                cell.detail = "homology at the middle term is " + fmtInv(h);
                ++rep.violations;
            } else if (isCollision(M)) {
                cell.status = ExactStatus::ExactUpToExtension;
                cell.detail = "free and torsion summands share the bidegree; orders certified";
                rep.upToExtension.push_back(b);
            } else {
                cell.status = ExactStatus::Exact;
            }
            rep.cells.push_back(std::move(cell));
        }
    }
    return rep;
}

std::set<Bidegree> collisionSet(int n, Row row, long long K, long long L) {
    const TheoryId mTh = middleTheory(n, row);
    std::set<Bidegree> out;
    for (long long l = -L; l <= L; ++l)
        for (long long k = -K; k <= K; ++k)
            if (isCollision(groupAt(mTh, {k, l}))) out.insert({k, l});
    return out;
}

std::vector<GapEntry> completenessGap(int n, long long K, long long L) {
    const TheoryId trunc{TheoryKind::Bprn, n};
    const TheoryId borel{TheoryKind::BorelCoh, n};
    std::vector<GapEntry> out;
    for (long long l = -L; l <= L; ++l)
        for (long long k = -K; k <= K; ++k) {
            const GroupSummary g1 = groupAt(trunc, {k, l});
            const GroupSummary g2 = groupAt(borel, {k, l});
            if (!sameGens(g1, g2)) out.push_back({{k, l}, g1.text(), g2.text()});
        }
    return out;
}

}  // namespace realchrom
