#include "realchrom/snf.hpp"

#include <cstdlib>

#include "check_internal.hpp"
#include "realchrom/grading.hpp"  // checked arithmetic

namespace realchrom {

namespace {

void addRowMultiple(Mat& m, int dst, int src, long long c) {
    for (int j = 0; j < m.cols; ++j)
        m.at(dst, j) = checkedAdd(m.at(dst, j), checkedMul(c, m.at(src, j)));
}

void addColMultiple(Mat& m, int dst, int src, long long c) {
    for (int i = 0; i < m.rows; ++i)
        m.at(i, dst) = checkedAdd(m.at(i, dst), checkedMul(c, m.at(i, src)));
}

void swapRows(Mat& m, int a, int b) {
    if (a == b) return;
    for (int j = 0; j < m.cols; ++j) std::swap(m.at(a, j), m.at(b, j));
}

void swapCols(Mat& m, int a, int b) {
    if (a == b) return;
    for (int i = 0; i < m.rows; ++i) std::swap(m.at(i, a), m.at(i, b));
}

}  // namespace

std::vector<long long> smithDiagonal(Mat m) {
    std::vector<long long> diag;
    int t = 0;
    while (t < m.rows && t < m.cols) {
        // smallest nonzero entry of the trailing block as pivot
        int pi = -1, pj = -1;
        for (int i = t; i < m.rows; ++i)
            for (int j = t; j < m.cols; ++j)
                if (m.at(i, j) != 0 &&
                    (pi < 0 || std::llabs(m.at(i, j)) < std::llabs(m.at(pi, pj)))) {
                    pi = i;
                    pj = j;
                }
        if (pi < 0) break;
        swapRows(m, t, pi);
        swapCols(m, t, pj);

        bool clean = false;
        while (!clean) {
            clean = true;
            for (int i = t + 1; i < m.rows; ++i) {
                if (m.at(i, t) == 0) continue;
                long long q = m.at(i, t) / m.at(t, t);
                addRowMultiple(m, i, t, -q);
                if (m.at(i, t) != 0) {  // remainder becomes the smaller pivot
                    swapRows(m, t, i);
                    clean = false;
                }
            }
            for (int j = t + 1; j < m.cols; ++j) {
                if (m.at(t, j) == 0) continue;
                long long q = m.at(t, j) / m.at(t, t);
                addColMultiple(m, j, t, -q);
                if (m.at(t, j) != 0) {
                    swapCols(m, t, j);
                    clean = false;
                }
            }
            if (!clean) continue;
            // enforce divisibility of the rest of the block
            for (int i = t + 1; i < m.rows && clean; ++i)
                for (int j = t + 1; j < m.cols && clean; ++j)
                    if (m.at(i, j) % m.at(t, t) != 0) {
                        addRowMultiple(m, t, i, 1);
                        clean = false;
                    }
        }
        diag.push_back(std::llabs(m.at(t, t)));
        ++t;
    }
    return diag;
}

Mat kernelLattice(const Mat& m) {
    const int cols = m.cols;
    Mat e = m;
    Mat u(cols, cols);
    for (int i = 0; i < cols; ++i) u.at(i, i) = 1;

    int rank = 0;
    for (int r = 0; r < e.rows && rank < cols; ++r) {
        // sweep row r across the unprocessed columns until one entry remains
        while (true) {
            int best = -1;
            int live = 0;
            for (int c = rank; c < cols; ++c)
                if (e.at(r, c) != 0) {
                    ++live;
                    if (best < 0 || std::llabs(e.at(r, c)) < std::llabs(e.at(r, best))) best = c;
                }
            if (live <= 1) {
                if (live == 1) {
                    swapCols(e, rank, best);
                    swapCols(u, rank, best);
                    ++rank;
                }
                break;
            }
            for (int c = rank; c < cols; ++c) {
                if (c == best || e.at(r, c) == 0) continue;
                long long q = e.at(r, c) / e.at(r, best);
                addColMultiple(e, c, best, -q);
                addColMultiple(u, c, best, -q);
            }
        }
    }

    Mat ker(cols, cols - rank);
    for (int c = rank; c < cols; ++c) {
        for (int i = 0; i < e.rows; ++i) RC_CHECK(e.at(i, c) == 0, "kernel column not in kernel");
        for (int i = 0; i < cols; ++i) ker.at(i, c - rank) = u.at(i, c);
    }
    return ker;
}

GroupInvariants subgroupInvariants(const Mat& sub, const Mat& rel, int ambientRank) {
    RC_CHECK(sub.cols == 0 || sub.rows == ambientRank, "subgroup matrix has wrong ambient rank");
    RC_CHECK(rel.cols == 0 || rel.rows == ambientRank, "relation matrix has wrong ambient rank");
    const int p = sub.cols;
    GroupInvariants inv;
    if (p == 0) return inv;

    // x with sub*x landing in the relation lattice, via the joint kernel
    Mat big(ambientRank, p + rel.cols);
    for (int i = 0; i < ambientRank; ++i) {
        for (int j = 0; j < p; ++j) big.at(i, j) = sub.at(i, j);
        for (int j = 0; j < rel.cols; ++j) big.at(i, p + j) = rel.at(i, j);
    }
    Mat k = kernelLattice(big);
    Mat x(p, k.cols);
    for (int i = 0; i < p; ++i)
        for (int j = 0; j < k.cols; ++j) x.at(i, j) = k.at(i, j);

    auto d = smithDiagonal(x);
    inv.freeRank = p - static_cast<long long>(d.size());
    for (long long di : d) {
        RC_CHECK(di != 0, "zero invariant factor");
        long long twoPart = 1;
        while (di % 2 == 0) {
            di /= 2;
            twoPart *= 2;
        }
        if (twoPart > 1) inv.torsion.push_back(twoPart);
    }
    return inv;
}

GroupInvariants homologyAtMiddle(const Mat& f, const Mat& g) {
    RC_CHECK(f.rows == g.cols, "maps are not composable");
    Mat k = kernelLattice(g);
    return subgroupInvariants(k, f, g.cols);
}

}  // namespace realchrom
