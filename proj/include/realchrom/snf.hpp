#pragma once

#include <cstdint>
#include <vector>

namespace realchrom {

// Dense integer matrices, small sizes only; used for finite-window homology
// checks where entries stay tiny.
struct Mat {
    int rows = 0;
    int cols = 0;
    std::vector<long long> d;  // row-major

    Mat() = default;
    Mat(int r, int c) : rows(r), cols(c), d(static_cast<std::size_t>(r) * c, 0) {}
    long long& at(int r, int c) { return d[static_cast<std::size_t>(r) * cols + c]; }
    long long at(int r, int c) const { return d[static_cast<std::size_t>(r) * cols + c]; }
};

// Nonzero diagonal entries of the Smith normal form, each dividing the next.
std::vector<long long> smithDiagonal(Mat m);

// Columns spanning ker(m) over Z (a lattice basis).
Mat kernelLattice(const Mat& m);

// Invariant factors of S / (S ∩ R) where S, R are the column lattices of
// `sub` and `rel` inside Z^rows.  Returns {freeRank, list of finite cyclic
// orders > 1}.
struct GroupInvariants {
    long long freeRank = 0;
    std::vector<long long> torsion;  // orders, each dividing the next

    bool operator==(const GroupInvariants& o) const {
        return freeRank == o.freeRank && torsion == o.torsion;
    }
};

GroupInvariants subgroupInvariants(const Mat& sub, const Mat& rel, int ambientRank);

// ker(g)/im(f) for a composable pair  A --f--> B --g--> C  of integer
// matrices (g*f need not be zero; the quotient is by im(f) ∩ ker(g)).
GroupInvariants homologyAtMiddle(const Mat& f, const Mat& g);

}  // namespace realchrom
