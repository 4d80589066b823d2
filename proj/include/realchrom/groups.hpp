#pragma once

#include <string>
#include <utility>
#include <vector>

#include "realchrom/theory.hpp"

namespace realchrom {

// Finitely generated 2-local group in one bidegree: Z_(2)^free + (Z/2)^count,
// with the basis words that generate each summand.
struct GroupSummary {
    long long freeRank = 0;
    long long z2Count = 0;
    std::vector<std::pair<Monomial, GenOrder>> generators;

    bool trivial() const { return freeRank == 0 && z2Count == 0; }
    // e.g. "Z(2) {v1^4 s^-4} + Z/2 {v1 a}", trivial group prints "0".
    std::string text() const;
};

GroupSummary groupAt(TheoryId theory, Bidegree b);

// All groups with the given twist l and k in [kmin, kmax], ordered by k.
std::vector<std::pair<Bidegree, GroupSummary>> twistSlice(TheoryId theory, long long l,
                                                          long long kmin, long long kmax);

// One basis-element record in the congruence-indexed view of a twist line:
// for each admissible exponent family we list the sigma-free datum (word,
// dimension, and whether the slot is free, order two, or annihilated).
enum class SlotTag { Free, Two, Dead };

struct CorollaryEntry {
    Monomial word;       // representative with the sigma-power filled in
    Bidegree dimension;
    SlotTag tag = SlotTag::Free;
    std::string cls;     // congruence label, e.g. "t = 2 mod 4"
    bool secondSummand = false;
};

enum class Mode { Theorem, Corollary };

// Enumerate the twist line l of the truncated theory in congruence-class
// order rather than k order.  The two modes differ in how the
// negative-sigma-power family is displayed; both cover the same groups.
std::vector<CorollaryEntry> corollaryView(TheoryId theory, long long l, long long kmin,
                                          long long kmax, Mode mode);

struct TableRecord {
    Bidegree b;
    GroupSummary g;
};

enum class OutputFormat { Text, Csv, Json };

std::vector<TableRecord> makeTable(TheoryId theory, long long kmin, long long kmax,
                                   long long lmin, long long lmax);

// Deterministic rendering; rows ascend in l, then k.  When twistedLabels is
// set, text rows read "dimension k of the twist-l fixed points" instead of
// the bidegree form; csv/json schemas are unaffected.
std::string renderTable(TheoryId theory, const std::vector<TableRecord>& rows,
                        OutputFormat format, bool twistedLabels = false);

std::string renderGroup(TheoryId theory, Bidegree b, const GroupSummary& g,
                        OutputFormat format);

}  // namespace realchrom
