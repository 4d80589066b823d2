#pragma once

#include <set>
#include <string>
#include <vector>

#include "realchrom/groups.hpp"
#include "realchrom/theory.hpp"

namespace realchrom {

// The two long exact rows tying the four companion theories together:
//   Top:     ... -> BorelHom -> Bprn     -> Geometric -> ...
//   Bottom:  ... -> BorelHom -> BorelCoh -> Tate      -> ...
enum class Row { Top, Bottom };

enum class ExactStatus { Exact, ExactUpToExtension, Violation };

// Image of one basis word under a map of the diagram; `valuation` counts the
// 2-power carried along (e.g. the unit maps to twice the unit).
struct MapImage {
    bool zero = true;
    long long valuation = 0;
    Monomial gen;
};

// Borel homology into the row's middle theory.
MapImage diagramFirstToMiddle(int n, Row row, const Monomial& basisWord);
// Middle theory onto the row's localization (geometric or Tate).
MapImage diagramMiddleToThird(int n, Row row, const Monomial& basisWord);
// Connecting map back to Borel homology (display-level; the degree shift is
// carried by where the term sits in the five-term row).
MapImage diagramConnecting(int n, Row row, const Monomial& thirdBasisWord);

struct ExactnessCell {
    Bidegree b;                 // bidegree of the middle term
    ExactStatus status = ExactStatus::Exact;
    std::string detail;
    // Orders of the five displayed groups, rendered for reports.
    std::string display;
};

struct ExactnessReport {
    Row row = Row::Top;
    std::vector<ExactnessCell> cells;
    long long violations = 0;
    std::vector<Bidegree> upToExtension;
};

// Audit im = ker at the middle term of the row over the window
// |k| <= K, |l| <= L.
ExactnessReport auditRow(int n, Row row, long long K, long long L);

// Bidegrees in the window where the middle-term extension is genuinely
// ambiguous from orders alone (the two-summand overlap positions).
std::set<Bidegree> collisionSet(int n, Row row, long long K, long long L);

// One bidegree where the truncated theory and its Borel cohomology differ
// (the completion-theorem failure), with both group descriptions attached.
struct GapEntry {
    Bidegree b;
    std::string bprn;
    std::string borelCoh;
};

// All inner-window bidegrees where the two groups differ (including
// generator labels); nonempty once the window spans a sigma period.
std::vector<GapEntry> completenessGap(int n, long long K, long long L);

}  // namespace realchrom
