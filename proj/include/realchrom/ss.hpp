#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "realchrom/groups.hpp"
#include "realchrom/theory.hpp"

namespace realchrom {

enum class SSKind {
    Tate,          // converges to the periodic theory
    Borel,         // cohomological half, nonnegative a-filtration only
    Geometric,     // one-column descent from height n-1 to height n
    TateFullTower, // untruncated tower fed through the Tate-style pages
};

struct SSConfig {
    SSKind kind = SSKind::Tate;
    int n = 1;
    long long K = 16;  // report survivors with |k| <= K
    long long L = 16;  // ... and |l| <= L
    long long extraPad = 0;  // widen the working strip beyond the default

    long long kPad() const { return (1LL << (n + 2)) + extraPad; }
};

struct ResourceLimitError : std::runtime_error {
    explicit ResourceLimitError(const std::string& w) : std::runtime_error(w) {}
};

// One filtration cell visible in the report window.  `order` is the order of
// the surviving subquotient (Free or Two); repVal counts the powers of 2
// picked up by the surviving representative.
struct CellRecord {
    Bidegree b;
    long long filtration = 0;  // a-exponent of the cell name
    GenOrder order = GenOrder::Two;
    long long repVal = 0;
    Monomial name;             // cell label as a formal word
};

// A differential instance on a given page: source and target cell names and
// the integer coefficient of the map between them.
struct RuleInstance {
    Monomial source;
    Monomial target;
    long long coefficient = 1;
    Bidegree sourceDeg;
};

class PageWindow {
public:
    explicit PageWindow(SSConfig cfg);
    ~PageWindow();
    PageWindow(const PageWindow&) = delete;
    PageWindow& operator=(const PageWindow&) = delete;

    int page() const;                            // 2^{s+1} - 1 for stage s
    int stage() const;
    bool exhausted() const;                      // no further nonzero pages

    // Advance through the next nonzero differential.
    void turnPage();
    void runToEnd();

    // Surviving cells inside the report window, grouped by bidegree.
    std::map<Bidegree, std::vector<CellRecord>> survivors() const;

    // Differentials that will fire at the current stage, restricted to
    // sources in the report window (or in the padded strip when asked).
    std::vector<RuleInstance> currentRules(bool padded = false) const;

    const SSConfig& config() const;

private:
    friend struct PageWindowTestHook;
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

// Compare E-infinity of the window against the closed-form groups of the
// matching theory.  Cell-level statuses; the group either agrees on the nose,
// agrees only as a multiset with a possible extension, or disagrees.
enum class CompareStatus { Agree, ExtensionAmbiguous, Disagree };

struct ComparisonCell {
    Bidegree b;
    CompareStatus status = CompareStatus::Agree;
    std::string detail;
};

struct ComparisonReport {
    std::vector<ComparisonCell> cells;
    // Bidegrees where a literal two-summand reading of the closed form
    // differs from the actual inventory (the summands are glued there).
    std::vector<Bidegree> literalDiffCells;
    long long disagreements = 0;
    long long ambiguous = 0;
};

ComparisonReport compareToClosedForm(const PageWindow& ss, TheoryId theory);

// True when every survivor in the window is a power of a on the k = 0
// column (any integer exponent); the untruncated full-tower check.
bool allAPowers(const PageWindow& ss, std::string* firstBad = nullptr);

}  // namespace realchrom
