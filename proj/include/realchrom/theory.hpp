#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>

#include "realchrom/grading.hpp"

namespace realchrom {

enum class TheoryKind {
    Bpr,        // untruncated tower, all v_i allowed
    Bprn,       // truncated: v_0..v_n plus negative sigma-powers
    Tate,
    BorelCoh,
    BorelHom,
    Geometric,
};

struct TheoryId {
    TheoryKind kind = TheoryKind::Bpr;
    int n = 1;  // chromatic height; ignored for the untruncated tower

    // 2^{n+1}: the sigma-power step for everything built from v_n inverted.
    long long sigmaPeriod() const { return 1LL << (n + 1); }
    // Largest v-index a monomial of the theory may carry (-1 = unbounded).
    int supportCap() const { return kind == TheoryKind::Bpr ? -1 : n; }

    std::string name() const;
    static std::optional<TheoryId> parse(const std::string& name, int n);
};

struct NotInTheoryError : std::runtime_error {
    explicit NotInTheoryError(const std::string& what) : std::runtime_error(what) {}
};

enum class GenOrder { Free, Two };

// Result of rewriting a formal word into the chosen basis.
struct Reduction {
    bool zero = false;
    long long valuation = 0;  // power of 2 split off the basis element
    Monomial basis;           // meaningful only when !zero
};

// Rewrite a formal monomial into normal form for the given theory.  Throws
// NotInTheoryError when the word does not name an element of the theory at
// all (e.g. a v-word in the Tate theory, or a negative a-power where only
// nonnegative ones exist).
Reduction normalForm(TheoryId theory, const Monomial& word);

// Same result, but applies the rewrite rules in a randomized order.  Used to
// check that the rule system is confluent.
Reduction normalFormShuffled(TheoryId theory, const Monomial& word, std::mt19937_64& rng);

// If the word is literally a basis element of the theory, report its order.
std::optional<GenOrder> basisOrder(TheoryId theory, const Monomial& word);

}  // namespace realchrom
