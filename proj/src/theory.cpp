#include "realchrom/theory.hpp"

#include <algorithm>
#include <array>
#include <map>

#include "check_internal.hpp"

namespace realchrom {

namespace {

long long mod(long long x, long long m) {
    long long r = x % m;
    return r < 0 ? r + m : r;
}

[[noreturn]] void reject(const std::string& what) { throw NotInTheoryError(what); }

// Mutable rewrite state; `v` never holds index 0 (that lives in r0).
struct RewriteState {
    std::map<int, long long> v;
    long long r0 = 0;
    long long s = 0;
    long long t = 0;
    long long val = 0;
    bool zero = false;

    bool hasV() const { return r0 > 0 || !v.empty(); }
    int minIdx() const {  // smallest v-index present, counting v0
        if (r0 > 0) return 0;
        RC_CHECK(!v.empty(), "minIdx on v-free state");
        return v.begin()->first;
    }
};

bool isFirstSummandKind(TheoryKind k) {
    return k == TheoryKind::Bpr || k == TheoryKind::Bprn || k == TheoryKind::BorelCoh ||
           k == TheoryKind::BorelHom;
}

// Membership screening: throws NotInTheoryError unless the word names an
// element (possibly zero) of the theory.
void validate(TheoryId th, const Monomial& w) {
    for (auto& [i, e] : w.vexp()) {
        if (e < 0) reject("negative v-exponent names no element");
        if (th.supportCap() >= 0 && i > th.supportCap())
            reject("v" + std::to_string(i) + " is not a class of " + th.name() + " at height " +
                   std::to_string(th.n));
    }
    long long s = w.sexp();
    long long t = w.aexp();
    long long P = th.sigmaPeriod();

    if (th.kind == TheoryKind::Tate) {
        if (!w.vexp().empty()) reject("v-classes have no nonzero image in " + th.name());
        if (mod(s, P) != 0) reject("sigma-power must be divisible by " + std::to_string(P));
        return;
    }
    if (th.kind == TheoryKind::Geometric) {
        if (!w.vexp().empty()) reject("v-classes have no nonzero image in " + th.name());
        if (s > 0) reject("positive sigma-powers do not exist in " + th.name());
        if (mod(s, P) != 0) reject("sigma-power must be divisible by " + std::to_string(P));
        return;
    }
    RC_CHECK(isFirstSummandKind(th.kind), "unhandled theory kind");

    long long r0 = w.vexpAt(0);
    int minPos = -1;  // smallest positive v-index, if any
    for (auto& [i, e] : w.vexp()) {
        (void)e;
        if (i > 0) {
            minPos = i;
            break;
        }
    }

    if (minPos >= 0) {
        if (r0 > 0) {
            if (mod(s, 2) != 0) reject("odd sigma-power on a v0-divisible word");
        } else if (mod(s, 1LL << (minPos + 1)) != 0) {
            reject("sigma-power must be divisible by 2^(min v-index + 1)");
        }
    } else if (r0 > 0) {
        if (mod(s, 2) != 0) reject("odd sigma-power on a v0-divisible word");
    } else if (s != 0) {
        switch (th.kind) {
            case TheoryKind::Bprn:
                if (s > 0 || mod(s, P) != 0)
                    reject("bare sigma-powers exist only as negative multiples of " +
                           std::to_string(P));
                break;
            case TheoryKind::BorelCoh:
                if (mod(s, P) != 0)
                    reject("bare sigma-powers exist only as multiples of " + std::to_string(P));
                break;
            default:
                reject("bare sigma-powers do not exist in " + th.name());
        }
    }

    if (t < 0) {
        bool pureA = w.vexp().empty() && s == 0;
        if (!(th.kind == TheoryKind::BorelHom && pureA))
            reject("negative a-power names no element of " + th.name());
    }
}

RewriteState stateOf(const Monomial& w) {
    RewriteState st;
    for (auto& [i, e] : w.vexp()) {
        if (i == 0)
            st.r0 = e;
        else
            st.v[i] = e;
    }
    st.s = w.sexp();
    st.t = w.aexp();
    return st;
}

Reduction finish(const RewriteState& st) {
    if (st.zero) return {true, 0, Monomial()};
    Monomial m;
    if (st.r0 > 0) m.setV(0, st.r0);
    for (auto& [i, e] : st.v) m.setV(i, e);
    m.setSexp(st.s);
    m.setAexp(st.t);
    return {false, st.val, m};
}

// The four rewrite rules.  Each returns true when it changed the state.

bool ruleStripPair(TheoryId, RewriteState& st) {
    if (st.r0 < 2) return false;
    st.r0 -= 1;
    st.val += 1;
    return true;
}

bool ruleStripLone(TheoryId th, RewriteState& st) {
    if (st.r0 != 1) return false;
    bool strip = false;
    if (!st.v.empty())
        strip = mod(st.s, 1LL << (st.v.begin()->first + 1)) == 0;
    else if (st.s == 0)
        strip = true;
    else if (th.kind == TheoryKind::BorelCoh && mod(st.s, th.sigmaPeriod()) == 0)
        strip = true;  // the sigma-power exists on its own here, absorbing v0
    if (!strip) return false;
    st.r0 = 0;
    st.val += 1;
    return true;
}

bool ruleAnnihilate(TheoryId, RewriteState& st) {
    if (!st.hasV()) return false;
    int mi = st.minIdx();
    if (st.t < (1LL << (mi + 1)) - 1) return false;
    st.zero = true;
    return true;
}

bool ruleTorsionKill(TheoryId, RewriteState& st) {
    if (st.val < 1 || st.t < 1) return false;
    st.zero = true;
    return true;
}

using Rule = bool (*)(TheoryId, RewriteState&);
constexpr std::array<Rule, 4> kRules = {ruleStripPair, ruleStripLone, ruleAnnihilate,
                                        ruleTorsionKill};

}  // namespace

std::string TheoryId::name() const {
    switch (kind) {
        case TheoryKind::Bpr: return "bpr";
        case TheoryKind::Bprn: return "bprn";
        case TheoryKind::Tate: return "tate";
        case TheoryKind::BorelCoh: return "borelcoh";
        case TheoryKind::BorelHom: return "borelhom";
        case TheoryKind::Geometric: return "geometric";
    }
    return "?";
}

std::optional<TheoryId> TheoryId::parse(const std::string& name, int n) {
    if (n < 0) return std::nullopt;
    TheoryId id;
    id.n = n;
    if (name == "bpr")
        id.kind = TheoryKind::Bpr;
    else if (name == "bprn")
        id.kind = TheoryKind::Bprn;
    else if (name == "tate")
        id.kind = TheoryKind::Tate;
    else if (name == "borelcoh")
        id.kind = TheoryKind::BorelCoh;
    else if (name == "borelhom")
        id.kind = TheoryKind::BorelHom;
    else if (name == "geometric")
        id.kind = TheoryKind::Geometric;
    else
        return std::nullopt;
    return id;
}

Reduction normalForm(TheoryId theory, const Monomial& word) {
    validate(theory, word);
    if (theory.kind == TheoryKind::Tate || theory.kind == TheoryKind::Geometric) {
        Monomial m = Monomial::sigma(word.sexp()) * Monomial::a(word.aexp());
        return {false, 0, m};
    }
    RewriteState st = stateOf(word);
    // Deterministic pass: strips first, then the two kill rules.
    while (ruleStripPair(theory, st)) {
    }
    ruleStripLone(theory, st);
    if (!st.zero) ruleAnnihilate(theory, st);
    if (!st.zero) ruleTorsionKill(theory, st);
    return finish(st);
}

Reduction normalFormShuffled(TheoryId theory, const Monomial& word, std::mt19937_64& rng) {
    validate(theory, word);
    if (theory.kind == TheoryKind::Tate || theory.kind == TheoryKind::Geometric) {
        Monomial m = Monomial::sigma(word.sexp()) * Monomial::a(word.aexp());
        return {false, 0, m};
    }
    RewriteState st = stateOf(word);
    std::array<Rule, 4> rules = kRules;
    while (!st.zero) {
        std::shuffle(rules.begin(), rules.end(), rng);
        bool fired = false;
        for (Rule r : rules) {
            if (r(theory, st)) {
                fired = true;
                break;
            }
        }
        if (!fired) break;
    }
    return finish(st);
}

std::optional<GenOrder> basisOrder(TheoryId theory, const Monomial& word) {
    Reduction r;
    try {
        r = normalForm(theory, word);
    } catch (const NotInTheoryError&) {
        return std::nullopt;
    }
    if (r.zero || r.valuation != 0 || r.basis != word) return std::nullopt;

    if (theory.kind == TheoryKind::Tate || theory.kind == TheoryKind::Geometric)
        return GenOrder::Two;
    if (word.vexp().empty() && word.sexp() != 0) {
        // bare sigma-power families
        if (theory.kind == TheoryKind::Bprn) return GenOrder::Two;
        RC_CHECK(theory.kind == TheoryKind::BorelCoh, "bare sigma-power in wrong theory");
        return word.aexp() == 0 ? GenOrder::Free : GenOrder::Two;
    }
    return word.aexp() == 0 ? GenOrder::Free : GenOrder::Two;
}

}  // namespace realchrom
