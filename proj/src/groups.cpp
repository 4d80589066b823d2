#include "realchrom/groups.hpp"

#include <algorithm>
#include <cstdlib>
#include <json.hpp>

#include "check_internal.hpp"
#include "groups_internal.hpp"
#include "partitions_internal.hpp"
#include "realchrom/ss.hpp"

namespace realchrom {

namespace {

using detail::Parts;

long long mod(long long x, long long m) {
    long long r = x % m;
    return r < 0 ? r + m : r;
}

long long floorDiv(long long a, long long b) {
    RC_CHECK(b > 0, "floorDiv by nonpositive");
    long long q = a / b;
    return (a % b != 0 && a < 0) ? q - 1 : q;
}

long long ceilDiv(long long a, long long b) { return -floorDiv(-a, b); }

Monomial buildWord(long long r0, const Parts& p, long long s, long long t) {
    Monomial m;
    if (r0 > 0) m.setV(0, r0);
    for (auto& [i, e] : p) m.setV(i, e);
    m.setSexp(s);
    m.setAexp(t);
    return m;
}

using GenVec = std::vector<std::pair<Monomial, GenOrder>>;

// The v-word part of the inventory (plus the pure a-powers).  `literalBc`
// switches Borel cohomology to the reading where the sigma-power summand is
// a separate free polynomial block rather than glued along v0-multiples.
void firstSummandGens(TheoryId th, Bidegree b, GenVec& out, bool literalBc) {
    const long long k = b.k, l = b.l;
    if (std::llabs(k) + std::llabs(l) > 10'000'000)
        throw ResourceLimitError("bidegree out of range: |k| + |l| exceeds 10000000");
    const int cap = th.supportCap();
    const int hi = cap < 0 ? 61 : cap;
    const bool absorb = th.kind == TheoryKind::BorelCoh && !literalBc;
    auto guardSize = [&out] {
        if (out.size() > 5'000'000)
            throw ResourceLimitError("more than 5000000 generators in one bidegree");
    };

    // v0-carried words: t = 0 forced, weight pinned by k + l
    if (k + l >= 0 && (k + l) % 2 == 0) {
        const long long W = (k + l) / 2;
        const long long s = W - k;
        if (mod(s, 2) == 0) {
            if (W == 0) {
                if (s != 0 && !(absorb && mod(s, th.sigmaPeriod()) == 0))
                    out.push_back({buildWord(1, {}, s, 0), GenOrder::Free});
            } else {
                detail::forEachPartition(W, 1, hi, [&](const Parts& p) {
                    if (mod(s, 1LL << (detail::partsMin(p) + 1)) != 0) {
                        out.push_back({buildWord(1, p, s, 0), GenOrder::Free});
                        guardSize();
                    }
                });
            }
        }
    }

    // v0-free words, grouped by minimal index m; the loop bound is where the
    // sigma-divisibility constraint can no longer meet the weight interval.
    for (int m = 1; m <= hi; ++m) {
        if ((1LL << m) > 2 * (std::llabs(k) + std::llabs(l)) + 4) break;
        const long long wm = (1LL << m) - 1;
        const long long period = 1LL << (m + 1);
        const long long wLo = std::max(wm, ceilDiv(k + l, 2));
        const long long wHi = floorDiv(k + l, 2) + wm;
        for (long long W = wLo; W <= wHi; ++W) {
            const long long t = 2 * W - (k + l);
            const long long s = W - k;
            if (mod(s, period) != 0) continue;
            detail::forEachPartitionMinExact(W, m, hi, [&](const Parts& p) {
                out.push_back({buildWord(0, p, s, t), t == 0 ? GenOrder::Free : GenOrder::Two});
                guardSize();
            });
        }
    }

    // pure a-powers
    if (k == 0 && l <= 0)
        out.push_back({Monomial::a(-l), l == 0 ? GenOrder::Free : GenOrder::Two});
}

void secondSummandGens(TheoryId th, Bidegree b, GenVec& out, bool literalBc) {
    const long long k = b.k, l = b.l;
    const long long P = th.sigmaPeriod();
    const long long t = -k - l;
    switch (th.kind) {
        case TheoryKind::Bprn:
            if (k >= P && mod(k, P) == 0 && t >= 0)
                out.push_back({buildWord(0, {}, -k, t), GenOrder::Two});
            break;
        case TheoryKind::BorelCoh:
            if (k != 0 && mod(k, P) == 0 && t >= 0) {
                GenOrder ord = (t == 0 && !literalBc) ? GenOrder::Free : GenOrder::Two;
                out.push_back({buildWord(0, {}, -k, t), ord});
            }
            break;
        case TheoryKind::BorelHom:
            if (k == 0 && l >= 1) out.push_back({Monomial::a(-l), GenOrder::Two});
            break;
        default:
            break;
    }
}

void sortGens(GenVec& gens) {
    std::sort(gens.begin(), gens.end(), [](const auto& x, const auto& y) {
        if (x.second != y.second) return x.second == GenOrder::Free;
        return x.first < y.first;
    });
}

GroupSummary summarize(GenVec gens) {
    sortGens(gens);
    GroupSummary g;
    for (auto& [w, ord] : gens) {
        (void)w;
        if (ord == GenOrder::Free)
            ++g.freeRank;
        else
            ++g.z2Count;
    }
    g.generators = std::move(gens);
    return g;
}

GroupSummary groupAtImpl(TheoryId th, Bidegree b, bool literalBc) {
    GenVec gens;
    const long long P = th.sigmaPeriod();
    switch (th.kind) {
        case TheoryKind::Tate:
            if (mod(b.k, P) == 0)
                gens.push_back({buildWord(0, {}, -b.k, -b.k - b.l), GenOrder::Two});
            break;
        case TheoryKind::Geometric:
            if (b.k >= 0 && mod(b.k, P) == 0)
                gens.push_back({buildWord(0, {}, -b.k, -b.k - b.l), GenOrder::Two});
            break;
        default:
            firstSummandGens(th, b, gens, literalBc);
            secondSummandGens(th, b, gens, literalBc);
            break;
    }
    return summarize(std::move(gens));
}

nlohmann::ordered_json rowJson(TheoryId th, Bidegree b, const GroupSummary& g) {
    nlohmann::ordered_json j;
    j["theory"] = th.name();
    if (th.kind == TheoryKind::Bpr)
        j["n"] = nullptr;
    else
        j["n"] = th.n;
    j["k"] = b.k;
    j["l"] = b.l;
    j["free_rank"] = g.freeRank;
    j["z2_count"] = g.z2Count;
    auto arr = nlohmann::ordered_json::array();
    for (auto& [w, ord] : g.generators) {
        (void)ord;
        arr.push_back(w.text());
    }
    j["generators"] = arr;
    return j;
}

std::string rowCsv(TheoryId th, Bidegree b, const GroupSummary& g) {
    std::string out = th.name() + ",";
    if (th.kind != TheoryKind::Bpr) out += std::to_string(th.n);
    out += "," + std::to_string(b.k) + "," + std::to_string(b.l) + ",";
    out += std::to_string(g.freeRank) + "," + std::to_string(g.z2Count) + ",";
    bool first = true;
    for (auto& [w, ord] : g.generators) {
        (void)ord;
        if (!first) out += ';';
        out += w.text();
        first = false;
    }
    return out + "\n";
}

constexpr const char* kCsvHeader = "theory,n,k,l,free_rank,z2_count,generators\n";

std::string rowText(Bidegree b, const GroupSummary& g, bool twisted) {
    std::string label = twisted ? "dim " + std::to_string(b.k) + " (twist " +
                                      std::to_string(b.l) + ")"
                                : b.text();
    return label + "\t" + g.text() + "\n";
}

}  // namespace

std::string GroupSummary::text() const {
    if (trivial()) return "0";
    std::string out;
    for (auto& [w, ord] : generators) {
        if (!out.empty()) out += " + ";
        out += (ord == GenOrder::Free ? "Z(2) {" : "Z/2 {") + w.text() + "}";
    }
    return out;
}

GroupSummary groupAt(TheoryId theory, Bidegree b) { return groupAtImpl(theory, b, false); }

GroupSummary groupAtLiteralBorelCoh(TheoryId theory, Bidegree b) {
    RC_CHECK(theory.kind == TheoryKind::BorelCoh, "literal reading is a Borel-cohomology notion");
    return groupAtImpl(theory, b, true);
}

std::vector<std::pair<Bidegree, GroupSummary>> twistSlice(TheoryId theory, long long l,
                                                          long long kmin, long long kmax) {
    std::vector<std::pair<Bidegree, GroupSummary>> out;
    for (long long k = kmin; k <= kmax; ++k) {
        Bidegree b{k, l};
        out.push_back({b, groupAt(theory, b)});
    }
    return out;
}

std::vector<CorollaryEntry> corollaryView(TheoryId theory, long long l, long long kmin,
                                          long long kmax, Mode mode) {
    if (theory.kind != TheoryKind::Bprn)
        throw std::invalid_argument("congruence view applies to the truncated theory");
    std::vector<CorollaryEntry> out;
    const int n = theory.n;
    const long long P = theory.sigmaPeriod();

    auto push = [&](Monomial w, Bidegree dim, SlotTag tag, std::string cls, bool second) {
        out.push_back({std::move(w), dim, tag, std::move(cls), second});
    };

    // empty Milnor word: the pure a-power column at dimension 0
    if (l <= 0 && kmin <= 0 && 0 <= kmax) {
        long long t = -l;
        push(Monomial::a(t), {0, l}, t == 0 ? SlotTag::Free : SlotTag::Two,
             "t = " + std::to_string(t), false);
    }

    // lone v0 words (weight 0)
    {
        long long t = mod(-l, 2);
        long long dim = -l - t;
        long long s = l + t;
        if (dim >= kmin && dim <= kmax && s != 0) {
            SlotTag tag = t == 0 ? SlotTag::Free : SlotTag::Dead;  // period 2: t=1 is the killed slot
            push(buildWord(1, {}, s, t), {dim, l}, tag, "t = " + std::to_string(t) + " mod 2",
                 false);
        }
    }

    // weighted Milnor words, both with and without the v0 carrier
    const long long wMax = std::max<long long>(0, floorDiv(kmax + l, 2) + (1LL << n) + 1);
    for (long long W = 1; W <= wMax; ++W) {
        detail::forEachPartition(W, 1, n, [&](const Parts& p) {
            for (int r0 = 0; r0 <= 1; ++r0) {
                const int mi = r0 == 1 ? 0 : detail::partsMin(p);
                const long long period = 1LL << (mi + 1);
                const long long t = mod(W - l, period);
                const long long dim = 2 * W - l - t;
                if (dim < kmin || dim > kmax) continue;
                const long long s = l + t - W;
                if (r0 == 1) {
                    // carrier words need a sigma-power not expressible alone
                    if (mod(s, 2) != 0) continue;
                    if (mod(s, 1LL << (detail::partsMin(p) + 1)) == 0) continue;
                }
                SlotTag tag = t == 0            ? SlotTag::Free
                              : t == period - 1 ? SlotTag::Dead
                                                : SlotTag::Two;
                push(buildWord(r0, p, s, t), {dim, l}, tag,
                     "t = " + std::to_string(t) + " mod " + std::to_string(period), false);
            }
        });
    }

    // negative sigma-power block: count floor(-l / 2^{n+1}) either way
    if (l < 0) {
        const long long count = (-l) / P;
        for (long long m = 1; m <= count; ++m) {
            if (mode == Mode::Theorem) {
                long long dim = P * m;
                if (dim < kmin || dim > kmax) continue;
                push(buildWord(0, {}, -P * m, -l - P * m), {dim, l}, SlotTag::Two,
                     "second summand", true);
            } else {
                long long dim = -P * m;
                if (dim < kmin || dim > kmax) continue;
                // label-only mirror; the word is the duality relabel
                push(buildWord(0, {}, P * m, -P * m - l), {dim, l}, SlotTag::Two,
                     "second summand", true);
            }
        }
    }

    std::sort(out.begin(), out.end(), [](const CorollaryEntry& x, const CorollaryEntry& y) {
        if (x.dimension.k != y.dimension.k) return x.dimension.k < y.dimension.k;
        if (x.secondSummand != y.secondSummand) return !x.secondSummand;
        return x.word < y.word;
    });
    return out;
}

std::vector<TableRecord> makeTable(TheoryId theory, long long kmin, long long kmax,
                                   long long lmin, long long lmax) {
    std::vector<TableRecord> rows;
    for (long long l = lmin; l <= lmax; ++l)
        for (long long k = kmin; k <= kmax; ++k) {
            Bidegree b{k, l};
            rows.push_back({b, groupAt(theory, b)});
        }
    return rows;
}

std::string renderTable(TheoryId theory, const std::vector<TableRecord>& rows,
                        OutputFormat format, bool twistedLabels) {
    switch (format) {
        case OutputFormat::Text: {
            std::string out;
            for (auto& r : rows) out += rowText(r.b, r.g, twistedLabels);
            return out;
        }
        case OutputFormat::Csv: {
            std::string out = kCsvHeader;
            for (auto& r : rows) out += rowCsv(theory, r.b, r.g);
            return out;
        }
        case OutputFormat::Json: {
            auto arr = nlohmann::ordered_json::array();
            for (auto& r : rows) arr.push_back(rowJson(theory, r.b, r.g));
            return arr.dump(2) + "\n";
        }
    }
    RC_CHECK(false, "unhandled format");
    return {};
}

std::string renderGroup(TheoryId theory, Bidegree b, const GroupSummary& g,
                        OutputFormat format) {
    switch (format) {
        case OutputFormat::Text:
            return g.text() + "\n";
        case OutputFormat::Csv:
            return std::string(kCsvHeader) + rowCsv(theory, b, g);
        case OutputFormat::Json:
            return rowJson(theory, b, g).dump(2) + "\n";
    }
    RC_CHECK(false, "unhandled format");
    return {};
}

}  // namespace realchrom
