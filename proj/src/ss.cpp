#include "realchrom/ss.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>

#include "check_internal.hpp"
#include "groups_internal.hpp"
#include "partitions_internal.hpp"

namespace realchrom {

namespace {

constexpr int kEmptyMin = 127;  // stands in for +infinity
constexpr int8_t kDead = -1;
constexpr int8_t kFree = 0;
constexpr int8_t kTwo = 1;

int val2(long long j) {
    RC_CHECK(j != 0, "2-adic valuation of zero");
    unsigned long long u = j < 0 ? 0ULL - static_cast<unsigned long long>(j)
                                 : static_cast<unsigned long long>(j);
    int v = 0;
    while (!(u & 1)) {
        u >>= 1;
        ++v;
    }
    return v;
}

Monomial cellName(const detail::Parts& vparts, long long j, long long t) {
    Monomial m;
    for (auto& [i, e] : vparts) m.setV(i, e);
    m.setSexp(j);
    m.setAexp(t);
    return m;
}

}  // namespace

struct PageWindow::Impl {
    SSConfig cfg;
    int stage = 0;  // next stage to apply
    int maxStage = 0;
    int maxIdx = 0;
    long long wPad = 0;
    long long kLo = 0, kHi = 0;

    struct PartInfo {
        detail::Parts parts;  // ascending index
        long long weight = 0;
        int minIdx = kEmptyMin;
        std::vector<int> bump;  // bump[s]: index of parts + e_s, -1 if past the cap
    };
    std::vector<PartInfo> parts;

    struct Line {
        long long l = 0;
        std::vector<int8_t> order;
        std::vector<int8_t> rep;
    };
    std::vector<Line> lines;

    // geometric descent model: one v-adjoined column over the closed form
    struct GeoCell {
        long long m = 0, r = 0;
        bool alive = true;
    };
    std::vector<std::vector<GeoCell>> geoLines;
    long long geoKMax = 0;

    long long kCount() const { return kHi - kLo + 1; }
    std::size_t cellIndex(std::size_t pi, long long k) const {
        return pi * static_cast<std::size_t>(kCount()) + static_cast<std::size_t>(k - kLo);
    }

    bool isGeo() const { return cfg.kind == SSKind::Geometric; }
    bool isBorel() const { return cfg.kind == SSKind::Borel; }

    void buildParts();
    void buildLines();
    void applyStage(int s);
    void applyGeoStage();
};

void PageWindow::Impl::buildParts() {
    std::map<detail::Parts, int> index;
    for (long long W = 0; W <= wPad; ++W) {
        detail::forEachPartition(W, 1, maxIdx, [&](const detail::Parts& p) {
            PartInfo info;
            info.parts = p;
            std::sort(info.parts.begin(), info.parts.end());
            info.weight = W;
            info.minIdx = info.parts.empty() ? kEmptyMin : info.parts.front().first;
            index[info.parts] = static_cast<int>(parts.size());
            parts.push_back(std::move(info));
            if (parts.size() > 5'000'000)
                throw ResourceLimitError("window needs more than 5000000 weight partitions");
        });
    }
    for (auto& info : parts) {
        info.bump.assign(static_cast<std::size_t>(maxStage) + 1, -1);
        for (int s = 1; s <= maxStage; ++s) {
            if (info.weight + (1LL << s) - 1 > wPad) continue;
            detail::Parts q = info.parts;
            auto it = std::find_if(q.begin(), q.end(), [&](auto& pr) { return pr.first == s; });
            if (it != q.end())
                it->second += 1;
            else {
                q.push_back({s, 1});
                std::sort(q.begin(), q.end());
            }
            auto found = index.find(q);
            RC_CHECK(found != index.end(), "bumped partition missing from the table");
            info.bump[static_cast<std::size_t>(s)] = found->second;
        }
    }
}

void PageWindow::Impl::buildLines() {
    const long long cells =
        static_cast<long long>(parts.size()) * kCount() * (2 * cfg.L + 1);
    if (cells > 120'000'000)
        throw ResourceLimitError("window of " + std::to_string(cells) +
                                 " cells exceeds the 120000000-cell limit");
    lines.resize(static_cast<std::size_t>(2 * cfg.L + 1));
    for (std::size_t li = 0; li < lines.size(); ++li) {
        Line& line = lines[li];
        line.l = -cfg.L + static_cast<long long>(li);
        line.order.assign(parts.size() * static_cast<std::size_t>(kCount()), kFree);
        line.rep.assign(line.order.size(), 0);
        if (isBorel()) {
            for (std::size_t pi = 0; pi < parts.size(); ++pi) {
                const long long W = parts[pi].weight;
                for (long long k = kLo; k <= kHi; ++k)
                    if (2 * W - (k + line.l) < 0) line.order[cellIndex(pi, k)] = kDead;
            }
        }
    }
}

// One pairing stage.  Every differential here has a monomial matrix, so
// resolving source/target pairs in place is its Smith reduction; the only
// reachable cases are a fresh free source (survives carrying one extra 2)
// and torsion-to-torsion cancellation.
void PageWindow::Impl::applyStage(int s) {
    for (Line& line : lines) {
        const long long l = line.l;
        for (std::size_t pi = 0; pi < parts.size(); ++pi) {
            const PartInfo& info = parts[pi];
            const long long W = info.weight;
            for (long long k = kLo; k <= kHi; ++k) {
                const std::size_t idx = cellIndex(pi, k);
                const int8_t o = line.order[idx];
                if (o == kDead) continue;
                const long long j = W - k;
                const long long t = 2 * W - (k + l);
                if (s == 0) {
                    if (j % 2 != 0) {
                        line.order[idx] = kDead;  // fires; coefficient 2 kills the source
                    } else {
                        const bool sourceExists = !isBorel() || t >= 1;
                        if (sourceExists) line.order[idx] = kTwo;
                    }
                    continue;
                }
                if (j != 0 && val2(j) == s && s <= info.minIdx) {
                    // fires: the target is the torsion class one column left
                    if (o == kTwo)
                        line.order[idx] = kDead;
                    else
                        line.rep[idx] += 1;
                } else if (info.minIdx == s && (j == 0 || val2(j) > s)) {
                    // target slot: dies precisely when its source cell exists
                    const bool sourceExists = !isBorel() || t - ((1LL << (s + 1)) - 1) >= 0;
                    if (sourceExists) {
                        RC_CHECK(o == kTwo, "higher-stage target must be torsion");
                        line.order[idx] = kDead;
                    }
                }
            }
        }
    }
}

void PageWindow::Impl::applyGeoStage() {
    // d_1 multiplies by the image of v_n with Leibniz coefficient m mod 2
    for (auto& line : geoLines)
        for (auto& c : line)
            if (c.alive && (c.m % 2 != 0 || c.r >= 1)) c.alive = false;
}

PageWindow::PageWindow(SSConfig cfg) : impl_(std::make_unique<Impl>()) {
    Impl& im = *impl_;
    im.cfg = cfg;
    if (cfg.K < 0 || cfg.L < 0) throw std::invalid_argument("window bounds must be nonnegative");
    switch (cfg.kind) {
        case SSKind::Geometric: {
            if (cfg.n < 1)
                throw std::invalid_argument("geometric descent starts one height below; need n >= 1");
            if (cfg.n > 40) throw ResourceLimitError("height above 40 unsupported");
            im.maxStage = 0;
            const long long base = 1LL << cfg.n;  // sigma step of the height-(n-1) input
            im.geoKMax = cfg.K + 2 * base + cfg.extraPad;
            im.geoLines.resize(static_cast<std::size_t>(2 * cfg.L + 1));
            long long total = 0;
            for (std::size_t li = 0; li < im.geoLines.size(); ++li) {
                for (long long m = 0; m * base <= im.geoKMax; ++m)
                    for (long long r = 0; m * base + r * (2 * base - 1) <= im.geoKMax; ++r)
                        im.geoLines[li].push_back({m, r, true});
                total += static_cast<long long>(im.geoLines[li].size());
                if (total > 120'000'000)
                    throw ResourceLimitError("geometric window exceeds the 120000000-cell limit");
            }
            break;
        }
        case SSKind::Tate:
        case SSKind::Borel: {
            if (cfg.n < 0) throw std::invalid_argument("height must be nonnegative");
            if (cfg.n > 16)
                throw ResourceLimitError("truncation height above 16 exceeds the engine limits");
            im.maxIdx = cfg.n;
            im.maxStage = cfg.n;
            im.wPad = (cfg.K + cfg.L) / 2 + (1LL << cfg.n) + cfg.kPad();
            im.kLo = -cfg.K - cfg.kPad();
            im.kHi = cfg.K + cfg.kPad();
            im.buildParts();
            im.buildLines();
            break;
        }
        case SSKind::TateFullTower: {
            int q = 1;
            while (!((1LL << q) - 1 >= (cfg.K + cfg.L) / 2 + 2 &&
                     (1LL << q) > cfg.K + q + 5 + cfg.extraPad)) {
                ++q;
                RC_CHECK(q < 40, "tower stage bound runaway");
            }
            im.maxIdx = q;
            im.maxStage = q;
            im.wPad = (1LL << q) - 1;
            const long long pad = q + 4 + cfg.extraPad;
            im.kLo = -cfg.K - pad;
            im.kHi = cfg.K + pad;
            // every tracked bare sigma-power must fire by stage q
            RC_CHECK((1LL << (q + 1)) > im.wPad + cfg.K + pad, "tower stage bound too small");
            im.buildParts();
            im.buildLines();
            break;
        }
    }
}

PageWindow::~PageWindow() = default;

int PageWindow::page() const {
    const Impl& im = *impl_;
    if (im.isGeo()) return im.stage == 0 ? 1 : 2;
    return static_cast<int>((1LL << (im.stage + 1)) - 1);
}

int PageWindow::stage() const { return impl_->stage; }

bool PageWindow::exhausted() const { return impl_->stage > impl_->maxStage; }

const SSConfig& PageWindow::config() const { return impl_->cfg; }

void PageWindow::turnPage() {
    RC_CHECK(!exhausted(), "no pages left to turn");
    if (impl_->isGeo())
        impl_->applyGeoStage();
    else
        impl_->applyStage(impl_->stage);
    impl_->stage += 1;
}

void PageWindow::runToEnd() {
    while (!exhausted()) turnPage();
}

std::map<Bidegree, std::vector<CellRecord>> PageWindow::survivors() const {
    const Impl& im = *impl_;
    std::map<Bidegree, std::vector<CellRecord>> out;
    if (im.isGeo()) {
        const long long base = 1LL << im.cfg.n;
        for (std::size_t li = 0; li < im.geoLines.size(); ++li) {
            const long long l = -im.cfg.L + static_cast<long long>(li);
            for (const auto& c : im.geoLines[li]) {
                if (!c.alive) continue;
                const long long k = c.m * base + c.r * (2 * base - 1);
                if (k > im.cfg.K) continue;
                const long long u = -c.m * base + c.r * (2 * base - 1) - l;
                detail::Parts vp;
                if (c.r > 0) vp.push_back({im.cfg.n, c.r});
                CellRecord rec{{k, l}, u, GenOrder::Two, 0, cellName(vp, -c.m * base, u)};
                out[rec.b].push_back(std::move(rec));
            }
        }
    } else {
        for (const auto& line : im.lines) {
            for (std::size_t pi = 0; pi < im.parts.size(); ++pi) {
                const auto& info = im.parts[pi];
                for (long long k = std::max(im.kLo, -im.cfg.K);
                     k <= std::min(im.kHi, im.cfg.K); ++k) {
                    const std::size_t idx = im.cellIndex(pi, k);
                    const int8_t o = line.order[idx];
                    if (o == kDead) continue;
                    const long long j = info.weight - k;
                    const long long t = 2 * info.weight - (k + line.l);
                    CellRecord rec{{k, line.l},
                                   t,
                                   o == kFree ? GenOrder::Free : GenOrder::Two,
                                   line.rep[idx],
                                   cellName(info.parts, j, t)};
                    out[rec.b].push_back(std::move(rec));
                }
            }
        }
    }
    for (auto& [b, v] : out) {
        (void)b;
        std::sort(v.begin(), v.end(),
                  [](const CellRecord& x, const CellRecord& y) { return x.name < y.name; });
    }
    return out;
}

std::vector<RuleInstance> PageWindow::currentRules(bool padded) const {
    const Impl& im = *impl_;
    std::vector<RuleInstance> rules;
    if (exhausted()) return rules;
    const int s = im.stage;
    if (im.isGeo()) {
        const long long base = 1LL << im.cfg.n;
        for (std::size_t li = 0; li < im.geoLines.size(); ++li) {
            const long long l = -im.cfg.L + static_cast<long long>(li);
            for (const auto& c : im.geoLines[li]) {
                if (!c.alive || c.m % 2 == 0) continue;
                const long long k = c.m * base + c.r * (2 * base - 1);
                if (k > (padded ? im.geoKMax : im.cfg.K)) continue;
                const long long u = -c.m * base + c.r * (2 * base - 1) - l;
                detail::Parts sp, tp;
                if (c.r > 0) sp.push_back({im.cfg.n, c.r});
                tp.push_back({im.cfg.n, c.r + 1});
                const long long tu = -(c.m - 1) * base + (c.r + 1) * (2 * base - 1) - l;
                rules.push_back({cellName(sp, -c.m * base, u),
                                 cellName(tp, -(c.m - 1) * base, tu), 1, {k, l}});
            }
        }
        return rules;
    }
    const long long kw = padded ? im.kHi : im.cfg.K;
    for (const auto& line : im.lines) {
        for (std::size_t pi = 0; pi < im.parts.size(); ++pi) {
            const auto& info = im.parts[pi];
            for (long long k = std::max(im.kLo, -kw); k <= std::min(im.kHi, kw); ++k) {
                const std::size_t idx = im.cellIndex(pi, k);
                if (line.order[idx] == kDead) continue;
                const long long j = info.weight - k;
                const long long t = 2 * info.weight - (k + line.l);
                if (s == 0) {
                    if (j % 2 == 0) continue;
                    rules.push_back({cellName(info.parts, j, t),
                                     cellName(info.parts, j + 1, t + 1), 2, {k, line.l}});
                } else {
                    if (!(j != 0 && val2(j) == s && s <= info.minIdx)) continue;
                    detail::Parts q = info.parts;
                    auto it =
                        std::find_if(q.begin(), q.end(), [&](auto& pr) { return pr.first == s; });
                    if (it != q.end())
                        it->second += 1;
                    else {
                        q.push_back({s, 1});
                        std::sort(q.begin(), q.end());
                    }
                    rules.push_back({cellName(info.parts, j, t),
                                     cellName(q, j + (1LL << s), t + (1LL << (s + 1)) - 1), 1,
                                     {k, line.l}});
                }
            }
        }
    }
    return rules;
}

namespace {

std::string fmtOrders(const std::multiset<std::pair<long long, int>>& ms) {
    std::string out = "{";
    for (auto& [t, o] : ms) {
        if (out.size() > 1) out += ", ";
        out += "(t=" + std::to_string(t) + "," + (o == 0 ? "free" : "2") + ")";
    }
    return out + "}";
}

std::string fmtNames(const std::multiset<std::string>& ms) {
    std::string out = "{";
    for (auto& s : ms) {
        if (out.size() > 1) out += ", ";
        out += s;
    }
    return out + "}";
}

bool sameGens(const GroupSummary& x, const GroupSummary& y) {
    if (x.freeRank != y.freeRank || x.z2Count != y.z2Count) return false;
    if (x.generators.size() != y.generators.size()) return false;
    for (std::size_t i = 0; i < x.generators.size(); ++i)
        if (x.generators[i].first != y.generators[i].first ||
            x.generators[i].second != y.generators[i].second)
            return false;
    return true;
}

}  // namespace

ComparisonReport compareToClosedForm(const PageWindow& ss, TheoryId theory) {
    const SSConfig& cfg = ss.config();
    const bool kindMatches =
        (cfg.kind == SSKind::Tate && theory.kind == TheoryKind::Tate) ||
        (cfg.kind == SSKind::Borel && theory.kind == TheoryKind::BorelCoh) ||
        (cfg.kind == SSKind::Geometric && theory.kind == TheoryKind::Geometric);
    if (!kindMatches || (theory.kind != TheoryKind::Bpr && theory.n != cfg.n))
        throw std::invalid_argument("spectral sequence and theory do not match");
    if (!ss.exhausted()) throw std::invalid_argument("comparison needs the final page");

    auto sur = ss.survivors();
    ComparisonReport rep;
    for (long long l = -cfg.L; l <= cfg.L; ++l) {
        for (long long k = -cfg.K; k <= cfg.K; ++k) {
            const Bidegree b{k, l};
            static const std::vector<CellRecord> kNone;
            auto it = sur.find(b);
            const auto& cells = it == sur.end() ? kNone : it->second;
            const GroupSummary g = groupAt(theory, b);
            if (cells.empty() && g.trivial()) continue;

            std::multiset<std::pair<long long, int>> em, cm;
            std::multiset<std::string> en, cn;
            long long torsion = 0;
            for (const auto& c : cells) {
                em.insert({c.filtration, c.order == GenOrder::Free ? 0 : 1});
                if (c.order != GenOrder::Free) ++torsion;
                Monomial nm = c.name;
                if (c.repVal > 0) nm = Monomial::v(0, c.repVal) * nm;
                en.insert(nm.text());
            }
            for (const auto& [w, ord] : g.generators) {
                cm.insert({w.aexp(), ord == GenOrder::Free ? 0 : 1});
                cn.insert(w.text());
            }

            ComparisonCell cc{b, CompareStatus::Agree, ""};
            if (em != cm) {
                cc.status = CompareStatus::Disagree;
                cc.detail = "orders differ: page " + fmtOrders(em) + " vs closed " + fmtOrders(cm);
                ++rep.disagreements;
            } else if (en != cn) {
                cc.status = CompareStatus::Disagree;
                cc.detail = "labels differ: page " + fmtNames(en) + " vs closed " + fmtNames(cn);
                ++rep.disagreements;
            } else if (cells.size() >= 2 && torsion >= 1) {
                cc.status = CompareStatus::ExtensionAmbiguous;
                cc.detail = "orders agree; the extension is not determined by the page";
                ++rep.ambiguous;
            }
            rep.cells.push_back(std::move(cc));
        }
    }

    if (cfg.kind == SSKind::Borel) {
        for (long long l = -cfg.L; l <= cfg.L; ++l)
            for (long long k = -cfg.K; k <= cfg.K; ++k) {
                const Bidegree b{k, l};
                if (!sameGens(groupAt(theory, b), groupAtLiteralBorelCoh(theory, b)))
                    rep.literalDiffCells.push_back(b);
            }
    }
    return rep;
}

bool allAPowers(const PageWindow& ss, std::string* firstBad) {
    for (auto& [b, cells] : ss.survivors()) {
        for (auto& c : cells) {
            if (c.name.vexp().empty() && c.name.sexp() == 0) continue;
            if (firstBad) *firstBad = c.name.text() + " at " + b.text();
            return false;
        }
    }
    return true;
}

}  // namespace realchrom
