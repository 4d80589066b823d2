#include "realchrom/grading.hpp"

#include <string_view>

#include "check_internal.hpp"

namespace realchrom {

namespace {

long long checkedSub(long long a, long long b) {
    long long r;
    if (__builtin_sub_overflow(a, b, &r)) throw std::overflow_error("exponent overflow");
    return r;
}

// Weight 2^i - 1 of one v_i, guarded so sums stay inside 64 bits.
long long vWeight(int i) {
    if (i < 0 || i >= 62) throw std::overflow_error("v-index out of range for degree arithmetic");
    return (1LL << i) - 1;
}

[[noreturn]] void fail(std::size_t off, const std::string& what) { throw ParseError(off, what); }

// Decimal integer, optional leading '-', no leading zeros, no 64-bit
// overflow.  Offsets in errors are absolute positions in the full input.
long long parseInt(std::string_view s, std::size_t base, bool allowNegative) {
    std::size_t i = 0;
    bool neg = false;
    if (i < s.size() && s[i] == '-') {
        if (!allowNegative) fail(base + i, "negative number not allowed here");
        neg = true;
        ++i;
    }
    if (i >= s.size()) fail(base + i, "missing digits");
    if (s[i] == '0' && s.size() - i > 1) fail(base + i, "leading zero");
    long long val = 0;
    for (; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9') fail(base + i, "expected digit");
        val = checkedMul(val, 10);
        val = checkedAdd(val, s[i] - '0');
    }
    return neg ? -val : val;
}

long long parseExponent(std::string_view s, std::size_t base) {
    long long e;
    try {
        e = parseInt(s, base, true);
    } catch (const std::overflow_error&) {
        fail(base, "exponent out of range");
    }
    if (e == 0) fail(base, "zero exponent");
    return e;
}

}  // namespace

std::string Bidegree::text() const {
    return std::to_string(k) + "+" + std::to_string(l) + "A";
}

Monomial Monomial::v(int i, long long e) {
    if (i < 0) throw std::invalid_argument("negative v-index");
    Monomial m;
    m.setV(i, e);
    return m;
}

Monomial Monomial::sigma(long long e) {
    Monomial m;
    m.s_ = e;
    return m;
}

Monomial Monomial::a(long long e) {
    Monomial m;
    m.a_ = e;
    return m;
}

long long Monomial::vexpAt(int i) const {
    auto it = v_.find(i);
    return it == v_.end() ? 0 : it->second;
}

void Monomial::setV(int i, long long e) {
    if (i < 0) throw std::invalid_argument("negative v-index");
    if (e == 0)
        v_.erase(i);
    else
        v_[i] = e;
}

std::optional<int> Monomial::minIndex() const {
    if (v_.empty()) return std::nullopt;
    return v_.begin()->first;
}

Monomial Monomial::operator*(const Monomial& rhs) const {
    Monomial out = *this;
    for (auto& [i, e] : rhs.v_) out.setV(i, checkedAdd(out.vexpAt(i), e));
    out.s_ = checkedAdd(out.s_, rhs.s_);
    out.a_ = checkedAdd(out.a_, rhs.a_);
    return out;
}

long long Monomial::halfWeight() const {
    long long w = 0;
    for (auto& [i, e] : v_) w = checkedAdd(w, checkedMul(e, vWeight(i)));
    return w;
}

long long Monomial::milnorWeight() const { return checkedMul(2, halfWeight()); }

Bidegree Monomial::dimension() const {
    long long w = halfWeight();
    Bidegree b;
    b.k = checkedSub(w, s_);
    b.l = checkedSub(checkedAdd(w, s_), a_);
    return b;
}

bool Monomial::operator<(const Monomial& rhs) const {
    if (v_ != rhs.v_) return v_ < rhs.v_;
    if (s_ != rhs.s_) return s_ < rhs.s_;
    return a_ < rhs.a_;
}

std::string Monomial::text() const {
    std::string out;
    auto append = [&](const std::string& tok) {
        if (!out.empty()) out += ' ';
        out += tok;
    };
    for (auto& [i, e] : v_) {
        RC_CHECK(e != 0, "stored zero v-exponent");
        append("v" + std::to_string(i) + (e == 1 ? "" : "^" + std::to_string(e)));
    }
    if (s_ != 0) append(s_ == 1 ? "s" : "s^" + std::to_string(s_));
    if (a_ != 0) append(a_ == 1 ? "a" : "a^" + std::to_string(a_));
    return out.empty() ? "1" : out;
}

Monomial Monomial::parse(const std::string& text) {
    if (text.empty()) fail(0, "empty monomial");
    if (text == "1") return unit();

    Monomial m;
    std::size_t pos = 0;
    while (true) {
        std::size_t end = text.find(' ', pos);
        std::size_t stop = end == std::string::npos ? text.size() : end;
        std::string_view tok(text.data() + pos, stop - pos);
        if (tok.empty()) fail(pos, "empty token");

        std::size_t caret = tok.find('^');
        std::string_view head = tok.substr(0, caret == std::string_view::npos ? tok.size() : caret);
        long long e = 1;
        if (caret != std::string_view::npos)
            e = parseExponent(tok.substr(caret + 1), pos + caret + 1);

        try {
            if (head.size() >= 2 && head[0] == 'v') {
                long long idx = parseInt(head.substr(1), pos + 1, false);
                if (idx > (1LL << 30)) fail(pos + 1, "v-index out of range");
                m.setV(static_cast<int>(idx), checkedAdd(m.vexpAt(static_cast<int>(idx)), e));
            } else if (head == "s") {
                m.s_ = checkedAdd(m.s_, e);
            } else if (head == "a") {
                m.a_ = checkedAdd(m.a_, e);
            } else {
                fail(pos, "unexpected token '" + std::string(tok) + "'");
            }
        } catch (const std::overflow_error&) {
            fail(pos, "exponent out of range");
        }

        if (end == std::string::npos) break;
        pos = end + 1;
        if (pos >= text.size()) fail(pos, "trailing space");
    }
    return m;
}

}  // namespace realchrom
