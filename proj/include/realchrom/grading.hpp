#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

namespace realchrom {

// RO(Z/2)-graded degree k + l*alpha, stored as the integer pair (k, l).
struct Bidegree {
    long long k = 0;
    long long l = 0;

    friend Bidegree operator+(Bidegree a, Bidegree b) { return {a.k + b.k, a.l + b.l}; }
    friend Bidegree operator-(Bidegree a, Bidegree b) { return {a.k - b.k, a.l - b.l}; }
    friend bool operator==(Bidegree a, Bidegree b) { return a.k == b.k && a.l == b.l; }
    friend bool operator!=(Bidegree a, Bidegree b) { return !(a == b); }
    friend bool operator<(Bidegree a, Bidegree b) {
        return a.l != b.l ? a.l < b.l : a.k < b.k;
    }

    // Text form "<k>+<l>A" with explicit signs, e.g. "5+-3A".
    std::string text() const;
};

struct ParseError : std::runtime_error {
    std::size_t offset;  // byte offset into the input
    ParseError(std::size_t off, const std::string& what)
        : std::runtime_error(what + " (at byte " + std::to_string(off) + ")"), offset(off) {}
};

// Formal monomial v_R * sigma^s * a^t with sparse integer exponents.
// Exponents are 64-bit; parsing and degree arithmetic reject overflow.
class Monomial {
public:
    Monomial() = default;

    static Monomial unit() { return Monomial(); }
    static Monomial v(int i, long long e = 1);
    static Monomial sigma(long long e);
    static Monomial a(long long e);

    const std::map<int, long long>& vexp() const { return v_; }
    long long vexpAt(int i) const;
    long long sexp() const { return s_; }
    long long aexp() const { return a_; }

    void setV(int i, long long e);   // e == 0 erases the entry
    void setSexp(long long s) { s_ = s; }
    void setAexp(long long t) { a_ = t; }

    bool isUnit() const { return v_.empty() && s_ == 0 && a_ == 0; }

    // Smallest v-index occurring, if any.
    std::optional<int> minIndex() const;

    // Exponent-wise product; throws std::overflow_error on overflow.
    Monomial operator*(const Monomial& rhs) const;

    // k = sum r_i (2^i - 1) - s,  l = sum r_i (2^i - 1) + s - t.
    Bidegree dimension() const;

    // sum r_i (2^i - 1); the underlying nonequivariant degree is twice this.
    long long halfWeight() const;
    long long milnorWeight() const;

    bool operator==(const Monomial& rhs) const {
        return v_ == rhs.v_ && s_ == rhs.s_ && a_ == rhs.a_;
    }
    bool operator!=(const Monomial& rhs) const { return !(*this == rhs); }
    // Lexicographic on (v-exponent list, sexp, aexp); total and deterministic.
    bool operator<(const Monomial& rhs) const;

    // Canonical text: space-separated "v<i>[^e]"... "s[^j]" "a[^t]", exponent 1
    // elided, empty word prints "1".
    std::string text() const;

    // Liberal in token order and repetition; canonical on output.  Throws
    // ParseError with a byte offset on malformed input.
    static Monomial parse(const std::string& text);

private:
    std::map<int, long long> v_;  // index -> exponent, no zero entries
    long long s_ = 0;
    long long a_ = 0;
};

inline long long checkedAdd(long long a, long long b) {
    long long r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("exponent overflow");
    return r;
}
inline long long checkedMul(long long a, long long b) {
    long long r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("exponent overflow");
    return r;
}

}  // namespace realchrom
