#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace wigner {

/// Exact rational arithmetic for interval endpoints and partition geometry.
///
/// Interval overlap and grid-index resolution are done on exact integers;
/// conversion to double happens only at the final arithmetic step of an
/// evaluation. Intermediate products go through __int128 so the small
/// denominators used here (dyadic refinements of rational endpoints) never
/// overflow.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(long long value) : num_(value), den_(1) {}
    Rational(long long num, long long den) : num_(num), den_(den) {
        if (den_ == 0) throw std::invalid_argument("Rational: zero denominator");
        normalize();
    }

    long long num() const { return num_; }
    long long den() const { return den_; }

    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    Rational operator-() const { return Rational(-num_, den_, already_normalized_tag{}); }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return from_i128(static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_,
                         static_cast<__int128>(a.den_) * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return from_i128(static_cast<__int128>(a.num_) * b.num_,
                         static_cast<__int128>(a.den_) * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw std::invalid_argument("Rational: division by zero");
        return from_i128(static_cast<__int128>(a.num_) * b.den_,
                         static_cast<__int128>(a.den_) * b.num_);
    }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return static_cast<__int128>(a.num_) * b.den_ < static_cast<__int128>(b.num_) * a.den_;
    }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    /// floor(r * n) on exact integers; requires r >= 0 here.
    long long floor_mul(long long n) const {
        __int128 p = static_cast<__int128>(num_) * n;
        __int128 q = den_;
        __int128 f = p / q;
        if (p < 0 && p % q != 0) f -= 1;
        return static_cast<long long>(f);
    }

    std::string str() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

private:
    struct already_normalized_tag {};
    Rational(long long num, long long den, already_normalized_tag) : num_(num), den_(den) {}

    void normalize() {
        if (den_ < 0) { num_ = -num_; den_ = -den_; }
        long long g = std::gcd(num_ < 0 ? -num_ : num_, den_);
        if (g > 1) { num_ /= g; den_ /= g; }
        if (num_ == 0) den_ = 1;
    }

    static Rational from_i128(__int128 num, __int128 den) {
        if (den < 0) { num = -num; den = -den; }
        __int128 a = num < 0 ? -num : num;
        __int128 b = den;
        while (b != 0) { __int128 t = a % b; a = b; b = t; }
        if (a > 1) { num /= a; den /= a; }
        if (num == 0) den = 1;
        constexpr __int128 lim = static_cast<__int128>(INT64_MAX);
        if (num > lim || num < -lim || den > lim)
            throw std::overflow_error("Rational: 64-bit overflow after reduction");
        Rational r;
        r.num_ = static_cast<long long>(num);
        r.den_ = static_cast<long long>(den);
        return r;
    }

    long long num_;
    long long den_;
};

/// Half-open interval (a,b] with exact rational endpoints, 0 <= a < b <= 1.
struct IntervalQ {
    Rational a;
    Rational b;

    IntervalQ(Rational lo, Rational hi) : a(lo), b(hi) {
        if (!(Rational(0) <= a && a < b && b <= Rational(1)))
            throw std::invalid_argument("IntervalQ: need 0 <= a < b <= 1, got (" + a.str() + "," + b.str() + "]");
    }

    static IntervalQ of(long long an, long long ad, long long bn, long long bd) {
        return IntervalQ(Rational(an, ad), Rational(bn, bd));
    }
    static IntervalQ unit() { return of(0, 1, 1, 1); }

    Rational length() const { return b - a; }

    /// Length of the overlap with another interval (0 when disjoint).
    Rational overlap_length(const IntervalQ& o) const {
        Rational lo = a > o.a ? a : o.a;
        Rational hi = b < o.b ? b : o.b;
        return hi > lo ? hi - lo : Rational(0);
    }

    bool operator==(const IntervalQ& o) const { return a == o.a && b == o.b; }

    std::string str() const { return "(" + a.str() + "," + b.str() + "]"; }
};

/// Finite partition a = a_0 < a_1 < ... < a_l = b of a target interval.
struct Partition {
    std::vector<Rational> points;

    explicit Partition(std::vector<Rational> pts) : points(std::move(pts)) {
        if (points.size() < 2) throw std::invalid_argument("Partition: need at least two points");
        for (std::size_t j = 1; j < points.size(); ++j)
            if (!(points[j - 1] < points[j]))
                throw std::invalid_argument("Partition: points must be strictly increasing");
    }

    std::size_t cells() const { return points.size() - 1; }
    IntervalQ cell(std::size_t j) const { return IntervalQ(points[j], points[j + 1]); }

    Rational mesh() const {
        Rational m(0);
        for (std::size_t j = 1; j < points.size(); ++j) {
            Rational d = points[j] - points[j - 1];
            if (d > m) m = d;
        }
        return m;
    }

    /// 2^level equal cells of the target interval.
    static Partition dyadic(const IntervalQ& target, int level) {
        if (level < 0 || level > 30) throw std::invalid_argument("Partition: dyadic level out of range");
        long long cells = 1LL << level;
        std::vector<Rational> pts;
        pts.reserve(static_cast<std::size_t>(cells) + 1);
        Rational len = target.length();
        for (long long j = 0; j <= cells; ++j)
            pts.push_back(target.a + len * Rational(j, cells));
        return Partition(std::move(pts));
    }
};

/// Nested dyadic refinements, levels lo..hi inclusive (strictly decreasing mesh).
inline std::vector<Partition> dyadic_refinements(const IntervalQ& target, int lo, int hi) {
    if (lo > hi) throw std::invalid_argument("dyadic_refinements: lo > hi");
    std::vector<Partition> out;
    out.reserve(static_cast<std::size_t>(hi - lo + 1));
    for (int k = lo; k <= hi; ++k) out.push_back(Partition::dyadic(target, k));
    return out;
}

}  // namespace wigner
