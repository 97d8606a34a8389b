#pragma once

#include <cstdint>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace toeplitz {

// Exact rational on 64-bit components. Densities and period counts in this
// library stay far below the overflow range; intermediates go through
// __int128 and are checked on the way back down.
struct Rat {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rat() = default;
    Rat(std::int64_t n) : num(n), den(1) {}
    Rat(std::int64_t n, std::int64_t d) : num(n), den(d) { normalize(); }

    void normalize() {
        if (den == 0) throw std::invalid_argument("Rat: zero denominator");
        if (den < 0) { num = -num; den = -den; }
        std::int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
        if (num == 0) den = 1;
    }

    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

    static Rat make_checked(__int128 n, __int128 d) {
        if (d < 0) { n = -n; d = -d; }
        // reduce before the range check
        __int128 x = n < 0 ? -n : n, y = d;
        while (y) { __int128 t = x % y; x = y; y = t; }
        if (x > 1) { n /= x; d /= x; }
        constexpr __int128 lim = INT64_MAX;
        if ((n > lim) || (-n > lim) || (d > lim))
            throw std::overflow_error("Rat: value out of 64-bit range");
        Rat r;
        r.num = static_cast<std::int64_t>(n);
        r.den = static_cast<std::int64_t>(d);
        if (r.num == 0) r.den = 1;
        return r;
    }

    friend Rat operator+(const Rat& a, const Rat& b) {
        return Rat::make_checked(static_cast<__int128>(a.num) * b.den + static_cast<__int128>(b.num) * a.den,
                            static_cast<__int128>(a.den) * b.den);
    }
    friend Rat operator-(const Rat& a, const Rat& b) {
        return Rat::make_checked(static_cast<__int128>(a.num) * b.den - static_cast<__int128>(b.num) * a.den,
                            static_cast<__int128>(a.den) * b.den);
    }
    friend Rat operator*(const Rat& a, const Rat& b) {
        return Rat::make_checked(static_cast<__int128>(a.num) * b.num,
                            static_cast<__int128>(a.den) * b.den);
    }
    friend Rat operator/(const Rat& a, const Rat& b) {
        if (b.num == 0) throw std::invalid_argument("Rat: division by zero");
        return Rat::make_checked(static_cast<__int128>(a.num) * b.den,
                            static_cast<__int128>(a.den) * b.num);
    }
    friend bool operator==(const Rat& a, const Rat& b) { return a.num == b.num && a.den == b.den; }
    friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
    friend bool operator<(const Rat& a, const Rat& b) {
        return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
    }
    friend bool operator<=(const Rat& a, const Rat& b) { return a == b || a < b; }
    friend bool operator>(const Rat& a, const Rat& b) { return b < a; }
    friend bool operator>=(const Rat& a, const Rat& b) { return b <= a; }

    friend std::ostream& operator<<(std::ostream& os, const Rat& r) {
        os << r.num;
        if (r.den != 1) os << '/' << r.den;
        return os;
    }
};

}  // namespace toeplitz
