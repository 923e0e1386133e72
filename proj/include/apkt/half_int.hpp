#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace apkt {

// x stored as 2x
struct HalfInt {
    long long tw = 0;

    constexpr HalfInt() = default;
    static constexpr HalfInt twice(long long t) { HalfInt h; h.tw = t; return h; }
    static constexpr HalfInt of(long long n) { return twice(2 * n); }

    constexpr bool is_integer() const { return tw % 2 == 0; }

    // [x], rounding toward minus infinity
    constexpr long long floor() const {
        return tw >= 0 ? tw / 2 : -((-tw + 1) / 2);
    }

    constexpr long long to_int() const {
        if (tw % 2 != 0) throw std::domain_error("half-integer is not integral");
        return tw / 2;
    }

    constexpr HalfInt operator+(HalfInt o) const { return twice(tw + o.tw); }
    constexpr HalfInt operator-(HalfInt o) const { return twice(tw - o.tw); }
    constexpr HalfInt operator-() const { return twice(-tw); }
    constexpr HalfInt operator+(long long n) const { return twice(tw + 2 * n); }
    constexpr HalfInt operator-(long long n) const { return twice(tw - 2 * n); }
    constexpr HalfInt operator*(long long n) const { return twice(tw * n); }
    HalfInt& operator+=(HalfInt o) { tw += o.tw; return *this; }

    constexpr auto operator<=>(const HalfInt&) const = default;
    constexpr bool operator==(const HalfInt&) const = default;
    constexpr bool operator==(long long n) const { return tw == 2 * n; }
    constexpr auto operator<=>(long long n) const { return tw <=> 2 * n; }

    std::string str() const {
        if (tw % 2 == 0) return std::to_string(tw / 2);
        return std::to_string(tw) + "/2";
    }

    static HalfInt parse(const std::string& s) {
        auto slash = s.find('/');
        if (slash == std::string::npos) return of(std::stoll(s));
        if (s.substr(slash + 1) != "2") throw std::invalid_argument("bad half-integer: " + s);
        return twice(std::stoll(s.substr(0, slash)));
    }
};

// (-1)^n for any integer n
constexpr int sign_pow(long long n) { return (n % 2 == 0) ? 1 : -1; }

} // namespace apkt
