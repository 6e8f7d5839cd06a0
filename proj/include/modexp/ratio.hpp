#pragma once

#include <charconv>
#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include "modexp/error.hpp"

namespace modexp {

using wide_int = __int128;

namespace detail {

inline wide_int wide_abs(wide_int x) { return x < 0 ? -x : x; }

inline wide_int wide_gcd(wide_int a, wide_int b) {
  a = wide_abs(a);
  b = wide_abs(b);
  while (b != 0) {
    wide_int t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline std::int64_t narrow(wide_int x) {
  if (x > INT64_MAX || x < INT64_MIN) {
    throw Error(Errc::overflow, "rational component exceeds 64 bits");
  }
  return static_cast<std::int64_t>(x);
}

inline std::string wide_to_string(wide_int x) {
  if (x == 0) return "0";
  bool neg = x < 0;
  std::string digits;
  while (x != 0) {
    int d = static_cast<int>(x % 10);
    digits.push_back(static_cast<char>('0' + (d < 0 ? -d : d)));
    x /= 10;
  }
  if (neg) digits.push_back('-');
  return {digits.rbegin(), digits.rend()};
}

}  // namespace detail

// Exact rational in lowest terms with a positive denominator. Intermediate
// products are taken in 128 bits; a result that does not fit back into 64
// bits raises Errc::overflow instead of wrapping.
class Ratio {
 public:
  constexpr Ratio() = default;
  constexpr Ratio(std::int64_t value) : num_(value), den_(1) {}  // NOLINT: implicit by intent
  Ratio(std::int64_t num, std::int64_t den) { *this = from_wide(num, den); }

  static Ratio from_wide(wide_int num, wide_int den) {
    if (den == 0) throw Error(Errc::out_of_range, "zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    wide_int g = detail::wide_gcd(num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
    Ratio r;
    r.num_ = detail::narrow(num);
    r.den_ = detail::narrow(den);
    return r;
  }

  // Accepts "7", "-7", "3/4", "-3/4" and plain decimals such as "0.25".
  static Ratio parse(std::string_view text) {
    auto fail = [&] { return Error(Errc::syntax_error, "not a rational: '" + std::string(text) + "'"); };
    if (text.empty()) throw fail();
    auto slash = text.find('/');
    if (slash != std::string_view::npos) {
      std::int64_t n = 0, d = 0;
      if (!parse_int(text.substr(0, slash), n) || !parse_int(text.substr(slash + 1), d) || d == 0) throw fail();
      return {n, d};
    }
    auto dot = text.find('.');
    if (dot != std::string_view::npos) {
      std::string_view whole = text.substr(0, dot);
      std::string_view frac = text.substr(dot + 1);
      bool neg = !whole.empty() && whole.front() == '-';
      if (neg) whole.remove_prefix(1);
      if (frac.empty() || frac.size() > 17) throw fail();
      std::int64_t w = 0, f = 0;
      if (!whole.empty() && !parse_int(whole, w)) throw fail();
      if (w < 0 || !parse_int(frac, f) || f < 0) throw fail();
      std::int64_t scale = 1;
      for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
      Ratio r = from_wide(static_cast<wide_int>(w) * scale + f, scale);
      return neg ? -r : r;
    }
    std::int64_t n = 0;
    if (!parse_int(text, n)) throw fail();
    return {n};
  }

  constexpr std::int64_t num() const { return num_; }
  constexpr std::int64_t den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 1; }
  int sign() const { return (num_ > 0) - (num_ < 0); }

  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  std::string str() const {
    return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
  }

  std::int64_t floor() const {
    std::int64_t q = num_ / den_;
    if (num_ % den_ != 0 && num_ < 0) --q;
    return q;
  }
  std::int64_t ceil() const { return -(-*this).floor(); }

  Ratio operator-() const { return from_wide(-static_cast<wide_int>(num_), den_); }

  friend Ratio operator+(const Ratio& a, const Ratio& b) {
    return from_wide(static_cast<wide_int>(a.num_) * b.den_ + static_cast<wide_int>(b.num_) * a.den_,
                     static_cast<wide_int>(a.den_) * b.den_);
  }
  friend Ratio operator-(const Ratio& a, const Ratio& b) { return a + (-b); }
  friend Ratio operator*(const Ratio& a, const Ratio& b) {
    return from_wide(static_cast<wide_int>(a.num_) * b.num_, static_cast<wide_int>(a.den_) * b.den_);
  }
  friend Ratio operator/(const Ratio& a, const Ratio& b) {
    if (b.num_ == 0) throw Error(Errc::out_of_range, "division by zero");
    return from_wide(static_cast<wide_int>(a.num_) * b.den_, static_cast<wide_int>(a.den_) * b.num_);
  }
  Ratio& operator+=(const Ratio& o) { return *this = *this + o; }
  Ratio& operator-=(const Ratio& o) { return *this = *this - o; }
  Ratio& operator*=(const Ratio& o) { return *this = *this * o; }
  Ratio& operator/=(const Ratio& o) { return *this = *this / o; }

  friend bool operator==(const Ratio& a, const Ratio& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
  friend std::strong_ordering operator<=>(const Ratio& a, const Ratio& b) {
    wide_int lhs = static_cast<wide_int>(a.num_) * b.den_;
    wide_int rhs = static_cast<wide_int>(b.num_) * a.den_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  friend std::ostream& operator<<(std::ostream& os, const Ratio& r) { return os << r.str(); }

 private:
  static bool parse_int(std::string_view s, std::int64_t& out) {
    if (s.empty()) return false;
    if (s.front() == '+') s.remove_prefix(1);
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && ptr == s.data() + s.size();
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

inline Ratio min(const Ratio& a, const Ratio& b) { return b < a ? b : a; }
inline Ratio max(const Ratio& a, const Ratio& b) { return a < b ? b : a; }
inline Ratio abs(const Ratio& a) { return a.sign() < 0 ? -a : a; }

// Smallest k >= 0 with 2^k * x >= 1, i.e. ceil(log2(1/x)) for 0 < x <= 1.
inline int ceil_log2_inverse(const Ratio& x) {
  if (x.sign() <= 0) throw Error(Errc::out_of_range, "ceil_log2_inverse needs a positive argument");
  int k = 0;
  wide_int scaled = x.num();
  while (scaled < x.den()) {
    scaled *= 2;
    ++k;
  }
  return k;
}

// Largest s >= 0 with s*s <= x.
inline std::int64_t floor_sqrt(const Ratio& x) {
  if (x.sign() < 0) throw Error(Errc::out_of_range, "floor_sqrt of a negative value");
  std::int64_t lo = 0, hi = 1;
  auto fits = [&](std::int64_t s) {
    return static_cast<wide_int>(s) * s * x.den() <= static_cast<wide_int>(x.num());
  };
  while (fits(hi)) hi *= 2;
  while (hi - lo > 1) {
    std::int64_t mid = lo + (hi - lo) / 2;
    (fits(mid) ? lo : hi) = mid;
  }
  return lo;
}

// Ratio extended with a single +infinity point, used where an expansion
// constant degenerates (every cut has an empty side in the denominator).
struct ExtendedRatio {
  bool infinite = false;
  Ratio finite{};

  static ExtendedRatio inf() { return {true, Ratio{}}; }
  static ExtendedRatio of(const Ratio& r) { return {false, r}; }

  std::string str() const { return infinite ? "inf" : finite.str(); }

  friend bool operator==(const ExtendedRatio& a, const ExtendedRatio& b) {
    return a.infinite == b.infinite && (a.infinite || a.finite == b.finite);
  }
  friend std::strong_ordering operator<=>(const ExtendedRatio& a, const ExtendedRatio& b) {
    if (a.infinite || b.infinite) return a.infinite <=> b.infinite;
    return a.finite <=> b.finite;
  }
  friend bool operator==(const ExtendedRatio& a, const Ratio& b) { return !a.infinite && a.finite == b; }
  friend std::strong_ordering operator<=>(const ExtendedRatio& a, const Ratio& b) {
    return a <=> ExtendedRatio::of(b);
  }
};

}  // namespace modexp
