#pragma once

// Exact rational arithmetic for score comparisons. Scores and bonus tables
// are small rationals (decimal inputs, integer bonuses), so 64-bit
// numerator/denominator with 128-bit cross multiplication is ample.

#include <cstdint>
#include <numeric>
#include <string>

#include "errors.hpp"

namespace csm {

struct Rat {
  long long num = 0;
  long long den = 1;  // always > 0

  constexpr Rat() = default;
  Rat(long long n) : num(n), den(1) {}
  Rat(long long n, long long d) : num(n), den(d) { normalize(); }

  void normalize() {
    if (den == 0) throw InternalError("rational with zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  friend Rat operator+(const Rat& a, const Rat& b) {
    return Rat(a.num * b.den + b.num * a.den, a.den * b.den);
  }
  friend Rat operator-(const Rat& a, const Rat& b) {
    return Rat(a.num * b.den - b.num * a.den, a.den * b.den);
  }
  friend Rat operator*(const Rat& a, const Rat& b) { return Rat(a.num * b.num, a.den * b.den); }

  // Exact three-way comparison via 128-bit cross multiplication.
  static int cmp(const Rat& a, const Rat& b) {
    __int128 lhs = static_cast<__int128>(a.num) * b.den;
    __int128 rhs = static_cast<__int128>(b.num) * a.den;
    if (lhs < rhs) return -1;
    if (lhs > rhs) return 1;
    return 0;
  }
  friend bool operator==(const Rat& a, const Rat& b) { return cmp(a, b) == 0; }
  friend bool operator!=(const Rat& a, const Rat& b) { return cmp(a, b) != 0; }
  friend bool operator<(const Rat& a, const Rat& b) { return cmp(a, b) < 0; }
  friend bool operator<=(const Rat& a, const Rat& b) { return cmp(a, b) <= 0; }
  friend bool operator>(const Rat& a, const Rat& b) { return cmp(a, b) > 0; }
  friend bool operator>=(const Rat& a, const Rat& b) { return cmp(a, b) >= 0; }

  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
};

// Parses "12", "-3", "0.85", "-0.125", or "n/d" exactly.
inline Rat parse_rational(const std::string& text) {
  if (text.empty()) throw ParseError("empty numeric string");
  auto fail = [&] { throw ParseError("malformed numeric string '" + text + "'"); };
  std::size_t slash = text.find('/');
  if (slash != std::string::npos) {
    if (slash == 0 || slash + 1 >= text.size()) fail();
    try {
      long long n = std::stoll(text.substr(0, slash));
      long long d = std::stoll(text.substr(slash + 1));
      if (d == 0) fail();
      return Rat(n, d);
    } catch (const std::logic_error&) {
      fail();
    }
  }
  std::size_t pos = 0;
  bool negative = false;
  if (text[pos] == '+' || text[pos] == '-') {
    negative = text[pos] == '-';
    ++pos;
  }
  long long intpart = 0, fracnum = 0, fracden = 1;
  bool any_digit = false;
  while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
    intpart = intpart * 10 + (text[pos] - '0');
    ++pos;
    any_digit = true;
  }
  if (pos < text.size() && text[pos] == '.') {
    ++pos;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
      if (fracden > 100'000'000'000'000'000LL) fail();  // keep within 64 bits
      fracnum = fracnum * 10 + (text[pos] - '0');
      fracden *= 10;
      ++pos;
      any_digit = true;
    }
  }
  if (pos != text.size() || !any_digit) fail();
  Rat r = Rat(intpart) + Rat(fracnum, fracden);
  if (negative) r = Rat(0) - r;
  return r;
}

// Emits an exact decimal when the denominator is 2^a * 5^b, else "n/d".
inline std::string to_string(const Rat& r) {
  long long d = r.den;
  long long twos = 0, fives = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++twos;
  }
  while (d % 5 == 0) {
    d /= 5;
    ++fives;
  }
  if (d != 1) return std::to_string(r.num) + "/" + std::to_string(r.den);
  // Scale so the denominator becomes a power of ten.
  __int128 num = r.num;
  long long digits = twos > fives ? twos : fives;
  for (long long i = fives; i < twos; ++i) num *= 5;
  for (long long i = twos; i < fives; ++i) num *= 2;
  bool negative = num < 0;
  if (negative) num = -num;
  std::string raw;
  if (num == 0) raw = "0";
  while (num > 0) {
    raw.insert(raw.begin(), static_cast<char>('0' + static_cast<int>(num % 10)));
    num /= 10;
  }
  while (static_cast<long long>(raw.size()) <= digits) raw.insert(raw.begin(), '0');
  std::string out = raw;
  if (digits > 0) {
    out = raw.substr(0, raw.size() - digits) + "." + raw.substr(raw.size() - digits);
    while (out.back() == '0') out.pop_back();
    if (out.back() == '.') out.pop_back();
  }
  return (negative ? "-" : "") + out;
}

}  // namespace csm
