// Small exact rational type used for linearization shifts and named points.

#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace ebk {

// Reduced fraction with positive denominator.  Weight bookkeeping must be
// exact, so shifts and named point coordinates are carried as rationals and
// converted to floating point only at evaluation boundaries.
struct Rational {
  long long num = 0;
  long long den = 1;

  Rational() = default;
  Rational(long long n) : num(n), den(1) {}
  Rational(long long n, long long d) : num(n), den(d) { reduce(); }

  void reduce() {
    if (den == 0) throw std::invalid_argument("Rational: zero denominator");
    if (den < 0) { num = -num; den = -den; }
    long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) { num /= g; den /= g; }
  }

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  bool is_integer() const { return den == 1; }
  bool is_zero() const { return num == 0; }

  Rational operator+(const Rational& o) const { return Rational(num * o.den + o.num * den, den * o.den); }
  Rational operator-(const Rational& o) const { return Rational(num * o.den - o.num * den, den * o.den); }
  Rational operator*(const Rational& o) const { return Rational(num * o.num, den * o.den); }
  Rational operator*(long long s) const { return Rational(num * s, den); }
  Rational operator-() const { Rational r; r.num = -num; r.den = den; return r; }
  bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
  bool operator!=(const Rational& o) const { return !(*this == o); }

  std::string str() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
  }

  // Parses "p", "p/q", or a decimal like "0.25" with at most 9 fractional digits.
  static Rational parse(const std::string& s);
};

inline Rational Rational::parse(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("Rational: empty string");
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    long long n = std::stoll(s.substr(0, slash));
    long long d = std::stoll(s.substr(slash + 1));
    return Rational(n, d);
  }
  auto dot = s.find('.');
  if (dot != std::string::npos) {
    std::string frac = s.substr(dot + 1);
    if (frac.size() > 9) throw std::invalid_argument("Rational: too many decimal digits: " + s);
    long long scale = 1;
    for (size_t i = 0; i < frac.size(); ++i) scale *= 10;
    std::string head = s.substr(0, dot);
    bool neg = !head.empty() && head[0] == '-';
    long long whole = (head.empty() || head == "-" || head == "+") ? 0 : std::stoll(head);
    long long f = frac.empty() ? 0 : std::stoll(frac);
    long long n = (neg ? -1 : 1) * ((neg ? -whole : whole) * scale + f);
    return Rational(n, scale);
  }
  return Rational(std::stoll(s), 1);
}

}  // namespace ebk
