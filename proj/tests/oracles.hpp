// Independent reference computations used by the tests: exact big-integer
// binomials, direct weight enumeration, and a conjugacy-class quadrature for
// class functions on SU(2).  Everything here is written against first
// principles rather than the library internals it checks.

#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "ebk/models.hpp"

namespace oracles {

constexpr double kPi = 3.14159265358979323846;

using BigInt = boost::multiprecision::cpp_int;

inline BigInt big_binom(long long n, long long k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt r = 1;
  for (long long i = 1; i <= k; ++i) {
    r *= (n - k + i);
    r /= i;
  }
  return r;
}

// log of a positive big integer via its leading 63 bits
inline double log_big(const BigInt& b) {
  using boost::multiprecision::msb;
  long long top_bit = static_cast<long long>(msb(b));
  long long shift = top_bit - 62;
  if (shift < 0) shift = 0;
  auto head = static_cast<uint64_t>(BigInt(b >> shift));
  return std::log(static_cast<double>(head)) + static_cast<double>(shift) * std::log(2.0);
}

// double value of binom(n,k) * base^e0 * (1-base)^e1 through logs
inline double binom_term(long long n, long long k, double t, long long e1, long long e0) {
  double lg = log_big(big_binom(n, k)) + static_cast<double>(e1) * std::log(t) +
              static_cast<double>(e0) * std::log(1.0 - t);
  return std::exp(lg);
}

// multiplicity of an abelian weight by direct enumeration of exponent tuples
inline long long enumerate_multiplicity(const ebk::Model& m, const ebk::ActionSpec& a,
                                        const std::vector<long long>& omega, long long k) {
  std::vector<long long> d;
  for (int f = 0; f < m.factors; ++f) d.push_back(m.degree(f, k));
  long long count = 0;
  std::vector<long long> e(static_cast<size_t>(m.factors), 0);
  for (;;) {
    bool match = true;
    for (size_t r = 0; r < a.weights.size() && match; ++r) {
      long long lam = 0;
      for (int f = 0; f < m.factors; ++f) lam += a.weights[r][static_cast<size_t>(f)] * e[static_cast<size_t>(f)];
      const ebk::Rational& b = a.shift[r];
      lam -= (k / b.den) * b.num;
      if (lam != omega[r]) match = false;
    }
    if (match) ++count;
    int f = 0;
    for (; f < m.factors; ++f) {
      if (++e[static_cast<size_t>(f)] <= d[static_cast<size_t>(f)]) break;
      e[static_cast<size_t>(f)] = 0;
    }
    if (f == m.factors) break;
  }
  return count;
}

// class-function integral over SU(2) by the Weyl integration formula,
//   int f = (2/pi) int_0^pi f(t) sin^2(t) dt,
// with a composite Simpson rule; independent of the library quadrature
template <class F>
double class_integral(F f, int panels = 2000) {
  int n = 2 * panels;
  double h = kPi / n;
  double acc = 0;
  for (int i = 0; i <= n; ++i) {
    double t = i * h;
    double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    double s = std::sin(t);
    acc += w * f(t) * s * s;
  }
  return acc * (h / 3.0) * (2.0 / kPi);
}

// deterministic splitmix64 stream for test data
struct Rng {
  uint64_t state;
  explicit Rng(uint64_t seed) : state(seed) {}
  uint64_t next() {
    state += 0x9e3779b97f4a7c15ULL;
    uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  double uniform() { return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53; }
  double gauss() {
    double u = uniform(), v = uniform();
    return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * kPi * v);
  }
  std::complex<double> cgauss() { return {gauss(), gauss()}; }
};

}  // namespace oracles
