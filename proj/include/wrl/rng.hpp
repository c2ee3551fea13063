#pragma once

#include <cmath>
#include <cstdint>

namespace wrl {

// xorshift64* generator with explicit double conversion; identical streams on
// every platform, which the byte-identical-report contract relies on.
struct DetRng {
  uint64_t state;
  explicit DetRng(uint64_t seed) : state(seed ? seed : 0x9e3779b97f4a7c15ull) {}

  uint64_t next() {
    uint64_t x = state;
    x ^= x >> 12;
    x ^= x << 25;
    x ^= x >> 27;
    state = x;
    return x * 0x2545f4914f6cdd1dull;
  }
  double u01() { return double(next() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * u01(); }
  double normal() {
    const double a = u01() + 1e-300, b = u01();
    return std::sqrt(-2.0 * std::log(a)) *
           std::cos(6.283185307179586476925287 * b);
  }
};

}  // namespace wrl
