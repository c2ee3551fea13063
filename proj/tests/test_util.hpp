#pragma once

#include <cstdint>
#include <cmath>

// Deterministic xorshift-based RNG for property tests; identical streams on
// every platform, unlike std distributions.
struct TestRng {
  uint64_t state;
  explicit TestRng(uint64_t seed) : state(seed ? seed : 0x9e3779b97f4a7c15ull) {}

  uint64_t next() {
    uint64_t x = state;
    x ^= x << 13;
    x ^= x >> 7;
    x ^= x << 17;
    return state = x;
  }
  double u01() { return double(next() >> 11) * 0x1.0p-53; }
  double sym() { return 2.0 * u01() - 1.0; }  // uniform in [-1, 1]
  double normal() {
    const double a = u01() + 1e-300, b = u01();
    return std::sqrt(-2.0 * std::log(a)) * std::cos(6.283185307179586 * b);
  }
};
