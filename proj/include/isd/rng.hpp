#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace isd {

// Seeded generator with pinned-down output values: the mt19937_64 sequence
// is specified by the standard, and the derived doubles avoid the
// implementation-defined std:: distributions so identical seeds give
// identical buffers on every platform.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t next_u64() { return engine_(); }

  // [0, 1)
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // [-1, 1)
  double uniform_pm1() { return uniform() * 2.0 - 1.0; }

  // standard normal (Box-Muller)
  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double r = std::sqrt(-2.0 * std::log(1.0 - uniform()));
    const double theta = 2.0 * M_PI * uniform();
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
  }

  // [0, bound), unbiased
  uint64_t uniform_int(uint64_t bound) {
    const uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    uint64_t x;
    do {
      x = next_u64();
    } while (x >= limit);
    return x % bound;
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace isd
