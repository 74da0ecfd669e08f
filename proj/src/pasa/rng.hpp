#pragma once

#include <cmath>
#include <cstdint>

namespace pasa {

// splitmix64 finalizer; also used to derive independent per-row seeds.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
  return mix64(seed ^ mix64(index + 0x632be59bd9b4e019ULL));
}

// Small counter-based generator (splitmix64 stream). Each simulated row owns
// its own instance, which makes generation order-independent and restartable.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t x = state_;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

  // Uniform on (0, 1); never returns 0 so log() stays finite.
  double next_unit() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  double next_normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = next_unit();
    double u2 = next_unit();
    double r = std::sqrt(-2.0 * std::log(u1));
    double theta = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
  }

  // Uniform integer in [0, bound), bias-free by rejection.
  std::uint64_t next_below(std::uint64_t bound) {
    const std::uint64_t limit = ~std::uint64_t{0} - ~std::uint64_t{0} % bound;
    std::uint64_t r;
    do {
      r = next_u64();
    } while (r >= limit);
    return r % bound;
  }

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace pasa
