#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace llmoea {

// Seedable generator with explicit draw helpers. std::mt19937_64 output is
// fixed by the standard, and the conversions below avoid the std
// distributions, whose results differ between library implementations.
// Same seed + same draw sequence must give bit-identical runs everywhere.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0,1) from the top 53 bits.
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Uniform on the open interval (0,1); exact zeros are redrawn.
  double uniform_open01() {
    double r = uniform01();
    while (r == 0.0) r = uniform01();
    return r;
  }

  // Uniform index in [0,n) via multiply-shift; n must be > 0.
  std::size_t uniform_index(std::size_t n) {
    return static_cast<std::size_t>(
        (static_cast<unsigned __int128>(engine_()) * n) >> 64);
  }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace llmoea
