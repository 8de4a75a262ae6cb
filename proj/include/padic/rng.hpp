#pragma once

#include <cstdint>
#include <random>

namespace padic {

// splitmix64 finaliser; used to derive independent substreams from one seed.
std::uint64_t splitmix64(std::uint64_t x);

// Deterministic, portable stream: std::mt19937_64 is bit-exact across
// conforming implementations, and bounded draws use rejection sampling so
// results do not depend on the standard library's distribution internals.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(splitmix64(seed)) {}

  static Rng substream(std::uint64_t seed, std::uint64_t tag) {
    return Rng(seed + 0x9e3779b97f4a7c15ull * (tag + 1));
  }

  std::uint64_t next() { return gen_(); }

  // Uniform on [0, n); draws at or above the largest multiple of n in the
  // 64-bit range are rejected.
  std::uint64_t below(std::uint64_t n) {
    if (n < 2) return 0;
    const std::uint64_t rem = (0 - n) % n;  // 2^64 mod n
    const std::uint64_t limit = 0 - rem;
    for (;;) {
      std::uint64_t w = gen_();
      if (rem == 0 || w < limit) return w % n;
    }
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace padic
