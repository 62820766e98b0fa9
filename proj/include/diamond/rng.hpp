#ifndef DIAMOND_RNG_HPP
#define DIAMOND_RNG_HPP

#include <cstdint>
#include <random>

namespace diamond {

// mt19937_64 is fully specified by the standard, so the raw stream is
// reproducible across platforms.  The distribution helpers are hand-rolled
// because std::uniform_*_distribution output is implementation-defined and
// the test suite pins exact byte-level results.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t bits() { return eng_(); }

  // uniform in [0, 1) with 53 random bits
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // uniform in [0, n); modulo bias is ~n/2^64 and irrelevant at test scale
  std::uint64_t below(std::uint64_t n) { return eng_() % n; }

 private:
  std::mt19937_64 eng_;
};

// SplitMix64 step, used to derive independent per-walker seeds from one
// user-facing seed without correlated low bits.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace diamond

#endif
