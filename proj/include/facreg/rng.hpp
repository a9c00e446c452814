#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace facreg {

// Derives a replicate seed from a master seed and a replicate index with a
// splitmix64-style mix. Fixed for the life of the project: changing it
// changes every simulated dataset.
std::uint64_t mix_seed(std::uint64_t master, std::uint64_t index);

// Deterministic random source. The raw stream is std::mt19937_64, whose
// output sequence is fixed by the C++ standard; all distribution transforms
// are implemented here (not via std::*_distribution, whose algorithms are
// implementation-defined) so identical seeds give identical datasets under
// any conforming toolchain.
//
// Transform contracts:
//   uniform01 : (x >> 11) * 2^-53, in [0, 1)
//   normal    : Box-Muller on (1-u1, u2]; always consumes exactly two
//               uniforms, no caching of the companion deviate
//   below(n)  : unbiased rejection sampling over [0, n)
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t raw() { return gen_(); }

  double uniform01() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform01();
  }

  double normal();

  std::uint64_t below(std::uint64_t n);

  // Randomizes the first k entries of idx into a uniform k-prefix of a
  // permutation (partial Fisher-Yates).
  void shuffle_prefix(std::vector<int>& idx, int k);

 private:
  std::mt19937_64 gen_;
};

}  // namespace facreg
