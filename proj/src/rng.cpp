#include "facreg/rng.hpp"

#include <cmath>
#include <numbers>

#include "facreg/error.hpp"

namespace facreg {

std::uint64_t mix_seed(std::uint64_t master, std::uint64_t index) {
  // splitmix64 finalizer applied to the index-offset master seed.
  std::uint64_t x = master + (index + 1) * 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

double Rng::normal() {
  // 1 - u1 lies in (0, 1], keeping the log argument positive.
  const double u1 = uniform01();
  const double u2 = uniform01();
  const double radius = std::sqrt(-2.0 * std::log(1.0 - u1));
  return radius * std::cos(2.0 * std::numbers::pi * u2);
}

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) throw BadValue("Rng::below: n must be positive");
  // Reject the low partial block so every residue is equally likely.
  const std::uint64_t limit = (0 - n) % n;  // 2^64 mod n
  std::uint64_t x = gen_();
  while (x < limit) x = gen_();
  return x % n;
}

void Rng::shuffle_prefix(std::vector<int>& idx, int k) {
  const int n = static_cast<int>(idx.size());
  if (k < 0 || k > n) throw BadValue("Rng::shuffle_prefix: bad prefix size");
  for (int i = 0; i < k; ++i) {
    const int j = i + static_cast<int>(below(static_cast<std::uint64_t>(n - i)));
    std::swap(idx[i], idx[j]);
  }
}

}  // namespace facreg
