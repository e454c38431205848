#include "mrplab/rng.h"

#include <algorithm>

namespace mrplab {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Rng::Rng(std::uint64_t seed) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(splitmix64(seed)),
                    static_cast<std::uint32_t>(splitmix64(seed) >> 32)};
  engine_.seed(seq);
}

Rng Rng::substream(std::uint64_t root, std::uint64_t index) {
  return Rng(splitmix64(splitmix64(root) ^ splitmix64(index + 0x632be59bd9b4e019ULL)));
}

Rng Rng::substream(std::uint64_t root, std::uint64_t a, std::uint64_t b) {
  return substream(splitmix64(root ^ splitmix64(a)), b);
}

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

std::size_t Rng::pick(std::span<const double> cumulative) {
  const double u = uniform() * cumulative.back();
  auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
  if (it == cumulative.end()) --it;
  return static_cast<std::size_t>(it - cumulative.begin());
}

}  // namespace mrplab
