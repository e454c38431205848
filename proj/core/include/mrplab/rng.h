#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <span>

namespace mrplab {

std::uint64_t splitmix64(std::uint64_t x);

// Seeded stream. Substreams are derived from (root seed, index) so replicates
// can be generated in any order or on any thread.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed);
  static Rng substream(std::uint64_t root, std::uint64_t index);
  static Rng substream(std::uint64_t root, std::uint64_t a, std::uint64_t b);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()() { return engine_(); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform();
  // Index drawn from a cumulative table whose last entry is the total mass.
  std::size_t pick(std::span<const double> cumulative);

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace mrplab
