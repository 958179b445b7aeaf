#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace rsm {

/// One step of splitmix64. Used to expand seeds and as a mixer.
std::uint64_t splitmix64_next(std::uint64_t& state);

/// xoshiro256** 1.0, seeded through splitmix64. Every random choice in the
/// toolkit (stream orders, generators, experiment seeds) flows through this
/// generator so that identical seeds reproduce identical artifacts bit for
/// bit on every platform.
class Xoshiro256ss {
public:
  explicit Xoshiro256ss(std::uint64_t seed);

  std::uint64_t next();

  /// Uniform in [0, bound), unbiased via rejection sampling. bound >= 1.
  std::uint64_t bounded(std::uint64_t bound);

  /// Uniform in [0, 1) with 53 random bits.
  double unit();

private:
  std::array<std::uint64_t, 4> s_{};
};

/// A permutation of stream positions 0..m-1 plus a read cursor.
/// seed records how the permutation was made; 0 means "as given".
struct StreamOrder {
  std::vector<std::uint32_t> permutation;
  std::size_t cursor{0};
  std::uint64_t seed{0};

  static StreamOrder as_given(std::size_t m);
  std::size_t size() const { return permutation.size(); }
};

/// Fisher-Yates shuffle of 0..m-1 driven by Xoshiro256ss(seed).
StreamOrder permute(std::size_t m, std::uint64_t seed);

bool is_permutation_of_range(const std::vector<std::uint32_t>& p);

}  // namespace rsm
