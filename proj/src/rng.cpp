#include "rsmatch/rng.hpp"

#include <numeric>

namespace rsm {

namespace {

inline std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

std::uint64_t splitmix64_next(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Xoshiro256ss::Xoshiro256ss(std::uint64_t seed) {
  std::uint64_t x = seed;
  for (auto& word : s_) word = splitmix64_next(x);
}

std::uint64_t Xoshiro256ss::next() {
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

std::uint64_t Xoshiro256ss::bounded(std::uint64_t bound) {
  // rejection below 2^64 mod bound keeps the draw unbiased
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t r = next();
    if (r >= threshold) return r % bound;
  }
}

double Xoshiro256ss::unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

StreamOrder StreamOrder::as_given(std::size_t m) {
  StreamOrder order;
  order.permutation.resize(m);
  std::iota(order.permutation.begin(), order.permutation.end(), 0u);
  order.seed = 0;
  return order;
}

StreamOrder permute(std::size_t m, std::uint64_t seed) {
  StreamOrder order = StreamOrder::as_given(m);
  order.seed = seed;
  Xoshiro256ss rng(seed);
  for (std::size_t i = m; i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(rng.bounded(i));
    std::swap(order.permutation[i - 1], order.permutation[j]);
  }
  return order;
}

bool is_permutation_of_range(const std::vector<std::uint32_t>& p) {
  std::vector<bool> seen(p.size(), false);
  for (std::uint32_t x : p) {
    if (x >= p.size() || seen[x]) return false;
    seen[x] = true;
  }
  return true;
}

}  // namespace rsm
