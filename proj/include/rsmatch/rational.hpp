#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace rsm {

/// Exact nonnegative fraction. Threshold tests (underfull predicate, stream
/// split points, the epsilon < 1/2 gate) must be bit-exact and reproducible
/// across platforms, so user-facing decimals are kept as integer fractions
/// instead of doubles. Stored reduced with den > 0.
struct Rational {
  std::int64_t num{0};
  std::int64_t den{1};

  static Rational of(std::int64_t num, std::int64_t den);

  /// Accepts "0.05", ".2", "1", and "a/b" forms. Rejects negatives and more
  /// than 12 fractional digits (keeps later cross-multiplications in range).
  static Rational parse(std::string_view text);

  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
  bool is_zero() const { return num == 0; }
  Rational div_int(std::int64_t k) const;
  Rational one_minus() const;  // 1 - this; requires this <= 1

  std::string str() const;  // canonical "num/den"
};

bool operator==(const Rational& a, const Rational& b);
bool operator<(const Rational& a, const Rational& b);
inline bool operator<=(const Rational& a, const Rational& b) { return a < b || a == b; }

/// ceil(r * k) for k >= 0.
std::int64_t ceil_mul(const Rational& r, std::int64_t k);
/// floor(r * k) for k >= 0.
std::int64_t floor_mul(const Rational& r, std::int64_t k);

}  // namespace rsm
