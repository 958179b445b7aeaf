#include "rsmatch/rational.hpp"

#include <cctype>
#include <numeric>

#include "rsmatch/error.hpp"

namespace rsm {

namespace {

Rational reduced(std::int64_t num, std::int64_t den) {
  if (den <= 0) raise(Errc::bad_config, "rational denominator must be positive");
  if (num < 0) raise(Errc::bad_config, "rational must be nonnegative");
  const std::int64_t g = std::gcd(num, den);
  return Rational{num / (g ? g : 1), den / (g ? g : 1)};
}

std::int64_t parse_digits(std::string_view s, std::string_view what) {
  if (s.empty() || s.size() > 18) raise(Errc::bad_config, "bad " + std::string(what));
  std::int64_t v = 0;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) raise(Errc::bad_config, "bad " + std::string(what));
    v = v * 10 + (c - '0');
  }
  return v;
}

}  // namespace

Rational Rational::of(std::int64_t num, std::int64_t den) { return reduced(num, den); }

Rational Rational::parse(std::string_view text) {
  if (text.empty()) raise(Errc::bad_config, "empty rational");
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    const std::int64_t num = parse_digits(text.substr(0, slash), "rational numerator");
    const std::int64_t den = parse_digits(text.substr(slash + 1), "rational denominator");
    if (den == 0) raise(Errc::bad_config, "rational denominator is zero");
    return reduced(num, den);
  }
  std::string_view whole = text;
  std::string_view frac;
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    whole = text.substr(0, dot);
    frac = text.substr(dot + 1);
    if (frac.size() > 12) raise(Errc::bad_config, "too many fractional digits: " + std::string(text));
  }
  std::int64_t num = whole.empty() ? 0 : parse_digits(whole, "decimal");
  std::int64_t den = 1;
  for (char c : frac) {
    if (!std::isdigit(static_cast<unsigned char>(c))) raise(Errc::bad_config, "bad decimal: " + std::string(text));
    num = num * 10 + (c - '0');
    den *= 10;
  }
  if (whole.empty() && frac.empty()) raise(Errc::bad_config, "bad decimal: " + std::string(text));
  return reduced(num, den);
}

Rational Rational::div_int(std::int64_t k) const {
  if (k <= 0) raise(Errc::bad_config, "division by nonpositive integer");
  return reduced(num, den * k);
}

Rational Rational::one_minus() const {
  if (den < num) raise(Errc::bad_config, "1 - r requires r <= 1");
  return reduced(den - num, den);
}

std::string Rational::str() const { return std::to_string(num) + "/" + std::to_string(den); }

bool operator==(const Rational& a, const Rational& b) { return a.num == b.num && a.den == b.den; }

bool operator<(const Rational& a, const Rational& b) {
  return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
}

std::int64_t ceil_mul(const Rational& r, std::int64_t k) {
  if (k < 0) raise(Errc::bad_config, "ceil_mul requires k >= 0");
  const __int128 prod = static_cast<__int128>(r.num) * k;
  return static_cast<std::int64_t>((prod + r.den - 1) / r.den);
}

std::int64_t floor_mul(const Rational& r, std::int64_t k) {
  if (k < 0) raise(Errc::bad_config, "floor_mul requires k >= 0");
  const __int128 prod = static_cast<__int128>(r.num) * k;
  return static_cast<std::int64_t>(prod / r.den);
}

}  // namespace rsm
