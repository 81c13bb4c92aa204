#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <memory>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace tinpc {

/// Exact rational number in lowest terms with a positive denominator.
///
/// Values are held as a pair of 64-bit integers. Any operation whose result
/// does not fit is carried out in arbitrary precision and the result is kept
/// in a shared immutable big representation until it fits again, so results
/// never overflow or lose precision.
class Rational {
 public:
  using Big = boost::multiprecision::cpp_rational;

  Rational() = default;
  Rational(std::int64_t value) : num_(value) {  // NOLINT: implicit by design of the numeric type
    if (value == std::numeric_limits<std::int64_t>::min()) [[unlikely]] assign_big(Big(value));
  }
  Rational(std::int64_t num, std::int64_t den);
  explicit Rational(const Big& value);

  /// Parses "3", "-1/2", "0.25", "+1.5". Decimals are converted exactly.
  /// Throws std::invalid_argument on malformed text or a zero denominator.
  static Rational parse(std::string_view text);

  bool is_big() const { return big_ != nullptr; }
  Big to_big() const;

  /// Numerator and denominator as decimal strings (exact in both modes).
  std::string numerator_string() const;
  std::string denominator_string() const;

  int sign() const;
  bool is_zero() const { return sign() == 0; }
  bool is_integer() const;
  double to_double() const;

  /// "p/q" in lowest terms, or "p" when the denominator is 1.
  std::string to_string() const;

  Rational operator-() const;
  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }

  friend bool operator==(const Rational& lhs, const Rational& rhs);
  friend std::strong_ordering operator<=>(const Rational& lhs, const Rational& rhs);

  friend std::ostream& operator<<(std::ostream& os, const Rational& value);

 private:
  void assign_big(const Big& value);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  std::shared_ptr<const Big> big_;
};

inline Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }
inline Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }

/// (x)^+ = max(x, 0)
inline Rational positive_part(const Rational& x) { return x.sign() < 0 ? Rational{} : x; }

}  // namespace tinpc
