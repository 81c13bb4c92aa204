#include "tinpc/rational.hpp"

#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace tinpc {

namespace {

using BigInt = boost::multiprecision::cpp_int;

constexpr std::int64_t kMin = std::numeric_limits<std::int64_t>::min();
constexpr std::int64_t kMax = std::numeric_limits<std::int64_t>::max();

std::uint64_t magnitude(std::int64_t v) {
  return v < 0 ? std::uint64_t{0} - static_cast<std::uint64_t>(v) : static_cast<std::uint64_t>(v);
}

std::int64_t gcd64(std::int64_t a, std::int64_t b) {
  return static_cast<std::int64_t>(std::gcd(magnitude(a), magnitude(b)));
}

// kMin is never stored in small mode so that negation cannot overflow.
bool fits(std::int64_t v) { return v != kMin; }

bool fits(const BigInt& v) { return v > BigInt(kMin) && v <= BigInt(kMax); }

bool parse_digits(std::string_view digits, BigInt& out) {
  if (digits.empty()) return false;
  out = 0;
  for (char c : digits) {
    if (c < '0' || c > '9') return false;
    out = out * 10 + (c - '0');
  }
  return true;
}

[[noreturn]] void malformed(std::string_view text) {
  throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  if (!fits(num) || !fits(den)) {
    assign_big(Big(BigInt(num), BigInt(den)));
    return;
  }
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = gcd64(num, den);
  num_ = num / g;
  den_ = den / g;
}

Rational::Rational(const Big& value) { assign_big(value); }

void Rational::assign_big(const Big& value) {
  const BigInt n = boost::multiprecision::numerator(value);
  const BigInt d = boost::multiprecision::denominator(value);
  if (fits(n) && fits(d)) {
    num_ = static_cast<std::int64_t>(n);
    den_ = static_cast<std::int64_t>(d);
    big_.reset();
  } else {
    num_ = 0;
    den_ = 1;
    big_ = std::make_shared<const Big>(value);
  }
}

Rational::Big Rational::to_big() const {
  if (big_) return *big_;
  return Big(BigInt(num_), BigInt(den_));
}

Rational Rational::parse(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  if (s.empty()) malformed(text);

  bool negative = false;
  if (s.front() == '+' || s.front() == '-') {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }

  BigInt num;
  BigInt den = 1;
  if (const auto slash = s.find('/'); slash != std::string_view::npos) {
    if (!parse_digits(s.substr(0, slash), num) || !parse_digits(s.substr(slash + 1), den)) malformed(text);
    if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  } else if (const auto dot = s.find('.'); dot != std::string_view::npos) {
    const std::string_view whole = s.substr(0, dot);
    const std::string_view frac = s.substr(dot + 1);
    if (whole.empty() && frac.empty()) malformed(text);
    BigInt w = 0;
    BigInt f = 0;
    if (!whole.empty() && !parse_digits(whole, w)) malformed(text);
    if (!frac.empty() && !parse_digits(frac, f)) malformed(text);
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    num = w * den + f;
  } else if (!parse_digits(s, num)) {
    malformed(text);
  }
  if (negative) num = -num;
  return Rational(Big(num, den));
}

int Rational::sign() const {
  if (big_) return big_->sign();
  return (num_ > 0) - (num_ < 0);
}

bool Rational::is_integer() const {
  if (big_) return boost::multiprecision::denominator(*big_) == 1;
  return den_ == 1;
}

double Rational::to_double() const {
  if (big_) return big_->convert_to<double>();
  return static_cast<double>(num_) / static_cast<double>(den_);
}

std::string Rational::numerator_string() const {
  if (big_) return boost::multiprecision::numerator(*big_).str();
  return std::to_string(num_);
}

std::string Rational::denominator_string() const {
  if (big_) return boost::multiprecision::denominator(*big_).str();
  return std::to_string(den_);
}

std::string Rational::to_string() const {
  if (is_integer()) return numerator_string();
  return numerator_string() + "/" + denominator_string();
}

Rational Rational::operator-() const {
  if (big_) return Rational(Big(-*big_));
  Rational out;
  out.num_ = -num_;
  out.den_ = den_;
  return out;
}

Rational& Rational::operator+=(const Rational& rhs) {
  if (!big_ && !rhs.big_) {
    if (den_ == 1 && rhs.den_ == 1) {
      std::int64_t sum;
      if (!__builtin_add_overflow(num_, rhs.num_, &sum) && fits(sum)) {
        num_ = sum;
        return *this;
      }
    } else {
      // Knuth's reduced addition keeps intermediates small.
      const std::int64_t g = gcd64(den_, rhs.den_);
      const std::int64_t lhs_scale = rhs.den_ / g;
      const std::int64_t rhs_scale = den_ / g;
      std::int64_t a, b, t;
      if (!__builtin_mul_overflow(num_, lhs_scale, &a) && !__builtin_mul_overflow(rhs.num_, rhs_scale, &b) &&
          !__builtin_add_overflow(a, b, &t) && fits(t)) {
        if (t == 0) {
          num_ = 0;
          den_ = 1;
          return *this;
        }
        const std::int64_t g2 = gcd64(t, g);
        std::int64_t d;
        if (!__builtin_mul_overflow(rhs_scale, rhs.den_ / g2, &d) && fits(d)) {
          num_ = t / g2;
          den_ = d;
          return *this;
        }
      }
    }
  }
  assign_big(to_big() + rhs.to_big());
  return *this;
}

Rational& Rational::operator-=(const Rational& rhs) { return *this += -rhs; }

Rational& Rational::operator*=(const Rational& rhs) {
  if (!big_ && !rhs.big_) {
    if (num_ == 0 || rhs.num_ == 0) {
      num_ = 0;
      den_ = 1;
      return *this;
    }
    const std::int64_t g1 = gcd64(num_, rhs.den_);
    const std::int64_t g2 = gcd64(rhs.num_, den_);
    std::int64_t n, d;
    if (!__builtin_mul_overflow(num_ / g1, rhs.num_ / g2, &n) &&
        !__builtin_mul_overflow(den_ / g2, rhs.den_ / g1, &d) && fits(n) && fits(d)) {
      num_ = n;
      den_ = d;
      return *this;
    }
  }
  assign_big(to_big() * rhs.to_big());
  return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.is_zero()) throw std::domain_error("rational division by zero");
  if (!rhs.big_) {
    Rational inverse;
    inverse.num_ = rhs.num_ < 0 ? -rhs.den_ : rhs.den_;
    inverse.den_ = rhs.num_ < 0 ? -rhs.num_ : rhs.num_;
    return *this *= inverse;
  }
  assign_big(to_big() / rhs.to_big());
  return *this;
}

bool operator==(const Rational& lhs, const Rational& rhs) {
  if (!lhs.big_ && !rhs.big_) return lhs.num_ == rhs.num_ && lhs.den_ == rhs.den_;
  // Both are canonical, and a value that fits is never stored big.
  if (lhs.big_ && rhs.big_) return *lhs.big_ == *rhs.big_;
  return false;
}

std::strong_ordering operator<=>(const Rational& lhs, const Rational& rhs) {
  if (!lhs.big_ && !rhs.big_) {
    if (lhs.den_ == rhs.den_) return lhs.num_ <=> rhs.num_;
    const __int128 a = static_cast<__int128>(lhs.num_) * rhs.den_;
    const __int128 b = static_cast<__int128>(rhs.num_) * lhs.den_;
    return a <=> b;
  }
  const auto a = lhs.to_big();
  const auto b = rhs.to_big();
  if (a < b) return std::strong_ordering::less;
  if (b < a) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::ostream& operator<<(std::ostream& os, const Rational& value) { return os << value.to_string(); }

}  // namespace tinpc
