#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tinpc/rational.hpp"
#include "tinpc/topology.hpp"

namespace tinpc {

/// Transmit power exponent of one user: either Off (power P^-inf = 0) or a
/// finite exponent r <= 0.
class PowerLevel {
 public:
  static PowerLevel off() { return PowerLevel(); }
  /// Throws std::invalid_argument if exponent > 0.
  static PowerLevel at(Rational exponent);

  bool is_off() const { return !exponent_.has_value(); }
  /// Precondition: !is_off().
  const Rational& exponent() const { return *exponent_; }

  /// Received exponent alpha + r, or nullopt when Off.
  std::optional<Rational> received(const Rational& alpha) const {
    if (!exponent_) return std::nullopt;
    return alpha + *exponent_;
  }

  std::string to_string() const { return exponent_ ? exponent_->to_string() : "off"; }

  friend bool operator==(const PowerLevel&, const PowerLevel&) = default;

 private:
  PowerLevel() = default;
  explicit PowerLevel(Rational exponent) : exponent_(std::move(exponent)) {}

  std::optional<Rational> exponent_;
};

class PowerAllocation {
 public:
  PowerAllocation() = default;
  explicit PowerAllocation(std::vector<PowerLevel> levels) : levels_(std::move(levels)) {}

  /// All users at the given finite exponents.
  static PowerAllocation from_exponents(const std::vector<Rational>& exponents);
  static PowerAllocation all_off(std::size_t k) { return PowerAllocation(std::vector<PowerLevel>(k, PowerLevel::off())); }

  std::size_t size() const { return levels_.size(); }
  const PowerLevel& operator[](std::size_t i) const { return levels_[i]; }
  const std::vector<PowerLevel>& levels() const { return levels_; }

  UserMask on_set() const;
  bool is_binary() const;

  /// Whitespace-separated entries, "off" or a rational.
  std::string to_string() const;

  friend bool operator==(const PowerAllocation&, const PowerAllocation&) = default;

 private:
  std::vector<PowerLevel> levels_;
};

/// Reads whitespace-separated entries, each "off" or a rational <= 0.
PowerAllocation parse_allocation(std::string_view text);

struct GdofOutcome {
  std::vector<Rational> per_user;
  Rational total;
};

/// TIN GDoF of user i:
/// (alpha_ii + r_i - max(0, max_{k != i, k on} alpha_ik + r_k))^+, 0 when Off.
Rational user_gdof(const Topology& t, const PowerAllocation& r, std::size_t i);

GdofOutcome sum_gdof(const Topology& t, const PowerAllocation& r);

/// Shifts every finite exponent so that the largest is exactly 0. No user's
/// GDoF drops; a user's GDoF is unchanged when its strongest interference is
/// received at or above the noise floor, so an optimal sum stays optimal.
/// Throws std::invalid_argument if all are Off.
PowerAllocation normalize_power(const PowerAllocation& r);

/// Users in `subset` at full power, everyone else Off.
PowerAllocation binary_allocation(std::size_t k, UserMask subset);

}  // namespace tinpc
