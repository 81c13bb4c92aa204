#include "tinpc/gdof.hpp"

#include <sstream>
#include <stdexcept>

namespace tinpc {

PowerLevel PowerLevel::at(Rational exponent) {
  if (exponent.sign() > 0) {
    throw std::invalid_argument("power exponent must be <= 0, got " + exponent.to_string());
  }
  return PowerLevel(std::move(exponent));
}

PowerAllocation PowerAllocation::from_exponents(const std::vector<Rational>& exponents) {
  std::vector<PowerLevel> levels;
  levels.reserve(exponents.size());
  for (const auto& e : exponents) levels.push_back(PowerLevel::at(e));
  return PowerAllocation(std::move(levels));
}

UserMask PowerAllocation::on_set() const {
  if (levels_.size() > kMaxMaskUsers) throw std::out_of_range("too many users for a subset mask");
  UserMask mask = 0;
  for (std::size_t i = 0; i < levels_.size(); ++i)
    if (!levels_[i].is_off()) mask |= UserMask{1} << i;
  return mask;
}

bool PowerAllocation::is_binary() const {
  for (const auto& l : levels_)
    if (!l.is_off() && !l.exponent().is_zero()) return false;
  return true;
}

std::string PowerAllocation::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < levels_.size(); ++i) {
    if (i) out += ' ';
    out += levels_[i].to_string();
  }
  return out;
}

PowerAllocation parse_allocation(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::vector<PowerLevel> levels;
  for (std::string tok; in >> tok;) {
    const std::size_t pos = levels.size() + 1;
    if (tok == "off" || tok == "OFF" || tok == "-inf") {
      levels.push_back(PowerLevel::off());
      continue;
    }
    Rational v;
    try {
      v = Rational::parse(tok);
    } catch (const std::exception&) {
      throw ParseError("malformed power entry '" + tok + "' at position " + std::to_string(pos), 0, pos);
    }
    if (v.sign() > 0) {
      throw ParseError("power entry " + v.to_string() + " at position " + std::to_string(pos) + " is positive", 0, pos);
    }
    levels.push_back(PowerLevel::at(std::move(v)));
  }
  if (levels.empty()) throw ParseError("empty power allocation", 0, 0);
  return PowerAllocation(std::move(levels));
}

Rational user_gdof(const Topology& t, const PowerAllocation& r, std::size_t i) {
  if (r.size() != t.size()) throw std::invalid_argument("allocation size does not match topology");
  if (i >= t.size()) throw std::out_of_range("user index " + std::to_string(i) + " out of range");
  const auto signal = r[i].received(t.direct(i));
  if (!signal) return Rational{};
  Rational interference;  // noise floor at exponent 0
  for (std::size_t k = 0; k < t.size(); ++k) {
    if (k == i) continue;
    if (const auto level = r[k].received(t.alpha(i, k))) interference = max(interference, *level);
  }
  return positive_part(*signal - interference);
}

GdofOutcome sum_gdof(const Topology& t, const PowerAllocation& r) {
  if (r.size() != t.size()) throw std::invalid_argument("allocation size does not match topology");
  GdofOutcome out;
  out.per_user.reserve(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    out.per_user.push_back(user_gdof(t, r, i));
    out.total += out.per_user.back();
  }
  return out;
}

PowerAllocation normalize_power(const PowerAllocation& r) {
  std::optional<Rational> top;
  for (const auto& l : r.levels())
    if (!l.is_off()) top = top ? max(*top, l.exponent()) : l.exponent();
  if (!top) throw std::invalid_argument("cannot normalize an allocation with every user off");
  std::vector<PowerLevel> out;
  out.reserve(r.size());
  for (const auto& l : r.levels()) out.push_back(l.is_off() ? l : PowerLevel::at(l.exponent() - *top));
  return PowerAllocation(std::move(out));
}

PowerAllocation binary_allocation(std::size_t k, UserMask subset) {
  if (k > kMaxMaskUsers) throw std::out_of_range("too many users for a subset mask");
  if (k < kMaxMaskUsers && (subset >> k) != 0) throw std::invalid_argument("subset names a user outside [1, K]");
  std::vector<PowerLevel> levels;
  levels.reserve(k);
  for (std::size_t i = 0; i < k; ++i)
    levels.push_back(((subset >> i) & 1U) ? PowerLevel::at(Rational{}) : PowerLevel::off());
  return PowerAllocation(std::move(levels));
}

}  // namespace tinpc
