#pragma once

#include <random>
#include <string>
#include <vector>

#include "tinpc/gdof.hpp"
#include "tinpc/rational.hpp"
#include "tinpc/topology.hpp"

namespace tinpc::testing {

inline Rational q(const char* text) { return Rational::parse(text); }

inline Topology matrix(std::initializer_list<std::initializer_list<const char*>> rows) {
  std::vector<std::vector<Rational>> out;
  for (const auto& row : rows) {
    out.emplace_back();
    for (const char* v : row) out.back().push_back(q(v));
  }
  return Topology(std::move(out));
}

inline PowerAllocation alloc(const std::string& text) { return parse_allocation(text); }

// Three users, all direct links 3, mixed cross links below and above noise.
inline Topology three_user_mixed() { return matrix({{"3", "1", "1/2"}, {"3/2", "3", "2"}, {"1/2", "1/2", "3"}}); }

inline Topology two_user(const char* cross) { return matrix({{"1", cross}, {cross, "1"}}); }

// Random allocation with entries in {off} U {0, -1/4, ..., -3}; at least one user on.
inline PowerAllocation random_allocation(std::size_t k, std::mt19937_64& rng) {
  std::vector<PowerLevel> levels;
  bool any = false;
  for (std::size_t i = 0; i < k; ++i) {
    const auto v = rng() % 14;
    if (v == 13) {
      levels.push_back(PowerLevel::off());
    } else {
      levels.push_back(PowerLevel::at(Rational(-static_cast<std::int64_t>(v), 4)));
      any = true;
    }
  }
  if (!any) levels[0] = PowerLevel::at(Rational(-1));
  return PowerAllocation(std::move(levels));
}

}  // namespace tinpc::testing
