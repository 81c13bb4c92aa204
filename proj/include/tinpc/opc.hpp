#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "tinpc/gdof.hpp"
#include "tinpc/rational.hpp"
#include "tinpc/topology.hpp"

namespace tinpc {

inline constexpr std::size_t kDefaultEnumerationLimit = 16;

class EnumerationLimitError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Best sum GDoF with exactly the users of one subset transmitting, each at
/// nonnegative GDoF.
struct SubsetLpResult {
  Rational value;
  PowerAllocation allocation;  // Off outside the subset
};

/// Solves the per-subset linear program. Returns nullopt when no allocation
/// gives every user in the subset nonnegative GDoF (the program is
/// infeasible). Throws std::invalid_argument for an empty subset.
std::optional<SubsetLpResult> subset_lp(const Topology& t, UserMask subset);

struct OpcResult {
  Rational value;
  PowerAllocation allocation;  // normalized witness, Off outside active_set
  UserMask active_set = 0;
  GdofOutcome outcome;
  /// Every optimal subset (sorted by mask); filled only when requested.
  std::vector<UserMask> optimal_sets;
};

struct OpcOptions {
  std::size_t enumeration_limit = kDefaultEnumerationLimit;
  bool collect_all_optima = false;
};

/// Exact optimal-power-control sum GDoF by enumerating supports and solving
/// one small LP per support. The reported active set is the optimal support
/// with the smallest mask; its witness has strictly positive GDoF for every
/// active user.
OpcResult solve_opc(const Topology& t, const OpcOptions& options = {});

struct GridOptions {
  std::size_t budget = 50'000'000;  // max number of grid points
};

/// Brute-force lower bound on the OPC sum GDoF over per-user exponents in
/// {off, 0, -step, -2 step, ...} down to `floor`.
Rational solve_opc_grid(const Topology& t, const Rational& step, const Rational& floor, const GridOptions& options = {});

/// True iff every allocation achieving the OPC optimum gives all users
/// strictly positive GDoF, i.e. every optimal support is the full set.
bool is_strictly_positive_class(const Topology& t, std::size_t enumeration_limit = kDefaultEnumerationLimit);

}  // namespace tinpc
