#pragma once

#include <vector>

#include "tinpc/opc.hpp"
#include "tinpc/rational.hpp"
#include "tinpc/topology.hpp"

namespace tinpc {

/// Binary power control in the GDoF sense.
struct BpcGdofResult {
  Rational value;
  std::vector<UserMask> best_sets;  // every maximizing subset, ascending mask order
};

/// Binary power control at finite SNR, in bits per channel use.
struct BpcRateResult {
  double value = 0;
  std::vector<UserMask> best_sets;
};

/// max over all 2^K on/off patterns of the sum GDoF.
BpcGdofResult solve_bpc_gdof(const Topology& t, std::size_t enumeration_limit = kDefaultEnumerationLimit);

/// max over all 2^K on/off patterns of the TIN sum rate at P = 10^(p_db/10).
/// Subsets whose sum rate is within a relative 1e-12 of the maximum count
/// as ties.
BpcRateResult solve_bpc_rate(const Topology& t, double p_db, std::size_t enumeration_limit = kDefaultEnumerationLimit);

/// Sorted 1-based user numbers of a mask, for display.
std::vector<std::size_t> mask_to_users(UserMask mask);

}  // namespace tinpc
