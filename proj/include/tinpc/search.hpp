#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

#include "tinpc/opc.hpp"
#include "tinpc/rational.hpp"
#include "tinpc/topology.hpp"

namespace tinpc {

/// Every entry drawn uniformly from {0, g, 2g, ...} intersected with
/// [0, max_strength]. Deterministic for a given seed on every platform.
Topology random_topology(std::size_t k, const Rational& max_strength, const Rational& granularity, std::uint64_t seed);

/// D_o / D_b; 1 when every direct link is 0.
Rational ratio(const Topology& t, std::size_t enumeration_limit = kDefaultEnumerationLimit);

struct SearchOptions {
  Rational max_strength = 3;
  /// Consecutive non-improving moves before a restart from a fresh random
  /// topology; 0 picks 4 K^2.
  std::size_t patience = 0;
  /// Independent restart streams; the result does not depend on `threads`.
  std::size_t streams = 4;
  std::size_t threads = 1;
  /// Starting point of stream 0 instead of a random topology.
  std::optional<Topology> start;
  std::size_t enumeration_limit = kDefaultEnumerationLimit;
};

/// Result of a hill-climbing probe for large OPC/BPC gains. The best ratio is
/// only a lower bound on the extremal gain, never an estimate of it.
struct SearchReport {
  Topology best_topology;
  Rational best_ratio;
  std::size_t evaluations = 0;
  std::uint64_t seed = 0;
  /// Every evaluated candidate satisfied ratio^2 <= 25K/4.
  bool envelope_ok = true;
  /// Every evaluated candidate stayed at or below the exact extremal gain
  /// (only meaningful for K <= 6).
  bool known_gain_ok = true;
  std::size_t violations = 0;
};

/// Hill climbing on single entries (+-step, clamped to [0, max_strength])
/// with random restarts on stagnation, within `budget` ratio evaluations.
SearchReport local_search(std::size_t k, std::size_t budget, const Rational& step, std::uint64_t seed,
                          const SearchOptions& options = {});

/// Report text followed by the best topology in the topology file format.
std::string to_text(const SearchReport& report);

}  // namespace tinpc
