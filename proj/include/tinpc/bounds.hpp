#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tinpc/gdof.hpp"
#include "tinpc/opc.hpp"
#include "tinpc/rational.hpp"
#include "tinpc/topology.hpp"

namespace tinpc {

/// A converse-bound input failed its preconditions: the topology is outside
/// the strictly positive class, the allocation is not OPC-optimal, a user is
/// Off, or an ordering is violated.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An OPC-optimal allocation on a strictly-positive-class topology, with the
/// quantities every converse bound needs. Built only by certify_optimal.
struct OptimalAllocation {
  Topology topology;
  PowerAllocation allocation;
  GdofOutcome outcome;
  Rational opc_value;
  Rational bpc_value;
};

/// Checks that t is in the strictly positive class and that r (every user
/// on) achieves the OPC optimum. Throws PreconditionError otherwise.
OptimalAllocation certify_optimal(const Topology& t, const PowerAllocation& r,
                                  std::size_t enumeration_limit = kDefaultEnumerationLimit);

/// Lower bound on the BPC sum GDoF obtained by switching on `ordered_users`
/// at full power after lifting their mutual cross links.
struct BoundCertificate {
  std::vector<std::size_t> ordered_users;  // 0-based, non-increasing power
  std::vector<Rational> terms;             // one per user, same order
  Rational bound;
};

BoundCertificate bound_B(const OptimalAllocation& opt, const std::vector<std::size_t>& ordered_users);
BoundCertificate bound_B(const Topology& t, const PowerAllocation& r, const std::vector<std::size_t>& ordered_users);

struct WeightedBound {
  std::int64_t weight = 1;
  BoundCertificate certificate;
};

/// Weighted sum of B-bounds W_total * D_b >= sum >= multiplier * D_o, which
/// certifies D_o / D_b <= W_total / multiplier.
struct AggregateCertificate {
  std::vector<std::size_t> order;  // relabeling: position p holds original user order[p]
  PowerAllocation allocation;      // normalized optimal allocation used
  std::vector<WeightedBound> terms;
  Rational weighted_sum;
  std::int64_t total_weight = 0;
  std::int64_t opc_multiplier = 0;
  Rational opc_value;
  Rational bpc_value;
  /// total_weight * D_o / weighted_sum: an upper bound on D_o / D_b that
  /// never exceeds the constant below.
  Rational ratio_bound;
  Rational constant;  // total_weight / opc_multiplier
  bool lower_side_holds = false;  // weighted_sum >= opc_multiplier * D_o
  bool upper_side_holds = false;  // weighted_sum <= total_weight * D_b
  bool holds() const { return lower_side_holds && upper_side_holds; }
};

/// One entry of a bound combination: `weight` copies of B over the listed
/// 1-based positions in the relabeled (non-increasing power) order.
struct BoundTemplate {
  std::int64_t weight;
  std::vector<std::size_t> positions;
};

struct SmallKCombination {
  std::vector<BoundTemplate> bounds;
  std::int64_t opc_multiplier;
};

/// The bound combination used for K in {2..6}.
const SmallKCombination& small_k_combination(std::size_t k);

/// Certificate for K in {2..6}. r is normalized internally and users are
/// relabeled by non-increasing power. Throws PreconditionError when the
/// preconditions fail; the two inequality sides are reported, not assumed.
AggregateCertificate certificate_small_k(const Topology& t, const PowerAllocation& r,
                                         std::size_t enumeration_limit = kDefaultEnumerationLimit);

/// Certificate for K = m^2 built from three bound families: sliding windows
/// of m consecutive users, growing prefixes, and weighted singletons of the
/// last users. holds() reports m(3m-1)/2 * D_b >= sum >= m * D_o.
AggregateCertificate certificate_square(const Topology& t, const PowerAllocation& r, int m,
                                        std::size_t enumeration_limit = kDefaultEnumerationLimit);

/// Range known to contain the extremal OPC/BPC gain for K users:
/// floor(sqrt K) <= gain <= 5/2 sqrt K.
struct Envelope {
  std::int64_t lower = 0;
  double upper = 0;
  Rational upper_squared;  // 25K/4
  /// ratio >= 0 and ratio^2 <= 25K/4, exactly.
  bool admits(const Rational& ratio) const { return ratio.sign() >= 0 && ratio * ratio <= upper_squared; }
};

Envelope theorem2_envelope(std::int64_t k);

/// Exact extremal gains for K = 1..6 (1, 1, 3/2, 2, 9/4, 41/16).
std::optional<Rational> known_extremal_gain(std::size_t k);

/// Text report: ordered users, per-term values, and both inequality sides.
std::string describe(const AggregateCertificate& cert);

}  // namespace tinpc
