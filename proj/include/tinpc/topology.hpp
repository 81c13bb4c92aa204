#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tinpc/rational.hpp"

namespace tinpc {

class PowerAllocation;

/// Set of users as a bitmask; bit i is user i (0-based).
using UserMask = std::uint64_t;
inline constexpr std::size_t kMaxMaskUsers = 64;

/// Error raised while reading a topology or allocation from text. Row and
/// column are 1-based positions in the data (0 when not applicable).
class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& what, std::size_t row, std::size_t column);
  std::size_t row() const { return row_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t row_;
  std::size_t column_;
};

/// K-user network topology: alpha(i, j) is the strength exponent of the link
/// from transmitter j to receiver i. Row = receiver, column = transmitter.
/// Immutable after construction.
class Topology {
 public:
  /// Throws std::invalid_argument unless rows form a non-empty square
  /// matrix of nonnegative entries.
  explicit Topology(std::vector<std::vector<Rational>> rows);

  std::size_t size() const { return k_; }
  const Rational& alpha(std::size_t receiver, std::size_t transmitter) const {
    return alpha_[receiver * k_ + transmitter];
  }
  const Rational& direct(std::size_t user) const { return alpha(user, user); }

  std::vector<std::vector<Rational>> rows() const;

  /// Topology file text: K on the first line, then K rows.
  std::string to_text() const;

  /// Same topology with users relabeled: new user u is old user order[u].
  Topology permuted(const std::vector<std::size_t>& order) const;

  /// Copy with one entry replaced.
  Topology with_entry(std::size_t receiver, std::size_t transmitter, Rational value) const;

  friend bool operator==(const Topology&, const Topology&) = default;

 private:
  std::size_t k_ = 0;
  std::vector<Rational> alpha_;
};

/// Reads the topology file format. '#' starts a comment; blank lines are
/// ignored. Errors carry the offending row/column.
Topology parse_topology(std::string_view text);

/// Diagonal topology with no cross links.
Topology diagonal_topology(const std::vector<Rational>& strengths);

/// The extremal networks for K = 3, 4, 5, 6.
Topology extremal_small(int k);

/// The m^2-user multi-tier construction: m groups of m users, direct
/// strength g in group g, cross strength g-1 from group g to groups <= g.
Topology extremal_grid(int m);

/// Appends user K+1 with direct strength eps and no cross links.
Topology append_isolated_user(const Topology& t, const Rational& eps);

/// Raises every cross link between two users of `subset` so that, under
/// allocation r, each receiver in the subset sees all in-subset interferers
/// at its strongest in-subset interference level. Never lowers an entry.
Topology lift_cross_links(const Topology& t, const PowerAllocation& r, UserMask subset);

}  // namespace tinpc
