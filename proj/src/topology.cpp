#include "tinpc/topology.hpp"

#include <optional>
#include <sstream>

#include "tinpc/gdof.hpp"

namespace tinpc {

ParseError::ParseError(const std::string& what, std::size_t row, std::size_t column)
    : std::invalid_argument(what), row_(row), column_(column) {}

Topology::Topology(std::vector<std::vector<Rational>> rows) : k_(rows.size()) {
  if (k_ == 0) throw std::invalid_argument("topology needs at least one user");
  alpha_.reserve(k_ * k_);
  for (std::size_t i = 0; i < k_; ++i) {
    if (rows[i].size() != k_) {
      throw std::invalid_argument("topology row " + std::to_string(i + 1) + " has " +
                                  std::to_string(rows[i].size()) + " entries, expected " + std::to_string(k_));
    }
    for (std::size_t j = 0; j < k_; ++j) {
      if (rows[i][j].sign() < 0) {
        throw std::invalid_argument("negative strength at row " + std::to_string(i + 1) + ", column " +
                                    std::to_string(j + 1));
      }
      alpha_.push_back(std::move(rows[i][j]));
    }
  }
}

std::vector<std::vector<Rational>> Topology::rows() const {
  std::vector<std::vector<Rational>> out(k_);
  for (std::size_t i = 0; i < k_; ++i) out[i].assign(alpha_.begin() + i * k_, alpha_.begin() + (i + 1) * k_);
  return out;
}

std::string Topology::to_text() const {
  std::ostringstream os;
  os << k_ << '\n';
  for (std::size_t i = 0; i < k_; ++i) {
    for (std::size_t j = 0; j < k_; ++j) os << (j ? " " : "") << alpha(i, j);
    os << '\n';
  }
  return os.str();
}

Topology Topology::permuted(const std::vector<std::size_t>& order) const {
  if (order.size() != k_) throw std::invalid_argument("permutation size does not match topology");
  std::vector<std::vector<Rational>> out(k_, std::vector<Rational>(k_));
  for (std::size_t i = 0; i < k_; ++i)
    for (std::size_t j = 0; j < k_; ++j) out[i][j] = alpha(order.at(i), order.at(j));
  return Topology(std::move(out));
}

Topology Topology::with_entry(std::size_t receiver, std::size_t transmitter, Rational value) const {
  auto r = rows();
  r.at(receiver).at(transmitter) = std::move(value);
  return Topology(std::move(r));
}

Topology parse_topology(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  std::optional<std::size_t> k;
  std::vector<std::vector<Rational>> rows;

  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::vector<std::string> tokens;
    for (std::string tok; fields >> tok;) tokens.push_back(tok);
    if (tokens.empty()) continue;

    if (!k) {
      if (tokens.size() != 1) throw ParseError("line " + std::to_string(line_no) + ": expected the user count K", 0, 0);
      const std::string& tok = tokens.front();
      if (tok.find_first_not_of("0123456789") != std::string::npos || tok.size() > 6) {
        throw ParseError("line " + std::to_string(line_no) + ": invalid user count '" + tok + "'", 0, 0);
      }
      k = std::stoul(tok);
      if (*k == 0) throw ParseError("user count must be positive", 0, 0);
      continue;
    }

    const std::size_t row = rows.size() + 1;
    if (row > *k) throw ParseError("more than " + std::to_string(*k) + " rows", row, 0);
    if (tokens.size() != *k) {
      throw ParseError("row " + std::to_string(row) + " has " + std::to_string(tokens.size()) + " entries, expected " +
                           std::to_string(*k),
                       row, 0);
    }
    std::vector<Rational> values;
    values.reserve(*k);
    for (std::size_t col = 1; col <= *k; ++col) {
      Rational v;
      try {
        v = Rational::parse(tokens[col - 1]);
      } catch (const std::exception&) {
        throw ParseError("malformed number '" + tokens[col - 1] + "' at row " + std::to_string(row) + ", column " +
                             std::to_string(col),
                         row, col);
      }
      if (v.sign() < 0) {
        throw ParseError("negative entry " + v.to_string() + " at row " + std::to_string(row) + ", column " +
                             std::to_string(col),
                         row, col);
      }
      values.push_back(std::move(v));
    }
    rows.push_back(std::move(values));
  }

  if (!k) throw ParseError("empty topology text", 0, 0);
  if (rows.size() != *k) {
    throw ParseError("expected " + std::to_string(*k) + " rows, found " + std::to_string(rows.size()), rows.size() + 1,
                     0);
  }
  return Topology(std::move(rows));
}

Topology diagonal_topology(const std::vector<Rational>& strengths) {
  std::vector<std::vector<Rational>> rows(strengths.size(), std::vector<Rational>(strengths.size()));
  for (std::size_t i = 0; i < strengths.size(); ++i) rows[i][i] = strengths[i];
  return Topology(std::move(rows));
}

Topology extremal_small(int k) {
  if (k < 3 || k > 6) throw std::invalid_argument("extremal_small is defined for K in {3,4,5,6}, got " + std::to_string(k));
  const auto n = static_cast<std::size_t>(k);
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n));
  // Cross strength emitted by each transmitter (0-based), same for every
  // other receiver unless noted.
  std::vector<Rational> diag;
  std::vector<Rational> emitted(n);
  switch (k) {
    case 3:
      diag = {1, 1, 2};
      emitted[2] = 1;
      break;
    case 4:
      diag = {1, 1, 2, 2};
      emitted[2] = emitted[3] = 1;
      break;
    case 5:
      diag = {2, 2, 2, 4, 4};
      emitted[2] = 1;
      emitted[3] = emitted[4] = 2;
      break;
    case 6:
      diag = {8, 8, 10, 12, 16, 16};
      emitted[2] = 5;
      emitted[3] = 6;
      emitted[4] = 8;
      emitted[5] = 10;
      break;
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = (i == j) ? diag[i] : emitted[j];
  }
  return Topology(std::move(a));
}

Topology extremal_grid(int m) {
  if (m < 1) throw std::invalid_argument("extremal_grid needs m >= 1");
  const auto mm = static_cast<std::size_t>(m);
  const std::size_t k = mm * mm;
  auto group = [mm](std::size_t user) { return static_cast<std::int64_t>(user / mm) + 1; };
  std::vector<std::vector<Rational>> a(k, std::vector<Rational>(k));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      const std::int64_t gj = group(j);
      if (i == j) {
        a[i][j] = gj;
      } else if (group(i) <= gj) {
        a[i][j] = gj - 1;
      }
    }
  }
  return Topology(std::move(a));
}

Topology append_isolated_user(const Topology& t, const Rational& eps) {
  if (eps.sign() <= 0) throw std::invalid_argument("isolated user strength must be positive");
  auto rows = t.rows();
  for (auto& row : rows) row.emplace_back();
  rows.emplace_back(t.size() + 1);
  rows.back().back() = eps;
  return Topology(std::move(rows));
}

Topology lift_cross_links(const Topology& t, const PowerAllocation& r, UserMask subset) {
  const std::size_t k = t.size();
  if (r.size() != k) throw std::invalid_argument("allocation size does not match topology");
  if (k < kMaxMaskUsers && (subset >> k) != 0) throw std::invalid_argument("subset names a user outside the topology");
  auto in = [subset](std::size_t u) { return ((subset >> u) & 1U) != 0; };
  for (std::size_t u = 0; u < k; ++u) {
    if (in(u) && r[u].is_off()) {
      throw std::invalid_argument("user " + std::to_string(u + 1) + " is in the lifted subset but switched off");
    }
  }

  auto rows = t.rows();
  for (std::size_t i = 0; i < k; ++i) {
    if (!in(i)) continue;
    Rational level;  // max over in-subset interferers of (alpha_ik + r_k)^+
    for (std::size_t kk = 0; kk < k; ++kk) {
      if (kk == i || !in(kk)) continue;
      level = max(level, positive_part(t.alpha(i, kk) + r[kk].exponent()));
    }
    for (std::size_t j = 0; j < k; ++j) {
      if (j == i || !in(j)) continue;
      rows[i][j] = level - r[j].exponent();
    }
  }
  return Topology(std::move(rows));
}

}  // namespace tinpc
