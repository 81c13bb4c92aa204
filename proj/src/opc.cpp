#include "tinpc/opc.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>

#include "tinpc/simplex.hpp"

namespace tinpc {

namespace {

std::vector<std::size_t> members(UserMask mask) {
  std::vector<std::size_t> out;
  for (std::size_t u = 0; mask; ++u, mask >>= 1)
    if (mask & 1U) out.push_back(u);
  return out;
}

void check_limit(const Topology& t, std::size_t limit) {
  if (t.size() > limit || t.size() >= kMaxMaskUsers) {
    throw EnumerationLimitError("K = " + std::to_string(t.size()) + " exceeds the enumeration limit of " +
                                std::to_string(limit));
  }
}

// Next mask with the same popcount (Gosper's hack).
UserMask next_same_popcount(UserMask v) {
  const UserMask c = v & -v;
  const UserMask r = v + c;
  return (((r ^ v) >> 2) / c) | r;
}

// Switches off users with zero GDoF until every active user is strictly
// positive. Dropping a user never lowers anyone else's GDoF.
PowerAllocation drop_silent_users(const Topology& t, PowerAllocation r) {
  for (;;) {
    const GdofOutcome g = sum_gdof(t, r);
    std::vector<PowerLevel> levels = r.levels();
    bool changed = false;
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (!levels[i].is_off() && g.per_user[i].is_zero()) {
        levels[i] = PowerLevel::off();
        changed = true;
      }
    }
    if (!changed) return r;
    r = PowerAllocation(std::move(levels));
  }
}

}  // namespace

std::optional<SubsetLpResult> subset_lp(const Topology& t, UserMask subset) {
  if (subset == 0) throw std::invalid_argument("subset_lp needs a nonempty subset");
  if (t.size() < kMaxMaskUsers && (subset >> t.size()) != 0) {
    throw std::invalid_argument("subset names a user outside the topology");
  }
  const std::vector<std::size_t> users = members(subset);
  const std::size_t s = users.size();

  Rational direct_sum;
  for (std::size_t u : users) direct_sum += t.direct(u);

  if (s == 1) {
    std::vector<PowerLevel> levels(t.size(), PowerLevel::off());
    levels[users[0]] = PowerLevel::at(Rational{});
    return SubsetLpResult{t.direct(users[0]), PowerAllocation(std::move(levels))};
  }

  // Variables: attenuation p_a = -r_a >= 0 (a < s) and interference-plus-
  // noise exponent t_a >= 0 (s + a). Maximize sum(alpha_aa - p_a - t_a).
  LpProblem lp;
  lp.variable_count = 2 * s;
  lp.objective.assign(2 * s, Rational(-1));
  lp.nonnegative.assign(2 * s, true);
  for (std::size_t a = 0; a < s; ++a) {
    for (std::size_t b = 0; b < s; ++b) {
      if (a == b) continue;
      const Rational& cross = t.alpha(users[a], users[b]);
      // t_a >= alpha_ab - p_b; vacuous when alpha_ab = 0.
      if (cross.sign() <= 0) continue;
      LpConstraint row{std::vector<Rational>(2 * s), Relation::GreaterEqual, cross};
      row.coefficients[b] = 1;
      row.coefficients[s + a] = 1;
      lp.constraints.push_back(std::move(row));
    }
    // Nonnegative GDoF: p_a + t_a <= alpha_aa.
    LpConstraint row{std::vector<Rational>(2 * s), Relation::LessEqual, t.direct(users[a])};
    row.coefficients[a] = 1;
    row.coefficients[s + a] = 1;
    lp.constraints.push_back(std::move(row));
  }

  const LpSolution sol = solve_lp(lp);
  if (sol.status == LpStatus::Infeasible) return std::nullopt;
  if (sol.status == LpStatus::Unbounded) throw std::logic_error("subset LP reported unbounded");

  std::vector<PowerLevel> levels(t.size(), PowerLevel::off());
  for (std::size_t a = 0; a < s; ++a) levels[users[a]] = PowerLevel::at(-sol.x[a]);
  return SubsetLpResult{direct_sum + sol.value, PowerAllocation(std::move(levels))};
}

OpcResult solve_opc(const Topology& t, const OpcOptions& options) {
  check_limit(t, options.enumeration_limit);
  const std::size_t k = t.size();
  const UserMask full = (UserMask{1} << k) - 1;

  // Per subset: an upper bound on its LP value (exact once solved), or
  // infeasible. Removing user i from a feasible support keeps it feasible
  // and loses at most alpha_ii, so V(s) <= V(s \ {i}) + alpha_ii.
  struct Entry {
    Rational upper;
    bool infeasible = false;
  };
  std::vector<Entry> table(std::size_t{1} << k);
  std::vector<std::pair<UserMask, Rational>> solved;

  Rational best;  // the empty support achieves 0
  UserMask best_mask = 0;
  std::optional<PowerAllocation> best_allocation;
  auto consider = [&](UserMask mask, const Rational& value) {
    if (value > best || (value == best && mask < best_mask)) {
      best = value;
      best_mask = mask;
      return true;
    }
    return false;
  };
  if (options.collect_all_optima) solved.emplace_back(0, Rational{});

  for (std::size_t pop = 1; pop <= k; ++pop) {
    for (UserMask mask = (UserMask{1} << pop) - 1; mask <= full; mask = next_same_popcount(mask)) {
      Entry& entry = table[mask];
      if (pop == 1) {
        const std::size_t u = static_cast<std::size_t>(std::countr_zero(mask));
        entry.upper = t.direct(u);
        if (options.collect_all_optima) solved.emplace_back(mask, entry.upper);
        if (consider(mask, entry.upper)) best_allocation.reset();
        if (mask == full) break;
        continue;
      }

      std::optional<Rational> bound;
      for (UserMask rest = mask; rest; rest &= rest - 1) {
        const UserMask bit = rest & -rest;
        const Entry& sub = table[mask ^ bit];
        if (sub.infeasible) {
          entry.infeasible = true;
          break;
        }
        Rational cand = sub.upper + t.direct(static_cast<std::size_t>(std::countr_zero(bit)));
        if (!bound || cand < *bound) bound = std::move(cand);
      }
      if (entry.infeasible) {
        if (mask == full) break;
        continue;
      }
      entry.upper = *bound;
      const bool prune = options.collect_all_optima
                             ? entry.upper < best
                             : (entry.upper < best || (entry.upper == best && mask > best_mask));
      if (!prune) {
        auto lp = subset_lp(t, mask);
        if (!lp) {
          entry.infeasible = true;
        } else {
          entry.upper = lp->value;
          if (options.collect_all_optima) solved.emplace_back(mask, lp->value);
          if (consider(mask, lp->value)) best_allocation = std::move(lp->allocation);
        }
      }
      if (mask == full) break;
    }
  }

  OpcResult out;
  out.value = best;
  PowerAllocation witness = PowerAllocation::all_off(k);
  if (best_mask != 0) {
    if (!best_allocation) best_allocation = subset_lp(t, best_mask)->allocation;
    witness = normalize_power(drop_silent_users(t, *best_allocation));
  }
  out.outcome = sum_gdof(t, witness);
  if (out.outcome.total != best) {
    throw std::logic_error("OPC witness reproduces " + out.outcome.total.to_string() + " instead of " +
                           best.to_string());
  }
  out.active_set = witness.on_set();
  out.allocation = std::move(witness);
  if (options.collect_all_optima) {
    for (const auto& [mask, value] : solved)
      if (value == best) out.optimal_sets.push_back(mask);
    std::sort(out.optimal_sets.begin(), out.optimal_sets.end());
  }
  return out;
}

Rational solve_opc_grid(const Topology& t, const Rational& step, const Rational& floor, const GridOptions& options) {
  if (step.sign() <= 0) throw std::invalid_argument("grid step must be positive");
  if (floor.sign() >= 0) throw std::invalid_argument("grid floor must be negative");
  const std::size_t k = t.size();

  std::vector<PowerLevel> levels{PowerLevel::off()};
  for (Rational v; v >= floor; v -= step) levels.push_back(PowerLevel::at(v));

  double points = 1;
  for (std::size_t i = 0; i < k; ++i) points *= static_cast<double>(levels.size());
  if (points > static_cast<double>(options.budget)) {
    throw EnumerationLimitError("grid of " + std::to_string(points) + " points exceeds the budget of " +
                                std::to_string(options.budget));
  }

  std::vector<std::size_t> index(k, 0);
  std::vector<PowerLevel> current(k, levels[0]);
  Rational best;
  for (;;) {
    const Rational total = sum_gdof(t, PowerAllocation(current)).total;
    if (total > best) best = total;
    std::size_t pos = 0;
    while (pos < k && ++index[pos] == levels.size()) {
      index[pos] = 0;
      current[pos] = levels[0];
      ++pos;
    }
    if (pos == k) break;
    current[pos] = levels[index[pos]];
  }
  return best;
}

bool is_strictly_positive_class(const Topology& t, std::size_t enumeration_limit) {
  OpcOptions options;
  options.enumeration_limit = enumeration_limit;
  options.collect_all_optima = true;
  const OpcResult r = solve_opc(t, options);
  const UserMask full = (UserMask{1} << t.size()) - 1;
  return r.optimal_sets.size() == 1 && r.optimal_sets.front() == full;
}

}  // namespace tinpc
