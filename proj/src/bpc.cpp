#include "tinpc/bpc.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tinpc/rate.hpp"

namespace tinpc {

namespace {

void check_limit(const Topology& t, std::size_t limit) {
  if (t.size() > limit || t.size() >= kMaxMaskUsers) {
    throw EnumerationLimitError("K = " + std::to_string(t.size()) + " exceeds the enumeration limit of " +
                                std::to_string(limit));
  }
}

// Depth-first walk over on/off decisions. `interference[i]` is the strongest
// cross link into receiver i from users already switched on (0 = noise), so
// switching user u on costs O(K) and every leaf costs O(K).
class GdofEnumerator {
 public:
  explicit GdofEnumerator(const Topology& t) : t_(t), k_(t.size()) {}

  BpcGdofResult run() {
    std::vector<Rational> interference(k_);
    visit(0, 0, interference);
    // Leaves arrive in an order that is not ascending by mask.
    std::sort(result_.best_sets.begin(), result_.best_sets.end());
    return std::move(result_);
  }

 private:
  void visit(std::size_t u, UserMask mask, const std::vector<Rational>& interference) {
    if (u == k_) {
      Rational total;
      for (std::size_t i = 0; i < k_; ++i)
        if ((mask >> i) & 1U) total += positive_part(t_.direct(i) - interference[i]);
      if (result_.best_sets.empty() || total > result_.value) {
        result_.value = total;
        result_.best_sets.assign(1, mask);
      } else if (total == result_.value) {
        result_.best_sets.push_back(mask);
      }
      return;
    }
    visit(u + 1, mask, interference);
    std::vector<Rational> next = interference;
    for (std::size_t i = 0; i < k_; ++i)
      if (i != u && next[i] < t_.alpha(i, u)) next[i] = t_.alpha(i, u);
    visit(u + 1, mask | (UserMask{1} << u), next);
  }

  const Topology& t_;
  std::size_t k_;
  BpcGdofResult result_;
};

}  // namespace

BpcGdofResult solve_bpc_gdof(const Topology& t, std::size_t enumeration_limit) {
  check_limit(t, enumeration_limit);
  return GdofEnumerator(t).run();
}

BpcRateResult solve_bpc_rate(const Topology& t, double p_db, std::size_t enumeration_limit) {
  check_limit(t, enumeration_limit);
  if (!std::isfinite(p_db)) throw std::invalid_argument("SNR in dB must be finite");
  const std::size_t k = t.size();
  const UserMask count = UserMask{1} << k;

  std::vector<double> totals(count, 0.0);
  double best = 0.0;
  for (UserMask mask = 1; mask < count; ++mask) {
    const PowerAllocation r = binary_allocation(k, mask);
    double total = 0;
    for (std::size_t i = 0; i < k; ++i)
      if ((mask >> i) & 1U) total += user_rate(t, p_db, r, i);
    totals[mask] = total;
    best = std::max(best, total);
  }
  BpcRateResult out;
  out.value = best;
  const double tol = 1e-12 * std::max(1.0, best);
  for (UserMask mask = 0; mask < count; ++mask)
    if (totals[mask] >= best - tol) out.best_sets.push_back(mask);
  return out;
}

std::vector<std::size_t> mask_to_users(UserMask mask) {
  std::vector<std::size_t> out;
  for (std::size_t u = 0; mask; ++u, mask >>= 1)
    if (mask & 1U) out.push_back(u + 1);
  return out;
}

}  // namespace tinpc
