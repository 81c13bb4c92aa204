#include "tinpc/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "tinpc/bpc.hpp"

namespace tinpc {

namespace {

std::vector<std::size_t> order_by_power(const PowerAllocation& r) {
  std::vector<std::size_t> order(r.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return r[a].exponent() > r[b].exponent(); });
  return order;
}

AggregateCertificate aggregate(const OptimalAllocation& opt, std::vector<std::size_t> order,
                               const std::vector<BoundTemplate>& templates, std::int64_t opc_multiplier) {
  AggregateCertificate cert;
  cert.allocation = opt.allocation;
  cert.opc_multiplier = opc_multiplier;
  cert.opc_value = opt.opc_value;
  cert.bpc_value = opt.bpc_value;
  for (const auto& tpl : templates) {
    std::vector<std::size_t> users;
    users.reserve(tpl.positions.size());
    for (std::size_t p : tpl.positions) users.push_back(order.at(p - 1));
    WeightedBound wb{tpl.weight, bound_B(opt, users)};
    cert.weighted_sum += Rational(tpl.weight) * wb.certificate.bound;
    cert.total_weight += tpl.weight;
    cert.terms.push_back(std::move(wb));
  }
  cert.order = std::move(order);
  cert.constant = Rational(cert.total_weight, opc_multiplier);
  cert.lower_side_holds = cert.weighted_sum >= Rational(opc_multiplier) * opt.opc_value;
  cert.upper_side_holds = cert.weighted_sum <= Rational(cert.total_weight) * opt.bpc_value;
  if (cert.weighted_sum.sign() <= 0) {
    throw std::logic_error("bound combination sums to " + cert.weighted_sum.to_string());
  }
  cert.ratio_bound = Rational(cert.total_weight) * opt.opc_value / cert.weighted_sum;
  return cert;
}

std::vector<std::size_t> range(std::size_t first, std::size_t last) {
  std::vector<std::size_t> out;
  for (std::size_t p = first; p <= last; ++p) out.push_back(p);
  return out;
}

}  // namespace

OptimalAllocation certify_optimal(const Topology& t, const PowerAllocation& r, std::size_t enumeration_limit) {
  if (r.size() != t.size()) throw PreconditionError("allocation size does not match topology");
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (r[i].is_off()) throw PreconditionError("user " + std::to_string(i + 1) + " is off; every user must transmit");
  }
  OpcOptions options;
  options.enumeration_limit = enumeration_limit;
  options.collect_all_optima = true;
  const OpcResult opc = solve_opc(t, options);
  const UserMask full = (UserMask{1} << t.size()) - 1;
  if (opc.optimal_sets != std::vector<UserMask>{full}) {
    throw PreconditionError("topology is not in the strictly positive class: its optimum " + opc.value.to_string() +
                            " is reachable with a user at zero GDoF");
  }
  GdofOutcome outcome = sum_gdof(t, r);
  if (outcome.total != opc.value) {
    throw PreconditionError("allocation achieves " + outcome.total.to_string() + ", not the optimum " +
                            opc.value.to_string());
  }
  return OptimalAllocation{t, r, std::move(outcome), opc.value, solve_bpc_gdof(t, enumeration_limit).value};
}

BoundCertificate bound_B(const OptimalAllocation& opt, const std::vector<std::size_t>& ordered_users) {
  const std::size_t k = opt.topology.size();
  const std::size_t len = ordered_users.size();
  if (len == 0) throw std::invalid_argument("bound needs at least one user");
  std::vector<bool> seen(k);
  for (std::size_t u : ordered_users) {
    if (u >= k) throw std::out_of_range("user " + std::to_string(u + 1) + " out of range");
    if (seen[u]) throw std::invalid_argument("user " + std::to_string(u + 1) + " listed twice");
    seen[u] = true;
  }
  const PowerAllocation& r = opt.allocation;
  for (std::size_t i = 1; i < len; ++i) {
    if (r[ordered_users[i - 1]].exponent() < r[ordered_users[i]].exponent()) {
      throw PreconditionError("users must be ordered by non-increasing power: user " +
                              std::to_string(ordered_users[i - 1] + 1) + " is below user " +
                              std::to_string(ordered_users[i] + 1));
    }
  }

  auto d = [&](std::size_t pos) -> const Rational& { return opt.outcome.per_user[ordered_users[pos]]; };
  auto rr = [&](std::size_t pos) -> const Rational& { return r[ordered_users[pos]].exponent(); };

  BoundCertificate out;
  out.ordered_users = ordered_users;
  if (len == 1) {
    out.terms.push_back(d(0) - rr(0));
  } else {
    for (std::size_t i = 0; i + 1 < len; ++i) out.terms.push_back(d(i) + rr(len - 1) - rr(i));
    out.terms.push_back(d(len - 1) + rr(len - 2) - rr(len - 1));
  }
  for (const auto& term : out.terms) out.bound += term;
  return out;
}

BoundCertificate bound_B(const Topology& t, const PowerAllocation& r, const std::vector<std::size_t>& ordered_users) {
  return bound_B(certify_optimal(t, r), ordered_users);
}

const SmallKCombination& small_k_combination(std::size_t k) {
  static const std::vector<SmallKCombination> table = {
      {{{1, {1, 2}}}, 1},
      {{{1, {1, 2}}, {1, {2, 3}}, {1, {1, 3}}}, 2},
      {{{1, {1, 2}}, {1, {3, 4}}}, 1},
      {{{2, {5}}, {1, {1, 2}}, {1, {1, 4}}, {1, {2, 4}}, {2, {1, 2, 3}}, {2, {3, 4, 5}}}, 4},
      {{{6, {5}},
        {10, {6}},
        {1, {1, 2}},
        {6, {1, 2, 4}},
        {8, {1, 2, 3}},
        {3, {3, 4, 5}},
        {2, {4, 5, 6}},
        {4, {3, 4, 5, 6}},
        {1, {1, 2, 3, 4, 5}}},
       16},
  };
  if (k < 2 || k > 6) throw std::invalid_argument("small-K certificates exist for K in {2..6}, got " + std::to_string(k));
  return table[k - 2];
}

AggregateCertificate certificate_small_k(const Topology& t, const PowerAllocation& r, std::size_t enumeration_limit) {
  const SmallKCombination& combo = small_k_combination(t.size());
  if (r.size() != t.size()) throw PreconditionError("allocation size does not match topology");
  const PowerAllocation normalized = normalize_power(r);
  const OptimalAllocation opt = certify_optimal(t, normalized, enumeration_limit);
  return aggregate(opt, order_by_power(normalized), combo.bounds, combo.opc_multiplier);
}

AggregateCertificate certificate_square(const Topology& t, const PowerAllocation& r, int m,
                                        std::size_t enumeration_limit) {
  if (m < 1) throw std::invalid_argument("square certificate needs m >= 1");
  const auto mm = static_cast<std::size_t>(m);
  if (t.size() != mm * mm) {
    throw std::invalid_argument("square certificate needs K = m^2 = " + std::to_string(mm * mm) + ", got K = " +
                                std::to_string(t.size()));
  }
  if (r.size() != t.size()) throw PreconditionError("allocation size does not match topology");
  const PowerAllocation normalized = normalize_power(r);
  const OptimalAllocation opt = certify_optimal(t, normalized, enumeration_limit);

  const std::size_t k = mm * mm;
  std::vector<BoundTemplate> templates;
  // Windows of m consecutive users.
  for (std::size_t i = 1; i <= k - mm + 1; ++i) templates.push_back({1, range(i, i + mm - 1)});
  // Prefixes [1], [1,2], ..., [1..m-1].
  if (mm >= 2) {
    templates.push_back({1, {1}});
    for (std::size_t i = 2; i + 1 <= mm; ++i) templates.push_back({1, range(1, i)});
  }
  // Singletons of the last m-1 users with weights 1..m-1.
  for (std::size_t i = 1; i + 1 <= mm; ++i) {
    templates.push_back({static_cast<std::int64_t>(i), {i + k - mm + 1}});
  }
  return aggregate(opt, order_by_power(normalized), templates, m);
}

Envelope theorem2_envelope(std::int64_t k) {
  if (k < 1) throw std::invalid_argument("envelope needs K >= 1");
  Envelope e;
  while ((e.lower + 1) * (e.lower + 1) <= k) ++e.lower;
  e.upper = 2.5 * std::sqrt(static_cast<double>(k));
  e.upper_squared = Rational(25 * k, 4);
  return e;
}

std::optional<Rational> known_extremal_gain(std::size_t k) {
  switch (k) {
    case 1:
    case 2:
      return Rational(1);
    case 3:
      return Rational(3, 2);
    case 4:
      return Rational(2);
    case 5:
      return Rational(9, 4);
    case 6:
      return Rational(41, 16);
    default:
      return std::nullopt;
  }
}

std::string describe(const AggregateCertificate& cert) {
  std::ostringstream os;
  os << "order (by non-increasing power):";
  for (std::size_t u : cert.order) os << ' ' << u + 1;
  os << "\nallocation: " << cert.allocation.to_string() << '\n';
  for (const auto& wb : cert.terms) {
    os << wb.weight << " x B[";
    for (std::size_t i = 0; i < wb.certificate.ordered_users.size(); ++i)
      os << (i ? "," : "") << wb.certificate.ordered_users[i] + 1;
    os << "] = " << wb.certificate.bound << "  (terms";
    for (const auto& term : wb.certificate.terms) os << ' ' << term;
    os << ")\n";
  }
  os << "D_o = " << cert.opc_value << ", D_b = " << cert.bpc_value << '\n';
  os << cert.total_weight << " * D_b = " << Rational(cert.total_weight) * cert.bpc_value
     << (cert.upper_side_holds ? " >= " : " < ") << "weighted sum " << cert.weighted_sum
     << (cert.lower_side_holds ? " >= " : " < ") << cert.opc_multiplier << " * D_o = "
     << Rational(cert.opc_multiplier) * cert.opc_value << '\n';
  os << "ratio bound " << cert.ratio_bound << " <= " << cert.constant << '\n';
  os << "holds: " << (cert.holds() ? "yes" : "no") << '\n';
  return os.str();
}

}  // namespace tinpc
