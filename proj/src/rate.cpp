#include "tinpc/rate.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "tinpc/bpc.hpp"

namespace tinpc {

namespace {

double log_snr(double p_db) {
  if (!std::isfinite(p_db)) throw std::invalid_argument("SNR in dB must be finite");
  return std::log(10.0) * p_db / 10.0;
}

// log(1 + e^x) without overflow or cancellation.
double softplus(double x) { return x > 0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x)); }

}  // namespace

double user_rate(const Topology& t, double p_db, const PowerAllocation& r, std::size_t i) {
  if (r.size() != t.size()) throw std::invalid_argument("allocation size does not match topology");
  if (i >= t.size()) throw std::out_of_range("user index out of range");
  const double lnp = log_snr(p_db);
  if (r[i].is_off()) return 0.0;

  const double signal = (t.direct(i) + r[i].exponent()).to_double() * lnp;
  // log(1 + sum_k e^{x_k}) by log-sum-exp over {0} and the interferers.
  std::vector<double> terms{0.0};
  for (std::size_t k = 0; k < t.size(); ++k) {
    if (k == i || r[k].is_off()) continue;
    terms.push_back((t.alpha(i, k) + r[k].exponent()).to_double() * lnp);
  }
  double top = terms.front();
  for (double x : terms) top = std::max(top, x);
  double acc = 0;
  for (double x : terms) acc += std::exp(x - top);
  const double noise = top + std::log(acc);
  return softplus(signal - noise) / std::log(2.0);
}

double sum_rate(const Topology& t, double p_db, const PowerAllocation& r) {
  double total = 0;
  for (std::size_t i = 0; i < t.size(); ++i) total += user_rate(t, p_db, r, i);
  return total;
}

PowerAllocation kk_power_allocation(int m) {
  if (m < 1) throw std::invalid_argument("kk_power_allocation needs m >= 1");
  std::vector<Rational> exps;
  for (int g = 1; g <= m; ++g)
    for (int u = 0; u < m; ++u) exps.emplace_back(1 - g);
  return PowerAllocation::from_exponents(exps);
}

std::vector<SweepPoint> gain_sweep(const Topology& t, const PowerAllocation& r, const std::vector<double>& p_db_list) {
  if (p_db_list.empty()) throw std::invalid_argument("gain_sweep needs at least one SNR point");
  std::vector<SweepPoint> out;
  out.reserve(p_db_list.size());
  for (double p : p_db_list) {
    SweepPoint pt;
    pt.p_db = p;
    pt.r_sigma_proxy = sum_rate(t, p, r);
    pt.r_sigma_bpc = solve_bpc_rate(t, p).value;
    pt.gain = pt.r_sigma_bpc > 0 ? pt.r_sigma_proxy / pt.r_sigma_bpc : std::numeric_limits<double>::quiet_NaN();
    out.push_back(pt);
  }
  return out;
}

std::vector<double> db_range(double pmin, double pmax, double step) {
  if (!(step > 0)) throw std::invalid_argument("SNR step must be positive");
  if (pmax < pmin) throw std::invalid_argument("pmax must not be below pmin");
  std::vector<double> out;
  // Index-based so accumulated rounding never drops the last point.
  const auto n = static_cast<long>(std::floor((pmax - pmin) / step + 1e-9));
  for (long i = 0; i <= n; ++i) out.push_back(pmin + static_cast<double>(i) * step);
  return out;
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepPoint>& points) {
  os << "p_db,r_sigma_proxy,r_sigma_bpc,gain\n";
  char buf[128];
  for (const auto& p : points) {
    std::snprintf(buf, sizeof buf, "%.9g,%.9g,%.9g,%.9g\n", p.p_db, p.r_sigma_proxy, p.r_sigma_bpc, p.gain);
    os << buf;
  }
}

}  // namespace tinpc
