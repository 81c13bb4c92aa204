#pragma once

#include <cstddef>
#include <ostream>
#include <string>
#include <vector>

#include "tinpc/gdof.hpp"
#include "tinpc/topology.hpp"

namespace tinpc {

/// TIN rate of user i in bits per channel use at P = 10^(p_db/10):
/// log2(1 + P^(alpha_ii + r_i) / (1 + sum_{k != i, k on} P^(alpha_ik + r_k))).
/// Evaluated in the log domain; exponents times ln P may be as large as
/// ~1e6 without overflow. Throws std::invalid_argument for non-finite p_db.
double user_rate(const Topology& t, double p_db, const PowerAllocation& r, std::size_t i);

double sum_rate(const Topology& t, double p_db, const PowerAllocation& r);

/// Group-tiered allocation for extremal_grid(m): users of group g get 1 - g.
PowerAllocation kk_power_allocation(int m);

struct SweepPoint {
  double p_db = 0;
  double r_sigma_proxy = 0;  // sum rate under the supplied allocation
  double r_sigma_bpc = 0;    // best binary power control sum rate
  double gain = 0;           // proxy / bpc; NaN when bpc is 0
};

/// Evaluates both sum rates for every SNR point, in input order.
std::vector<SweepPoint> gain_sweep(const Topology& t, const PowerAllocation& r, const std::vector<double>& p_db_list);

/// pmin, pmin + step, ... up to pmax (inclusive, with a small tolerance).
std::vector<double> db_range(double pmin, double pmax, double step);

/// CSV with header p_db,r_sigma_proxy,r_sigma_bpc,gain and 9 significant
/// digits per value.
void write_sweep_csv(std::ostream& os, const std::vector<SweepPoint>& points);

}  // namespace tinpc
