#include <doctest.h>

#include <cmath>
#include <map>
#include <numeric>
#include <random>

#include "support.hpp"
#include "tinpc/bounds.hpp"
#include "tinpc/bpc.hpp"
#include "tinpc/rate.hpp"
#include "tinpc/search.hpp"

using namespace tinpc;
using namespace tinpc::testing;

TEST_CASE("bound_B examples") {
  const Topology t2 = two_user("1/4");
  const BoundCertificate b2 = bound_B(t2, alloc("0 -1/4"), {0, 1});
  CHECK(b2.bound == q("3/2"));
  CHECK(b2.bound == solve_bpc_gdof(t2).value);
  CHECK(bound_B(t2, alloc("0 0"), {0, 1}).bound == q("3/2"));

  // A non-optimal allocation is refused.
  CHECK_THROWS_AS(bound_B(t2, alloc("0 -1/2"), {0, 1}), PreconditionError);

  const Topology a5 = extremal_small(5);
  const PowerAllocation r5 = alloc("0 0 -1 -2 -2");
  const BoundCertificate b5 = bound_B(a5, r5, {2, 3, 4});
  CHECK(b5.terms == std::vector<Rational>{0, 2, 2});
  CHECK(b5.bound == 4);
  CHECK(b5.bound <= solve_bpc_gdof(a5).value);

  // Singletons at full power give back the user's GDoF.
  const OptimalAllocation opt = certify_optimal(a5, r5);
  CHECK(bound_B(opt, {0}).bound == 2);
  CHECK(bound_B(opt, {4}).bound == 4);

  CHECK_THROWS_AS(bound_B(opt, {3, 1}), PreconditionError);
  CHECK_THROWS(bound_B(opt, {}));
  CHECK_THROWS(bound_B(opt, {1, 1}));
  CHECK_THROWS(bound_B(opt, {5}));
}

TEST_CASE("certify_optimal preconditions") {
  CHECK_THROWS_AS(certify_optimal(two_user("1/2"), alloc("0 0")), PreconditionError);
  CHECK_THROWS_AS(certify_optimal(extremal_small(3), alloc("0 off 0")), PreconditionError);
  CHECK_THROWS_AS(certify_optimal(extremal_small(3), alloc("0 0")), PreconditionError);
  const OptimalAllocation opt = certify_optimal(extremal_small(3), alloc("0 0 -1"));
  CHECK(opt.opc_value == 3);
  CHECK(opt.bpc_value == 2);
}

TEST_CASE("small-K certificates on the extremal topologies") {
  CHECK(certificate_small_k(two_user("1/4"), alloc("0 0")).ratio_bound == 1);
  const std::map<int, Rational> expected{{3, q("3/2")}, {4, 2}, {5, q("9/4")}, {6, q("41/16")}};
  for (const auto& [k, value] : expected) {
    const AggregateCertificate cert = certificate_small_k(extremal_small(k), solve_opc(extremal_small(k)).allocation);
    CAPTURE(k);
    CHECK(cert.holds());
    CHECK(cert.ratio_bound == value);
    CHECK(cert.constant == value);
    CHECK(cert.opc_value / cert.bpc_value == value);
  }
  const AggregateCertificate c3 = certificate_small_k(extremal_small(3), alloc("0 0 -1"));
  CHECK(c3.ratio_bound == q("3/2"));
  const AggregateCertificate c6 = certificate_small_k(extremal_small(6), alloc("0 0 -5 -6 -8 -10"));
  CHECK(c6.ratio_bound == q("41/16"));
  CHECK(c6.weighted_sum == 656);
}

TEST_CASE("certificates relabel by power and accept shifted allocations") {
  const Topology a5 = extremal_small(5);
  const std::vector<std::size_t> order{4, 2, 0, 3, 1};
  const Topology p = a5.permuted(order);
  // Allocation of the permuted topology, shifted down by 3.
  const std::vector<Rational> base{0, 0, -1, -2, -2};
  std::vector<Rational> shifted;
  for (std::size_t u : order) shifted.push_back(base[u] - 3);
  const AggregateCertificate cert = certificate_small_k(p, PowerAllocation::from_exponents(shifted));
  CHECK(cert.holds());
  CHECK(cert.ratio_bound == q("9/4"));
  CHECK(cert.allocation == normalize_power(PowerAllocation::from_exponents(shifted)));
  for (std::size_t i = 1; i < cert.order.size(); ++i) {
    CHECK(cert.allocation[cert.order[i - 1]].exponent() >= cert.allocation[cert.order[i]].exponent());
  }
}

TEST_CASE("the six-user table reconstructs 16 D_o from the GDoF") {
  const SmallKCombination& combo = small_k_combination(6);
  CHECK(combo.opc_multiplier == 16);
  std::int64_t total = 0;
  std::vector<std::int64_t> coefficient(6);
  for (const auto& b : combo.bounds) {
    total += b.weight;
    for (std::size_t pos : b.positions) coefficient[pos - 1] += b.weight;
  }
  CHECK(total == 41);
  // Every user's GDoF appears once per bound it belongs to.
  CHECK(coefficient == std::vector<std::int64_t>(6, 16));
  const std::vector<std::int64_t> weights{6, 10, 1, 6, 8, 3, 2, 4, 1};
  for (std::size_t i = 0; i < weights.size(); ++i) CHECK(combo.bounds[i].weight == weights[i]);

  for (std::size_t k = 2; k <= 5; ++k) {
    const SmallKCombination& c = small_k_combination(k);
    std::vector<std::int64_t> cover(k);
    for (const auto& b : c.bounds)
      for (std::size_t pos : b.positions) cover[pos - 1] += b.weight;
    CHECK(cover == std::vector<std::int64_t>(k, c.opc_multiplier));
  }
  CHECK_THROWS(small_k_combination(1));
  CHECK_THROWS(small_k_combination(7));
}

TEST_CASE("square certificates") {
  const AggregateCertificate c1 = certificate_square(matrix({{"1"}}), alloc("0"), 1);
  CHECK(c1.holds());
  CHECK(c1.ratio_bound == 1);
  CHECK(c1.constant == 1);

  for (int m = 2; m <= 3; ++m) {
    const Topology g = extremal_grid(m);
    const AggregateCertificate c = certificate_square(g, kk_power_allocation(m), m);
    CHECK(c.holds());
    CHECK(c.total_weight == m * (3 * m - 1) / 2);
    CHECK(c.constant == Rational(m * (3 * m - 1), 2 * m));
    CHECK(c.opc_value / c.bpc_value <= c.ratio_bound);
  }
  CHECK_THROWS(certificate_square(extremal_small(3), alloc("0 0 -1"), 2));
}

TEST_CASE("random nine-user topologies in the strictly positive class") {
  std::mt19937_64 rng(90);
  int certified = 0;
  for (int it = 0; it < 4000 && certified < 3; ++it) {
    // Mostly-diagonal draws: sparse, weak cross links keep every user useful.
    std::vector<std::vector<Rational>> rows(9, std::vector<Rational>(9));
    for (std::size_t i = 0; i < 9; ++i)
      for (std::size_t j = 0; j < 9; ++j)
        rows[i][j] = i == j ? Rational(static_cast<std::int64_t>(2 + rng() % 3))
                            : (rng() % 4 == 0 ? Rational(static_cast<std::int64_t>(rng() % 4)) : Rational(0));
    const Topology t(std::move(rows));
    if (!is_strictly_positive_class(t)) continue;
    const AggregateCertificate c = certificate_square(t, solve_opc(t).allocation, 3);
    CHECK(c.holds());
    CHECK(c.ratio_bound <= 4);
    CHECK(ratio(t) <= c.ratio_bound);
    ++certified;
  }
  CHECK(certified == 3);
}

TEST_CASE("B-bounds never exceed the BPC optimum") {
  std::mt19937_64 rng(55);
  int tested = 0;
  for (int it = 0; it < 20000 && tested < 80; ++it) {
    const std::size_t k = 2 + rng() % 3;
    const Topology t = random_topology(k, 3, q("1/2"), rng());
    if (!is_strictly_positive_class(t)) continue;
    const OptimalAllocation opt = certify_optimal(t, solve_opc(t).allocation);
    std::vector<std::size_t> users(k);
    std::iota(users.begin(), users.end(), 0);
    std::stable_sort(users.begin(), users.end(),
                     [&](std::size_t a, std::size_t b) { return opt.allocation[a].exponent() > opt.allocation[b].exponent(); });
    for (UserMask s = 1; s < (UserMask{1} << k); ++s) {
      std::vector<std::size_t> chosen;
      for (std::size_t u : users)
        if (s >> u & 1U) chosen.push_back(u);
      CHECK(bound_B(opt, chosen).bound <= opt.bpc_value);
    }
    if (k <= 6) CHECK(opt.opc_value / opt.bpc_value <= certificate_small_k(t, opt.allocation).ratio_bound);
    ++tested;
  }
  CHECK(tested == 80);
}

TEST_CASE("envelope") {
  const Envelope e9 = theorem2_envelope(9);
  CHECK(e9.lower == 3);
  CHECK(e9.upper == doctest::Approx(7.5));
  CHECK(e9.upper_squared == q("225/4"));
  const Envelope e1 = theorem2_envelope(1);
  CHECK(e1.lower == 1);
  CHECK(e1.upper == doctest::Approx(2.5));
  const Envelope e6 = theorem2_envelope(6);
  CHECK(e6.lower == 2);
  CHECK(e6.admits(q("41/16")));
  CHECK(!e1.admits(q("5/2") + q("1/1000")));
  CHECK(e1.admits(q("5/2")));
  CHECK_THROWS(theorem2_envelope(0));

  CHECK(known_extremal_gain(6) == q("41/16"));
  CHECK(!known_extremal_gain(7));
}
