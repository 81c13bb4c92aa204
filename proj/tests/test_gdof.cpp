#include <doctest.h>

#include <random>

#include "support.hpp"
#include "tinpc/opc.hpp"
#include "tinpc/rate.hpp"
#include "tinpc/search.hpp"

using namespace tinpc;
using namespace tinpc::testing;

TEST_CASE("allocation parsing") {
  const PowerAllocation r = alloc("0 -1/2 off -inf OFF -0.25");
  REQUIRE(r.size() == 6);
  CHECK(r[1].exponent() == q("-1/2"));
  CHECK(r[2].is_off());
  CHECK(r[3].is_off());
  CHECK(r[4].is_off());
  CHECK(r[5].exponent() == q("-1/4"));
  CHECK(r.to_string() == "0 -1/2 off off off -1/4");
  CHECK_THROWS_AS(alloc("0 1/2"), ParseError);
  CHECK_THROWS_AS(alloc("0 nope"), ParseError);
  CHECK_THROWS_AS(alloc(""), ParseError);
  CHECK_THROWS(PowerLevel::at(1));
}

TEST_CASE("user_gdof examples") {
  const GdofOutcome f = sum_gdof(three_user_mixed(), alloc("-1/2 -1 -1"));
  CHECK(f.per_user == std::vector<Rational>{q("5/2"), 1, 2});
  CHECK(f.total == q("11/2"));

  const Topology a3 = extremal_small(3);
  CHECK(user_gdof(a3, alloc("0 off 0"), 1).is_zero());
  CHECK(user_gdof(matrix({{"7/3"}}), alloc("0"), 0) == q("7/3"));
  CHECK_THROWS(user_gdof(a3, alloc("0 0"), 0));
  CHECK_THROWS(user_gdof(a3, alloc("0 0 0"), 3));
}

TEST_CASE("sum_gdof examples") {
  for (int m = 1; m <= 4; ++m) {
    const GdofOutcome o = sum_gdof(extremal_grid(m), kk_power_allocation(m));
    CHECK(o.per_user == std::vector<Rational>(static_cast<std::size_t>(m * m), Rational(1)));
    CHECK(o.total == Rational(m * m));
  }
  const GdofOutcome off = sum_gdof(extremal_small(4), PowerAllocation::all_off(4));
  CHECK(off.per_user == std::vector<Rational>(4, Rational(0)));
  CHECK(off.total.is_zero());

  const GdofOutcome a5 = sum_gdof(extremal_small(5), alloc("0 0 -1 -2 -2"));
  CHECK(a5.per_user == std::vector<Rational>{2, 2, 1, 2, 2});
  CHECK(a5.total == 9);
}

TEST_CASE("normalize_power") {
  CHECK(normalize_power(alloc("-1/2 -1 -1")) == alloc("0 -1/2 -1/2"));
  CHECK(normalize_power(alloc("0 -2")) == alloc("0 -2"));
  CHECK(normalize_power(alloc("off -3 -5")) == alloc("off 0 -2"));
  CHECK_THROWS(normalize_power(alloc("off off")));
  CHECK(sum_gdof(three_user_mixed(), normalize_power(alloc("-1/2 -1 -1"))).per_user == std::vector<Rational>{q("5/2"), 1, 2});
}

TEST_CASE("binary_allocation") {
  CHECK(binary_allocation(3, 0b101) == alloc("0 off 0"));
  CHECK(binary_allocation(3, 0) == alloc("off off off"));
  CHECK(binary_allocation(3, 0b111) == alloc("0 0 0"));
  CHECK(binary_allocation(3, 0b101).is_binary());
  CHECK(!alloc("0 -1").is_binary());
  CHECK(alloc("0 off -1").on_set() == 0b101);
  CHECK_THROWS(binary_allocation(2, 0b100));
}

TEST_CASE("normalization never lowers a GDoF and keeps it when interference is above noise") {
  // Raising every power lifts signal and interference alike; only a user whose
  // strongest interference sits below the noise floor can gain.
  std::mt19937_64 rng(1);
  int premise = 0;
  for (int it = 0; it < 3000; ++it) {
    const std::size_t k = 1 + rng() % 5;
    const Topology t = random_topology(k, 3, q("1/4"), rng());
    const PowerAllocation r = random_allocation(k, rng);
    const GdofOutcome before = sum_gdof(t, r);
    const GdofOutcome after = sum_gdof(t, normalize_power(r));
    for (std::size_t i = 0; i < k; ++i) {
      CHECK(after.per_user[i] >= before.per_user[i]);
      bool above_noise = false;
      for (std::size_t j = 0; j < k; ++j)
        if (j != i && !r[j].is_off()) above_noise = above_noise || (t.alpha(i, j) + r[j].exponent()).sign() >= 0;
      if (above_noise || r[i].is_off()) CHECK(after.per_user[i] == before.per_user[i]);
      premise += above_noise;
    }
  }
  CHECK(premise > 1000);
  // One user below the noise floor does gain.
  CHECK(sum_gdof(matrix({{"1"}}), alloc("-1/2")).total == q("1/2"));
  CHECK(sum_gdof(matrix({{"1"}}), normalize_power(alloc("-1/2"))).total == 1);
}

TEST_CASE("normalization keeps the OPC optimum of an optimal allocation") {
  std::mt19937_64 rng(19);
  for (int it = 0; it < 200; ++it) {
    const std::size_t k = 1 + rng() % 4;
    const Topology t = random_topology(k, 3, q("1/2"), rng());
    const auto opt = solve_opc(t);
    if (opt.allocation.on_set() == 0) continue;
    std::vector<PowerLevel> shifted;
    for (const auto& level : opt.allocation.levels())
      shifted.push_back(level.is_off() ? level : PowerLevel::at(level.exponent() - 2));
    const PowerAllocation low(std::move(shifted));
    CHECK(sum_gdof(t, normalize_power(low)).total == opt.value);
    CHECK(sum_gdof(t, low).total <= opt.value);
  }
}

TEST_CASE("stronger cross links never help and GDoF stays within [0, alpha_ii]") {
  std::mt19937_64 rng(2);
  for (int it = 0; it < 500; ++it) {
    const std::size_t k = 2 + rng() % 4;
    const Topology t = random_topology(k, 3, q("1/2"), rng());
    const PowerAllocation r = random_allocation(k, rng);
    const std::size_t i = rng() % k;
    std::size_t j = rng() % k;
    if (j == i) j = (j + 1) % k;
    const Topology stronger = t.with_entry(i, j, t.alpha(i, j) + Rational(static_cast<std::int64_t>(1 + rng() % 4), 2));
    CHECK(user_gdof(stronger, r, i) <= user_gdof(t, r, i));
    for (std::size_t u = 0; u < k; ++u) {
      const Rational d = user_gdof(t, r, u);
      CHECK(d.sign() >= 0);
      CHECK(d <= t.direct(u));
    }
  }
}
