#include <doctest.h>

#include "support.hpp"
#include "tinpc/opc.hpp"
#include "tinpc/simplex.hpp"

using namespace tinpc;
using namespace tinpc::testing;

namespace {

LpConstraint row(std::vector<Rational> c, Relation rel, Rational rhs) { return {std::move(c), rel, std::move(rhs)}; }

}  // namespace

TEST_CASE("maximize x subject to x <= 5") {
  LpProblem p{1, {1}, {row({1}, Relation::LessEqual, 5)}, {}};
  const LpSolution s = simplex_solve(p);
  CHECK(s.status == LpStatus::Optimal);
  CHECK(s.value == 5);
  CHECK(s.x == std::vector<Rational>{5});
}

TEST_CASE("free variables reach the origin") {
  // max x + y, x <= 0, y <= 0, y >= x - 1
  LpProblem p{2,
              {1, 1},
              {row({1, 0}, Relation::LessEqual, 0), row({0, 1}, Relation::LessEqual, 0),
               row({-1, 1}, Relation::GreaterEqual, -1)},
              {}};
  const LpSolution s = simplex_solve(p);
  CHECK(s.value == 0);
  CHECK(s.x == std::vector<Rational>{0, 0});
}

TEST_CASE("equalities, fractions and nonnegativity") {
  // max 3x + 2y, x + y = 4, x + 3y <= 6, x <= 3, x,y >= 0 -> x = 3, y = 1
  LpProblem p{2,
              {3, 2},
              {row({1, 1}, Relation::Equal, 4), row({1, 3}, Relation::LessEqual, 6), row({1, 0}, Relation::LessEqual, 3)},
              {true, true}};
  const LpSolution s = simplex_solve(p);
  CHECK(s.value == 11);
  CHECK(s.x == std::vector<Rational>{3, 1});

  LpProblem h{2, {1, 1}, {row({2, 1}, Relation::LessEqual, 1), row({1, 2}, Relation::LessEqual, 1)}, {true, true}};
  const LpSolution sh = simplex_solve(h);
  CHECK(sh.value == q("2/3"));
  CHECK(sh.x == std::vector<Rational>{q("1/3"), q("1/3")});
}

TEST_CASE("infeasible and unbounded") {
  LpProblem inf{1, {1}, {row({1}, Relation::LessEqual, 1), row({1}, Relation::GreaterEqual, 2)}, {}};
  CHECK(solve_lp(inf).status == LpStatus::Infeasible);
  CHECK_THROWS_AS(simplex_solve(inf), LpInfeasible);

  LpProblem unb{2, {1, 0}, {row({-1, 1}, Relation::LessEqual, 1)}, {true, true}};
  CHECK(solve_lp(unb).status == LpStatus::Unbounded);
  CHECK_THROWS_AS(simplex_solve(unb), LpUnbounded);

  LpProblem bad{2, {1}, {}, {}};
  CHECK_THROWS(solve_lp(bad));
}

TEST_CASE("degenerate problem terminates under Bland's rule") {
  // Classic cycling example (Beale), optimum 1/20.
  LpProblem p{4,
              {q("3/4"), -150, q("1/50"), -6},
              {row({q("1/4"), -60, q("-1/25"), 9}, Relation::LessEqual, 0),
               row({q("1/2"), -90, q("-1/50"), 3}, Relation::LessEqual, 0), row({0, 0, 1, 0}, Relation::LessEqual, 1)},
              {true, true, true, true}};
  const LpSolution s = simplex_solve(p);
  CHECK(s.value == q("1/20"));
}

TEST_CASE("subset LP of the five-user extremal topology") {
  const auto res = subset_lp(extremal_small(5), 0b11111);
  REQUIRE(res);
  CHECK(res->value == 9);
  CHECK(sum_gdof(extremal_small(5), res->allocation).total == 9);
}
