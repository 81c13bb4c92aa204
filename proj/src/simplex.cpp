#include "tinpc/simplex.hpp"

#include <string>

namespace tinpc {

namespace {

// Dictionary-form tableau for: max c.x, A x <= b, x >= 0.
//
// Rows 0..m-1 are constraints, row m the objective, row m+1 the phase-one
// objective. Column n is the artificial variable, column n+1 the RHS.
// Nonbasic variable ids live in nonbasic_, basic ids in basic_; slack of row
// i has id n+i and the artificial variable has id -1.
class Tableau {
 public:
  Tableau(const std::vector<std::vector<Rational>>& a, const std::vector<Rational>& b, const std::vector<Rational>& c)
      : m_(b.size()), n_(c.size()), cols_(n_ + 2), d_((m_ + 2) * cols_), basic_(m_), nonbasic_(n_ + 1) {
    for (std::size_t i = 0; i < m_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) at(i, j) = a[i][j];
      basic_[i] = static_cast<long>(n_ + i);
      at(i, n_) = -1;
      at(i, n_ + 1) = b[i];
    }
    for (std::size_t j = 0; j < n_; ++j) {
      nonbasic_[j] = static_cast<long>(j);
      at(m_, j) = -c[j];
    }
    nonbasic_[n_] = -1;
    at(m_ + 1, n_) = 1;
  }

  LpStatus solve(Rational& value, std::vector<Rational>& x) {
    std::size_t r = 0;
    for (std::size_t i = 1; i < m_; ++i)
      if (at(i, n_ + 1) < at(r, n_ + 1)) r = i;
    if (m_ > 0 && at(r, n_ + 1).sign() < 0) {
      pivot(r, n_);
      if (!run(2) || at(m_ + 1, n_ + 1).sign() < 0) return LpStatus::Infeasible;
      for (std::size_t i = 0; i < m_; ++i) {
        if (basic_[i] != -1) continue;
        // Drive the artificial variable out of the basis; an all-zero row is
        // redundant and may keep it at value zero.
        std::size_t s = cols_;
        for (std::size_t j = 0; j <= n_; ++j) {
          if (nonbasic_[j] == -1 || at(i, j).is_zero()) continue;
          if (s == cols_ || nonbasic_[j] < nonbasic_[s]) s = j;
        }
        if (s != cols_) pivot(i, s);
      }
    }
    if (!run(1)) return LpStatus::Unbounded;
    x.assign(n_, Rational{});
    for (std::size_t i = 0; i < m_; ++i)
      if (basic_[i] >= 0 && static_cast<std::size_t>(basic_[i]) < n_) x[basic_[i]] = at(i, n_ + 1);
    value = at(m_, n_ + 1);
    return LpStatus::Optimal;
  }

 private:
  Rational& at(std::size_t i, std::size_t j) { return d_[i * cols_ + j]; }

  void pivot(std::size_t r, std::size_t s) {
    const Rational inv = Rational(1) / at(r, s);
    Rational* pivot_row = &d_[r * cols_];
    for (std::size_t i = 0; i < m_ + 2; ++i) {
      if (i == r) continue;
      Rational* row = &d_[i * cols_];
      if (row[s].is_zero()) continue;
      const Rational factor = row[s] * inv;
      for (std::size_t j = 0; j < cols_; ++j) {
        if (j == s || pivot_row[j].is_zero()) continue;
        row[j] -= pivot_row[j] * factor;
      }
      row[s] = -factor;
    }
    for (std::size_t j = 0; j < cols_; ++j)
      if (j != s && !pivot_row[j].is_zero()) pivot_row[j] *= inv;
    pivot_row[s] = inv;
    std::swap(basic_[r], nonbasic_[s]);
  }

  // Bland's rule: entering = lowest variable id with negative reduced cost,
  // leaving = minimum ratio with ties broken by lowest basic id.
  bool run(int phase) {
    const std::size_t obj = m_ + static_cast<std::size_t>(phase) - 1;
    for (;;) {
      std::size_t s = cols_;
      for (std::size_t j = 0; j <= n_; ++j) {
        if (nonbasic_[j] == -phase) continue;
        if (at(obj, j).sign() >= 0) continue;
        if (s == cols_ || nonbasic_[j] < nonbasic_[s]) s = j;
      }
      if (s == cols_) return true;

      std::size_t r = m_;
      Rational best;
      for (std::size_t i = 0; i < m_; ++i) {
        if (at(i, s).sign() <= 0) continue;
        Rational ratio = at(i, n_ + 1) / at(i, s);
        if (r == m_ || ratio < best || (ratio == best && basic_[i] < basic_[r])) {
          r = i;
          best = std::move(ratio);
        }
      }
      if (r == m_) return false;
      pivot(r, s);
    }
  }

  std::size_t m_;
  std::size_t n_;
  std::size_t cols_;
  std::vector<Rational> d_;
  std::vector<long> basic_;
  std::vector<long> nonbasic_;
};

}  // namespace

LpSolution solve_lp(const LpProblem& p) {
  const std::size_t nv = p.variable_count;
  if (p.objective.size() != nv) throw std::invalid_argument("objective length does not match variable count");
  if (!p.nonnegative.empty() && p.nonnegative.size() != nv) {
    throw std::invalid_argument("nonnegativity flags do not match variable count");
  }

  // Free variables are split into a difference of two nonnegative columns.
  std::vector<std::size_t> column_of(nv);
  std::vector<bool> split(nv);
  std::size_t n = 0;
  for (std::size_t v = 0; v < nv; ++v) {
    column_of[v] = n;
    split[v] = p.nonnegative.empty() || !p.nonnegative[v];
    n += split[v] ? 2 : 1;
  }

  std::vector<std::vector<Rational>> a;
  std::vector<Rational> b;
  auto add_row = [&](const LpConstraint& row, bool negate) {
    std::vector<Rational> out(n);
    for (std::size_t v = 0; v < nv; ++v) {
      const Rational coef = negate ? -row.coefficients[v] : row.coefficients[v];
      out[column_of[v]] = coef;
      if (split[v]) out[column_of[v] + 1] = -coef;
    }
    a.push_back(std::move(out));
    b.push_back(negate ? -row.rhs : row.rhs);
  };
  for (std::size_t i = 0; i < p.constraints.size(); ++i) {
    const auto& row = p.constraints[i];
    if (row.coefficients.size() != nv) {
      throw std::invalid_argument("constraint " + std::to_string(i) + " has the wrong number of coefficients");
    }
    switch (row.relation) {
      case Relation::LessEqual:
        add_row(row, false);
        break;
      case Relation::GreaterEqual:
        add_row(row, true);
        break;
      case Relation::Equal:
        add_row(row, false);
        add_row(row, true);
        break;
    }
  }
  std::vector<Rational> c(n);
  for (std::size_t v = 0; v < nv; ++v) {
    c[column_of[v]] = p.objective[v];
    if (split[v]) c[column_of[v] + 1] = -p.objective[v];
  }

  Tableau tableau(a, b, c);
  LpSolution out;
  std::vector<Rational> x;
  out.status = tableau.solve(out.value, x);
  if (out.status == LpStatus::Optimal) {
    out.x.resize(nv);
    for (std::size_t v = 0; v < nv; ++v) {
      out.x[v] = x[column_of[v]];
      if (split[v]) out.x[v] -= x[column_of[v] + 1];
    }
  }
  return out;
}

LpSolution simplex_solve(const LpProblem& problem) {
  LpSolution s = solve_lp(problem);
  if (s.status == LpStatus::Infeasible) throw LpInfeasible("linear program is infeasible");
  if (s.status == LpStatus::Unbounded) throw LpUnbounded("linear program is unbounded");
  return s;
}

}  // namespace tinpc
