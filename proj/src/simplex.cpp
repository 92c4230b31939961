#include "crnbound/simplex.hpp"

#include <optional>
#include <stdexcept>

namespace crn::lp {

namespace {

class Tableau {
 public:
  // Rows are constraints in canonical form w.r.t. `basis`; the last column is the rhs.
  std::vector<RationalVector> rows;
  std::vector<std::size_t> basis;
  RationalVector reduced;  // reduced costs, last entry is -objective
  std::size_t num_cols = 0;

  void pivot(std::size_t r, std::size_t c) {
    const Rational inv = 1 / rows[r][c];
    for (auto& v : rows[r]) v *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i != r && rows[i][c] != 0) eliminate(rows[i], rows[r], c);
    }
    if (reduced[c] != 0) eliminate(reduced, rows[r], c);
    basis[r] = c;
  }

  void set_cost(const RationalVector& cost) {
    reduced.assign(num_cols + 1, Rational(0));
    for (std::size_t j = 0; j < num_cols; ++j) reduced[j] = cost[j];
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (reduced[basis[r]] != 0) eliminate(reduced, rows[r], basis[r]);
    }
  }

  // Returns false when the objective is unbounded below.
  bool optimize(std::size_t allowed_cols) {
    while (true) {
      std::optional<std::size_t> enter;
      for (std::size_t j = 0; j < allowed_cols; ++j) {
        if (reduced[j] < 0) {
          enter = j;
          break;
        }
      }
      if (!enter) return true;
      std::optional<std::size_t> leave;
      Rational best;
      for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r][*enter] <= 0) continue;
        Rational ratio = rows[r][num_cols] / rows[r][*enter];
        if (!leave || ratio < best || (ratio == best && basis[r] < basis[*leave])) {
          leave = r;
          best = ratio;
        }
      }
      if (!leave) return false;
      pivot(*leave, *enter);
    }
  }

 private:
  static void eliminate(RationalVector& target, const RationalVector& pivot_row, std::size_t c) {
    const Rational f = target[c];
    for (std::size_t j = 0; j < target.size(); ++j) {
      if (pivot_row[j] != 0) target[j] -= f * pivot_row[j];
    }
  }
};

}  // namespace

Result solve(const Problem& problem) {
  const std::size_t m = problem.A.size();
  const std::size_t n = problem.cost.size();
  if (problem.b.size() != m) throw std::invalid_argument("lp: b has wrong size");
  for (const auto& row : problem.A) {
    if (row.size() != n) throw std::invalid_argument("lp: A has wrong width");
  }

  // Phase I: one artificial variable per row, columns n .. n+m-1.
  Tableau t;
  t.num_cols = n + m;
  for (std::size_t r = 0; r < m; ++r) {
    RationalVector row(n + m + 1, Rational(0));
    const bool flip = problem.b[r] < 0;
    for (std::size_t j = 0; j < n; ++j) row[j] = flip ? Rational(-problem.A[r][j]) : problem.A[r][j];
    row[n + r] = 1;
    row[n + m] = flip ? Rational(-problem.b[r]) : problem.b[r];
    t.rows.push_back(std::move(row));
    t.basis.push_back(n + r);
  }
  RationalVector phase1_cost(n + m, Rational(0));
  for (std::size_t r = 0; r < m; ++r) phase1_cost[n + r] = 1;
  t.set_cost(phase1_cost);
  t.optimize(n + m);

  Result result;
  if (-t.reduced[n + m] > 0) {
    result.status = Status::Infeasible;
    return result;
  }

  // Drive zero-valued artificials out of the basis; drop redundant rows.
  for (std::size_t r = 0; r < t.rows.size();) {
    if (t.basis[r] < n) {
      ++r;
      continue;
    }
    std::optional<std::size_t> col;
    for (std::size_t j = 0; j < n; ++j) {
      if (t.rows[r][j] != 0) {
        col = j;
        break;
      }
    }
    if (col) {
      t.pivot(r, *col);
      ++r;
    } else {
      t.rows.erase(t.rows.begin() + static_cast<std::ptrdiff_t>(r));
      t.basis.erase(t.basis.begin() + static_cast<std::ptrdiff_t>(r));
    }
  }

  // Phase II on the original columns; artificial columns are never re-entered.
  RationalVector cost(n + m, Rational(0));
  for (std::size_t j = 0; j < n; ++j) cost[j] = problem.cost[j];
  t.set_cost(cost);
  if (!t.optimize(n)) {
    result.status = Status::Unbounded;
    return result;
  }

  result.status = Status::Optimal;
  result.x.assign(n, Rational(0));
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    if (t.basis[r] < n) result.x[t.basis[r]] = t.rows[r][n + m];
  }
  result.objective = 0;
  for (std::size_t j = 0; j < n; ++j) result.objective += problem.cost[j] * result.x[j];
  return result;
}

}  // namespace crn::lp
