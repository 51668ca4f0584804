#include "contract/lp.hpp"

#include "contract/errors.hpp"

#include <stdexcept>

namespace contract {

LpProblem box_problem(int n) {
  LpProblem lp;
  lp.objective.assign(static_cast<std::size_t>(n), 0);
  lp.lo.assign(static_cast<std::size_t>(n), 0);
  lp.hi.assign(static_cast<std::size_t>(n), Rational(1));
  return lp;
}

void add_row(LpProblem& lp, std::vector<Rational> coeffs, Relation rel, Rational rhs) {
  lp.rows.push_back(LpRow{std::move(coeffs), rel, std::move(rhs)});
}

namespace {

class Tableau {
 public:
  Tableau(int rows, int cols) : m_(rows), n_(cols), cell_(static_cast<std::size_t>(rows) * cols) {}
  Rational& at(int i, int j) { return cell_[static_cast<std::size_t>(i) * n_ + j]; }
  int rows() const { return m_; }
  int cols() const { return n_; }

 private:
  int m_;
  int n_;
  std::vector<Rational> cell_;
};

struct Simplex {
  Tableau t;
  std::vector<int> basis;
  std::vector<int> row_of;  // -1 when nonbasic
  std::vector<Rational> val;
  std::vector<Rational> lo;
  std::vector<std::optional<Rational>> hi;
  std::vector<Rational> reduced;
  int pivots = 0;

  Simplex(int rows, int cols) : t(rows, cols), basis(rows), row_of(cols, -1), val(cols), lo(cols), hi(cols), reduced(cols) {}

  void price(const std::vector<Rational>& cost) {
    for (int j = 0; j < t.cols(); ++j) {
      reduced[j] = cost[j];
      for (int i = 0; i < t.rows(); ++i) {
        const Rational& a = t.at(i, j);
        if (sgn(a) != 0 && sgn(cost[basis[i]]) != 0) reduced[j] -= cost[basis[i]] * a;
      }
    }
  }

  // Returns false when unbounded.
  bool run() {
    for (;;) {
      int enter = -1;
      for (int j = 0; j < t.cols(); ++j) {
        if (row_of[j] >= 0) continue;
        int s = sgn(reduced[j]);
        if (s > 0 && (!hi[j] || val[j] < *hi[j])) { enter = j; break; }
        if (s < 0 && val[j] > lo[j]) { enter = j; break; }
      }
      if (enter < 0) return true;
      int dir = sgn(reduced[enter]);
      std::optional<Rational> theta;
      int leave_var = -1;
      int leave_row = -1;
      if (hi[enter]) {
        theta = *hi[enter] - lo[enter];
        leave_var = enter;
      }
      for (int i = 0; i < t.rows(); ++i) {
        const Rational& a = t.at(i, enter);
        if (sgn(a) == 0) continue;
        int b = basis[i];
        // Basic variable moves by g * theta.
        Rational g = dir > 0 ? Rational(-a) : a;
        std::optional<Rational> limit;
        if (g < 0) {
          limit = (val[b] - lo[b]) / (-g);
        } else if (hi[b]) {
          limit = (*hi[b] - val[b]) / g;
        }
        if (!limit) continue;
        if (!theta || *limit < *theta || (*limit == *theta && b < leave_var)) {
          theta = *limit;
          leave_var = b;
          leave_row = i;
        }
      }
      if (!theta) return false;
      const Rational step = *theta;
      if (sgn(step) != 0) {
        for (int i = 0; i < t.rows(); ++i) {
          const Rational& a = t.at(i, enter);
          if (sgn(a) == 0) continue;
          if (dir > 0) {
            val[basis[i]] -= a * step;
          } else {
            val[basis[i]] += a * step;
          }
        }
        if (dir > 0) {
          val[enter] += step;
        } else {
          val[enter] -= step;
        }
      }
      ++pivots;
      if (leave_var == enter) continue;
      // Snap the leaving variable to the bound it reached.
      Rational a_enter = t.at(leave_row, enter);
      Rational g = dir > 0 ? Rational(-a_enter) : a_enter;
      val[leave_var] = g < 0 ? lo[leave_var] : *hi[leave_var];
      pivot(leave_row, enter);
    }
  }

  void pivot(int r, int enter) {
    Rational inv = 1 / t.at(r, enter);
    for (int j = 0; j < t.cols(); ++j) {
      if (sgn(t.at(r, j)) != 0) t.at(r, j) *= inv;
    }
    for (int i = 0; i < t.rows(); ++i) {
      if (i == r) continue;
      Rational f = t.at(i, enter);
      if (sgn(f) == 0) continue;
      for (int j = 0; j < t.cols(); ++j) {
        const Rational& src = t.at(r, j);
        if (sgn(src) != 0) t.at(i, j) -= f * src;
      }
    }
    Rational f = reduced[enter];
    if (sgn(f) != 0) {
      for (int j = 0; j < t.cols(); ++j) {
        const Rational& src = t.at(r, j);
        if (sgn(src) != 0) reduced[j] -= f * src;
      }
    }
    row_of[basis[r]] = -1;
    basis[r] = enter;
    row_of[enter] = r;
  }
};

}  // namespace

LpSolution solve_lp(const LpProblem& problem) {
  const int n = static_cast<int>(problem.objective.size());
  if (static_cast<int>(problem.lo.size()) != n || static_cast<int>(problem.hi.size()) != n) {
    throw std::invalid_argument("bound vectors must match objective width");
  }
  for (const auto& row : problem.rows) {
    if (static_cast<int>(row.coeffs.size()) != n) throw std::invalid_argument("row width differs from objective");
  }
  LpSolution out;
  for (int j = 0; j < n; ++j) {
    if (problem.hi[j] && *problem.hi[j] < problem.lo[j]) {
      out.status = LpStatus::infeasible;
      return out;
    }
  }

  std::vector<int> free_vars;
  std::vector<int> col_of(static_cast<std::size_t>(n), -1);
  for (int j = 0; j < n; ++j) {
    if (!problem.hi[j] || *problem.hi[j] != problem.lo[j]) {
      col_of[j] = static_cast<int>(free_vars.size());
      free_vars.push_back(j);
    }
  }
  const int nf = static_cast<int>(free_vars.size());
  const int m = static_cast<int>(problem.rows.size());

  // Residual of each row at the starting point x = lo.
  std::vector<Rational> residual(static_cast<std::size_t>(m));
  int slack_count = 0;
  for (int i = 0; i < m; ++i) {
    const auto& row = problem.rows[i];
    residual[i] = row.rhs;
    for (int j = 0; j < n; ++j) {
      if (sgn(row.coeffs[j]) != 0 && sgn(problem.lo[j]) != 0) residual[i] -= row.coeffs[j] * problem.lo[j];
    }
    if (row.rel != Relation::eq) ++slack_count;
  }
  std::vector<int> slack_col(static_cast<std::size_t>(m), -1);
  std::vector<int> art_col(static_cast<std::size_t>(m), -1);
  int next = nf;
  for (int i = 0; i < m; ++i) {
    if (problem.rows[i].rel != Relation::eq) slack_col[i] = next++;
  }
  for (int i = 0; i < m; ++i) {
    const auto& row = problem.rows[i];
    bool slack_ok = (row.rel == Relation::le && residual[i] >= 0) || (row.rel == Relation::ge && residual[i] <= 0);
    if (!slack_ok) art_col[i] = next++;
  }
  const int total = next;

  Simplex sx(m, total);
  for (int k = 0; k < nf; ++k) {
    int j = free_vars[k];
    sx.lo[k] = problem.lo[j];
    sx.hi[k] = problem.hi[j];
    sx.val[k] = problem.lo[j];
  }
  for (int c = nf; c < total; ++c) {
    sx.lo[c] = 0;
    sx.val[c] = 0;
  }
  std::vector<Rational> phase1(static_cast<std::size_t>(total), 0);
  for (int i = 0; i < m; ++i) {
    const auto& row = problem.rows[i];
    int sign_slack = row.rel == Relation::ge ? -1 : 1;
    Rational scale;
    int basic;
    if (art_col[i] >= 0) {
      scale = residual[i] >= 0 ? 1 : -1;
      basic = art_col[i];
      sx.val[basic] = abs(residual[i]);
      phase1[basic] = -1;
    } else {
      scale = sign_slack;
      basic = slack_col[i];
      sx.val[basic] = abs(residual[i]);
    }
    for (int k = 0; k < nf; ++k) {
      const Rational& a = row.coeffs[free_vars[k]];
      if (sgn(a) != 0) sx.t.at(i, k) = a * scale;
    }
    if (slack_col[i] >= 0) sx.t.at(i, slack_col[i]) = scale * sign_slack;
    if (art_col[i] >= 0) sx.t.at(i, art_col[i]) = 1;
    sx.basis[i] = basic;
    sx.row_of[basic] = i;
  }

  bool has_art = false;
  for (int i = 0; i < m; ++i) has_art = has_art || art_col[i] >= 0;
  if (has_art) {
    sx.price(phase1);
    sx.run();
    Rational infeasibility = 0;
    for (int i = 0; i < m; ++i) {
      if (art_col[i] >= 0) infeasibility += sx.val[art_col[i]];
    }
    if (infeasibility > 0) {
      out.status = LpStatus::infeasible;
      out.pivots = sx.pivots;
      return out;
    }
    for (int i = 0; i < m; ++i) {
      if (art_col[i] >= 0) sx.hi[art_col[i]] = Rational(0);
    }
  }
  std::vector<Rational> phase2(static_cast<std::size_t>(total), 0);
  for (int k = 0; k < nf; ++k) phase2[k] = problem.objective[free_vars[k]];
  sx.price(phase2);
  bool bounded = sx.run();
  out.pivots = sx.pivots;
  if (!bounded) {
    out.status = LpStatus::unbounded;
    return out;
  }
  out.status = LpStatus::optimal;
  out.x.assign(static_cast<std::size_t>(n), 0);
  for (int j = 0; j < n; ++j) out.x[j] = col_of[j] >= 0 ? sx.val[col_of[j]] : problem.lo[j];
  out.objective_value = 0;
  for (int j = 0; j < n; ++j) {
    if (sgn(problem.objective[j]) != 0) out.objective_value += problem.objective[j] * out.x[j];
  }
  for (int i = 0; i < m; ++i) {
    if (sx.basis[i] < nf) out.basis.push_back(free_vars[sx.basis[i]]);
  }
  return out;
}

std::vector<int> fractional_support(const LpSolution& solution) {
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(solution.x.size()); ++i) {
    if (solution.x[i] > 0 && solution.x[i] < 1) out.push_back(i);
  }
  return out;
}

LpSolution solve_lp_with_separation(const LpProblem& problem, const SeparationOracle& separation, int row_cap) {
  LpProblem work = problem;
  int added = 0;
  for (;;) {
    LpSolution sol = solve_lp(work);
    if (sol.status != LpStatus::optimal) return sol;
    auto cut = separation(sol.x);
    if (!cut) return sol;
    if (++added > row_cap) throw SeparationDivergence("cutting-plane row cap exceeded");
    work.rows.push_back(std::move(*cut));
  }
}

namespace {

int matrix_rank(std::vector<std::vector<Rational>> a, int cols) {
  int r = 0;
  for (int c = 0; c < cols && r < static_cast<int>(a.size()); ++c) {
    int pivot = -1;
    for (int i = r; i < static_cast<int>(a.size()); ++i) {
      if (sgn(a[i][c]) != 0) {
        pivot = i;
        break;
      }
    }
    if (pivot < 0) continue;
    std::swap(a[r], a[pivot]);
    for (int i = r + 1; i < static_cast<int>(a.size()); ++i) {
      if (sgn(a[i][c]) == 0) continue;
      Rational f = a[i][c] / a[r][c];
      for (int k = c; k < cols; ++k) a[i][k] -= f * a[r][k];
    }
    ++r;
  }
  return r;
}

Rational row_value(const LpRow& row, const std::vector<Rational>& x) {
  Rational v = 0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (sgn(row.coeffs[j]) != 0) v += row.coeffs[j] * x[j];
  }
  return v;
}

}  // namespace

int tight_rank(const LpProblem& problem, const std::vector<Rational>& x) {
  const int n = static_cast<int>(x.size());
  std::vector<std::vector<Rational>> tight;
  for (const auto& row : problem.rows) {
    if (row_value(row, x) == row.rhs) tight.push_back(row.coeffs);
  }
  for (int j = 0; j < n; ++j) {
    if (x[j] == problem.lo[j] || (problem.hi[j] && x[j] == *problem.hi[j])) {
      std::vector<Rational> unit(static_cast<std::size_t>(n), 0);
      unit[j] = 1;
      tight.push_back(std::move(unit));
    }
  }
  return matrix_rank(std::move(tight), n);
}

bool satisfies(const LpProblem& problem, const std::vector<Rational>& x) {
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (x[j] < problem.lo[j]) return false;
    if (problem.hi[j] && x[j] > *problem.hi[j]) return false;
  }
  for (const auto& row : problem.rows) {
    Rational v = row_value(row, x);
    if (row.rel == Relation::le && v > row.rhs) return false;
    if (row.rel == Relation::ge && v < row.rhs) return false;
    if (row.rel == Relation::eq && v != row.rhs) return false;
  }
  return true;
}

}  // namespace contract
