#include "numindex/lp_solver.hpp"

#include <cmath>
#include <limits>

namespace numindex::lp {
namespace {

// Tableau simplex on: min c.x, A x = b, x >= 0. Rows m, structural cols n.
// Bland's rule keeps it cycle-free; fine at these sizes.
struct Tableau {
  Mat t;                    // (m+1) x (n+1); last row = reduced costs, last col = rhs
  std::vector<int> basis;   // basic variable per row
  int m, n;
  double tol;

  Tableau(const Mat& A, const Vec& b, int extra_cols, double tol_)
      : m(static_cast<int>(A.rows())), n(static_cast<int>(A.cols()) + extra_cols), tol(tol_) {
    t = Mat::Zero(m + 1, n + 1);
    t.block(0, 0, m, A.cols()) = A;
    t.block(0, n, m, 1) = b;
    for (int i = 0; i < m; ++i) {
      if (t(i, n) < 0) t.row(i) = -t.row(i);
    }
    basis.assign(m, -1);
  }

  void pivot(int row, int col) {
    t.row(row) /= t(row, col);
    for (int i = 0; i <= m; ++i) {
      if (i == row) continue;
      double f = t(i, col);
      if (f != 0.0) t.row(i) -= f * t.row(row);
    }
    basis[row] = col;
  }

  // Returns false on unboundedness.
  bool iterate() {
    for (;;) {
      int col = -1;
      for (int j = 0; j < n; ++j) {
        if (t(m, j) < -tol) { col = j; break; }  // Bland: first improving column
      }
      if (col < 0) return true;
      int row = -1;
      double best = std::numeric_limits<double>::infinity();
      for (int i = 0; i < m; ++i) {
        if (t(i, col) > tol) {
          double ratio = t(i, n) / t(i, col);
          if (ratio < best - tol || (ratio < best + tol && (row < 0 || basis[i] < basis[row]))) {
            best = ratio;
            row = i;
          }
        }
      }
      if (row < 0) return false;
      pivot(row, col);
    }
  }
};

}  // namespace

LpResult solve_equality_lp(const Mat& A, const Vec& b, const Vec& c, double tol) {
  const int m = static_cast<int>(A.rows());
  const int n = static_cast<int>(A.cols());
  require(b.size() == m && c.size() == n, "solve_equality_lp: inconsistent sizes");

  // Phase 1: artificials with unit cost.
  Tableau tab(A, b, m, tol);
  for (int i = 0; i < m; ++i) {
    tab.t(i, n + i) = 1.0;
    tab.basis[i] = n + i;
  }
  for (int j = 0; j <= tab.n; ++j) {
    double s = 0.0;
    for (int i = 0; i < m; ++i) s += tab.t(i, j);
    tab.t(m, j) = -s;
  }
  for (int i = 0; i < m; ++i) tab.t(m, n + i) = 0.0;
  if (!tab.iterate()) return {};
  double phase1 = -tab.t(m, tab.n);
  if (phase1 > 1e-8) return {};  // infeasible

  // Drive any artificial still in the basis out (degenerate rows).
  for (int i = 0; i < m; ++i) {
    if (tab.basis[i] >= n) {
      int col = -1;
      for (int j = 0; j < n; ++j) {
        if (std::abs(tab.t(i, j)) > tol) { col = j; break; }
      }
      if (col >= 0) tab.pivot(i, col);
    }
  }

  // Phase 2 over the structural columns.
  tab.t.row(m).setZero();
  for (int j = 0; j < n; ++j) tab.t(m, j) = c[j];
  for (int j = n; j < tab.n; ++j) tab.t(m, j) = 1e18;  // keep artificials out
  for (int i = 0; i < m; ++i) {
    if (tab.basis[i] < tab.n) {
      double f = tab.t(m, tab.basis[i]);
      if (f != 0.0) tab.t.row(m) -= f * tab.t.row(i);
    }
  }
  if (!tab.iterate()) return {};  // unbounded

  LpResult r;
  r.feasible = true;
  r.solution = Vec::Zero(n);
  for (int i = 0; i < m; ++i) {
    if (tab.basis[i] < n) r.solution[tab.basis[i]] = tab.t(i, tab.n);
  }
  r.objective = c.dot(r.solution);
  return r;
}

bool point_in_hull(const std::vector<Vec>& generators, const Vec& p, double tol) {
  require(!generators.empty(), "point_in_hull: no generators");
  const int d = static_cast<int>(p.size());
  const int k = static_cast<int>(generators.size());
  Mat A(d + 1, k);
  for (int j = 0; j < k; ++j) {
    A.block(0, j, d, 1) = generators[j];
    A(d, j) = 1.0;
  }
  Vec b(d + 1);
  b.head(d) = p;
  b[d] = 1.0;
  // Feasibility with slack for numerical noise: solve min residual via
  // phase 1 on the exact system, then accept small infeasibility by
  // scaling check.
  LpResult r = solve_equality_lp(A, b, Vec::Zero(k), tol);
  if (r.feasible) return true;
  // Retry with a tiny inflation of the hull to absorb rounding on inputs
  // that sit exactly on a face.
  Mat A2 = A;
  Vec b2 = b;
  b2.head(d) *= 1.0 / (1.0 + tol);
  LpResult r2 = solve_equality_lp(A2, b2, Vec::Zero(k), tol);
  return r2.feasible;
}

std::optional<double> hull_gauge(const std::vector<Vec>& generators, const Vec& p,
                                 double tol) {
  require(!generators.empty(), "hull_gauge: no generators");
  const int d = static_cast<int>(p.size());
  const int k = static_cast<int>(generators.size());
  Mat A(d, k);
  for (int j = 0; j < k; ++j) A.col(j) = generators[j];
  LpResult r = solve_equality_lp(A, p, Vec::Ones(k), tol);
  if (!r.feasible) return std::nullopt;
  return r.objective;
}

}  // namespace numindex::lp
