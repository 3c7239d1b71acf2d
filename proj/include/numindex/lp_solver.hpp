#pragma once

#include <optional>
#include <vector>

#include "numindex/util.hpp"

namespace numindex::lp {

struct LpResult {
  bool feasible = false;
  double objective = 0.0;
  Vec solution;
};

/// Minimize c.x subject to A x = b, x >= 0 (dense two-phase simplex,
/// Bland's rule). Sized for desk-scale problems: tens of rows, a few
/// hundred columns.
LpResult solve_equality_lp(const Mat& A, const Vec& b, const Vec& c,
                           double tol = 1e-10);

/// Is p a convex combination of the generators?
bool point_in_hull(const std::vector<Vec>& generators, const Vec& p,
                   double tol = 1e-9);

/// Gauge of conv(generators) at p: min sum(lambda) with p = sum lambda_i g_i,
/// lambda >= 0. Meaningful as a norm value when the generator set is
/// symmetric. Returns nullopt when p is not in the cone of the generators.
std::optional<double> hull_gauge(const std::vector<Vec>& generators,
                                 const Vec& p, double tol = 1e-9);

}  // namespace numindex::lp
