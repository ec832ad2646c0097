#include "dmc/simplex.hpp"

#include <cmath>
#include <limits>

#include "dmc/errors.hpp"

namespace dmc {

namespace {

constexpr double kEps = 1e-9;
constexpr double kInfBound = std::numeric_limits<double>::infinity();

enum class Status : unsigned char { basic, at_lower, at_upper };

}  // namespace

SimplexResult solve_bounded_lp(const std::vector<std::vector<double>>& rows,
                               const std::vector<double>& b, const std::vector<double>& c,
                               const std::vector<double>& ub, int max_pivots) {
  const int m = static_cast<int>(rows.size());
  const int nx = static_cast<int>(c.size());
  SimplexResult res;
  res.x.assign(nx, 0.0);
  if (m == 0) return res;  // costs are nonnegative in every caller; x=0 is optimal

  // columns: [0,nx) structural, [nx,nx+m) surplus, [nx+m,nx+2m) artificial
  const int ncols = nx + 2 * m;
  std::vector<double> bound(ncols, kInfBound);
  for (int j = 0; j < nx; ++j) bound[j] = ub[j];

  // tableau T = B^-1 [A | -I | I], rhs tracked through xb
  std::vector<std::vector<double>> T(m, std::vector<double>(ncols, 0.0));
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < nx; ++j) T[i][j] = rows[i][j];
    T[i][nx + i] = -1.0;
    T[i][nx + m + i] = 1.0;
  }

  std::vector<int> basis(m);
  std::vector<Status> status(ncols, Status::at_lower);
  std::vector<double> xb(m);  // values of basic variables, row order
  for (int i = 0; i < m; ++i) {
    basis[i] = nx + m + i;
    status[basis[i]] = Status::basic;
    xb[i] = b[i];
  }

  std::vector<double> cost(ncols, 0.0);
  std::vector<double> pi(ncols, 0.0);  // reduced costs

  auto reprice = [&]() {
    // pi_j = cost_j - cost_B . T_j
    std::vector<double> cb(m);
    for (int i = 0; i < m; ++i) cb[i] = cost[basis[i]];
    for (int j = 0; j < ncols; ++j) {
      double dot = 0.0;
      for (int i = 0; i < m; ++i)
        if (cb[i] != 0.0) dot += cb[i] * T[i][j];
      pi[j] = cost[j] - dot;
    }
  };

  auto run = [&](int phase) {
    while (true) {
      // Bland: smallest eligible column index enters
      int enter = -1, dir = 0;
      for (int j = 0; j < ncols; ++j) {
        if (status[j] == Status::basic) continue;
        if (bound[j] <= 0.0) continue;  // pinned (artificials after phase 1, forced-out vars)
        if (status[j] == Status::at_lower && pi[j] < -kEps) {
          enter = j;
          dir = 1;
          break;
        }
        if (status[j] == Status::at_upper && pi[j] > kEps) {
          enter = j;
          dir = -1;
          break;
        }
      }
      if (enter < 0) return;  // optimal

      if (res.pivots++ >= max_pivots) throw SolverStall("simplex pivot budget exhausted");

      // ratio test: entering moves by t >= 0, basic i changes by -dir*t*T[i][enter].
      // Pass 1 finds the minimum step, pass 2 applies Bland's smallest-index
      // tie-break; the entering variable's own bound competes as a flip.
      auto step_of = [&](int i) -> double {
        double d = dir * T[i][enter];
        if (d > kEps) return std::max(0.0, xb[i]) / d;  // basic drops to lower bound
        if (d < -kEps && bound[basis[i]] < kInfBound)
          return std::max(0.0, bound[basis[i]] - xb[i]) / (-d);  // basic hits upper
        return kInfBound;
      };
      double t_min = bound[enter];
      for (int i = 0; i < m; ++i) t_min = std::min(t_min, step_of(i));
      if (t_min >= kInfBound) throw Error("LP unbounded");
      int leave = -1;
      int leave_var = bound[enter] <= t_min + 1e-12 ? enter : ncols;
      for (int i = 0; i < m; ++i) {
        if (step_of(i) <= t_min + 1e-12 && basis[i] < leave_var) {
          leave = i;
          leave_var = basis[i];
        }
      }
      double t_best = t_min;

      double start = status[enter] == Status::at_lower ? 0.0 : bound[enter];
      double enter_val = start + dir * t_best;

      if (leave < 0) {
        // bound flip, basis unchanged
        for (int i = 0; i < m; ++i) xb[i] -= dir * t_best * T[i][enter];
        status[enter] = status[enter] == Status::at_lower ? Status::at_upper : Status::at_lower;
        continue;
      }

      for (int i = 0; i < m; ++i)
        if (i != leave) xb[i] -= dir * t_best * T[i][enter];
      int old = basis[leave];
      // leaving variable lands on the bound the ratio test hit
      double d_leave = dir * T[leave][enter];
      status[old] = d_leave > 0 ? Status::at_lower : Status::at_upper;
      basis[leave] = enter;
      status[enter] = Status::basic;
      xb[leave] = enter_val;

      // row-reduce
      double piv = T[leave][enter];
      for (int j = 0; j < ncols; ++j) T[leave][j] /= piv;
      for (int i = 0; i < m; ++i) {
        if (i == leave) continue;
        double f = T[i][enter];
        if (f == 0.0) continue;
        for (int j = 0; j < ncols; ++j) T[i][j] -= f * T[leave][j];
      }
      double fp = pi[enter];
      if (fp != 0.0)
        for (int j = 0; j < ncols; ++j) pi[j] -= fp * T[leave][j];
      (void)phase;
    }
  };

  // phase 1: drive artificials to zero
  for (int j = nx + m; j < ncols; ++j) cost[j] = 1.0;
  reprice();
  run(1);
  double art = 0.0;
  for (int i = 0; i < m; ++i)
    if (basis[i] >= nx + m) art += xb[i];
  if (art > 1e-7) {
    res.feasible = false;
    return res;
  }
  for (int j = nx + m; j < ncols; ++j) {
    bound[j] = 0.0;  // pin artificials
    cost[j] = 0.0;
  }

  // phase 2
  for (int j = 0; j < nx; ++j) cost[j] = c[j];
  reprice();
  run(2);

  for (int j = 0; j < nx; ++j) {
    if (status[j] == Status::at_upper) res.x[j] = bound[j];
  }
  for (int i = 0; i < m; ++i)
    if (basis[i] < nx) res.x[basis[i]] = xb[i];
  double val = 0.0;
  for (int j = 0; j < nx; ++j) {
    if (res.x[j] < 0.0 && res.x[j] > -1e-9) res.x[j] = 0.0;
    val += c[j] * res.x[j];
  }
  res.value = val;
  return res;
}

}  // namespace dmc
