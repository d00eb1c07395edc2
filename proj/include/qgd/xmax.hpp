#pragma once

#include <algorithm>
#include <cmath>
#include <thread>
#include <vector>

#include "qgd/discord.hpp"
#include "qgd/errors.hpp"
#include "qgd/qstate.hpp"

namespace qgd {

// Objective of the reduced one-parameter maximization over separable X
// states with a = kb, c = kd, p = q = sqrt(ad): the discord along the
// constraint curve is 2 f(k).
inline double f_appendix(double k) {
  if (!(k > 0.0))
    throw DomainError(detail::with_magnitude(
        "f is defined for k > 0 only", k));
  const double kp1 = k + 1.0;
  const double kp1_2 = kp1 * kp1;
  return k * (k * k + 1.0) / (kp1_2 * kp1_2);
}

// d/dk of f in closed form: (1 - k)^3 / (k + 1)^5. Vanishes to third order
// at k = 1, which is why the maximum is quartically flat there.
inline double f_appendix_derivative(double k) {
  if (!(k > 0.0))
    throw DomainError(detail::with_magnitude(
        "f' is defined for k > 0 only", k));
  const double n = 1.0 - k;
  const double d = k + 1.0;
  return (n * n * n) / (d * d * d * d * d);
}

struct MaximizeResult {
  double k_star = 0.0;
  double f_star = 0.0;
  int iterations = 0;
};

// Bracketed scalar maximization of f on (0, k_max]. Golden-section narrows
// the bracket, but the quartic-flat peak makes value comparisons useless
// below |k-1| ~ 1e-4, so the bracket is finished by bisecting the sign of
// the closed-form derivative.
inline MaximizeResult maximize_f(double tol = 1e-12, double k_max = 1e3) {
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = 1e-9, hi = k_max;
  double x1 = hi - invphi * (hi - lo);
  double x2 = lo + invphi * (hi - lo);
  double f1 = f_appendix(x1), f2 = f_appendix(x2);
  int iters = 0;
  while (hi - lo > 1e-3) {
    ++iters;
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + invphi * (hi - lo);
      f2 = f_appendix(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - invphi * (hi - lo);
      f1 = f_appendix(x1);
    }
  }

  // derivative changes sign exactly once; widen the bracket slightly so the
  // sign condition is guaranteed on both ends
  double bl = std::max(1e-9, lo - 0.5), bh = std::min(k_max, hi + 0.5);
  while (bh - bl > tol && ++iters < 500) {
    const double mid = 0.5 * (bl + bh);
    if (f_appendix_derivative(mid) > 0.0)
      bl = mid;
    else
      bh = mid;
  }
  const double k = 0.5 * (bl + bh);
  return MaximizeResult{k, f_appendix(k), iters};
}

enum class AppendixBranch {
  plus,   // larger population root: a >= c
  minus,  // smaller population root: a <= c
};

struct AppendixSolution {
  double k = 0.0;
  AppendixBranch branch = AppendixBranch::plus;
  XStateParams params{};
  double discord = 0.0;
};

// Solve the stationarity constraints at slope k:
//   b + d = 1/(k+1),   4 b d = (k^2+1)/(k+1)^4,
//   a = k b, c = k d,  p = q = sqrt(a d).
// The quadratic discriminant equals 2k/(k+1)^4 > 0, so both roots are real
// for every admissible k; the guard below can only fire on k <= 0 misuse.
inline AppendixSolution solve_constraints(double k, AppendixBranch branch) {
  if (!(k > 0.0))
    throw DomainError(detail::with_magnitude(
        "constraint system is defined for k > 0 only", k));
  const double kp1 = k + 1.0;
  const double s = 1.0 / kp1;                                  // b + d
  const double prod = (k * k + 1.0) / (4.0 * kp1 * kp1 * kp1 * kp1);  // b d
  const double disc = s * s - 4.0 * prod;
  if (disc < 0.0) throw NoRealSolution(disc);
  const double r = std::sqrt(disc);
  const double b = (branch == AppendixBranch::plus) ? 0.5 * (s + r)
                                                    : 0.5 * (s - r);
  const double d = s - b;
  AppendixSolution sol;
  sol.k = k;
  sol.branch = branch;
  const double pq = std::sqrt(k * b * d);  // sqrt(ad) = sqrt(bc)
  sol.params = XStateParams{k * b, b, k * d, d, pq, pq};
  validate(sol.params);
  sol.discord = geometric_discord(x_state_bloch(sol.params));
  return sol;
}

struct XMaxResult {
  double value = 0.0;                    // max separable X-state discord
  std::vector<AppendixSolution> states;  // both extremal branches at k*
};

// The analytic maximization: k* from the scalar search, then both branch
// states. Their discords agree (the branches are locally-unitary images of
// each other) and equal the maximum 1/4.
inline XMaxResult max_separable_x_discord() {
  const MaximizeResult m = maximize_f(1e-12);
  XMaxResult r;
  r.states.push_back(solve_constraints(m.k_star, AppendixBranch::plus));
  r.states.push_back(solve_constraints(m.k_star, AppendixBranch::minus));
  r.value = std::max(r.states[0].discord, r.states[1].discord);
  return r;
}

enum class GridMode {
  full,     // p and q swept independently over [0, m]
  reduced,  // p = q = m (the binding value at the true maximum)
};

struct GridCertifyResult {
  double max_found = 0.0;
  XStateParams argmax{};
  long long evaluated = 0;
};

namespace detail {

// Discord of a gauged X state straight from the exact diagonal Bloch data;
// G is diagonal with entries T11^2, T22^2, x3^2 + T33^2.
inline double x_state_discord_fast(const XStateParams& s) {
  const BlochForm b = x_state_bloch(s);
  const double g1 = b.T[0][0] * b.T[0][0];
  const double g2 = b.T[1][1] * b.T[1][1];
  const double g3 = b.x[2] * b.x[2] + b.T[2][2] * b.T[2][2];
  const double total = g1 + g2 + g3;
  return 0.5 * (total - std::max({g1, g2, g3}));
}

}  // namespace detail

// Exhaustive sweep of the separable X-state polytope on a simplex grid of
// populations (denominator n) with the coherence budget m = min{sqrt(ad),
// sqrt(bc)} swept on n+1 points (or pinned to m in reduced mode). Returns
// the largest discord seen; ties resolve to the first cell in loop order,
// independent of thread count.
inline GridCertifyResult grid_certify(int n, GridMode mode = GridMode::full,
                                      int threads = 0) {
  if (n < 1)
    throw DomainError(detail::with_magnitude(
        "grid denominator must be >= 1", n));
  if (threads <= 0) {
    const unsigned hc = std::thread::hardware_concurrency();
    threads = hc ? static_cast<int>(hc) : 1;
  }
  threads = std::min(threads, n + 1);

  struct Partial {
    double best = -1.0;
    XStateParams arg{};
    long long count = 0;
    int i = -1, j = -1, l = -1, u = -1, v = -1;  // loop-order tiebreak key
  };
  std::vector<Partial> partials(static_cast<std::size_t>(threads));

  const auto worker = [&](int t) {
    Partial& out = partials[static_cast<std::size_t>(t)];
    for (int i = t; i <= n; i += threads) {
      const double a = static_cast<double>(i) / n;
      for (int j = 0; i + j <= n; ++j) {
        const double b = static_cast<double>(j) / n;
        for (int l = 0; i + j + l <= n; ++l) {
          const double c = static_cast<double>(l) / n;
          const double d = static_cast<double>(n - i - j - l) / n;
          const double m2 = std::min(a * d, b * c);
          const double m = std::sqrt(std::max(0.0, m2));
          const auto consider = [&](double p, double q, int u, int v) {
            const double disc =
                detail::x_state_discord_fast(XStateParams{a, b, c, d, p, q});
            ++out.count;
            if (disc > out.best) {
              out.best = disc;
              out.arg = XStateParams{a, b, c, d, p, q};
              out.i = i, out.j = j, out.l = l, out.u = u, out.v = v;
            }
          };
          if (mode == GridMode::reduced) {
            consider(m, m, 0, 0);
          } else {
            for (int u = 0; u <= n; ++u) {
              const double p = m * u / n;
              for (int v = 0; v <= n; ++v) consider(p, m * v / n, u, v);
            }
          }
        }
      }
    }
  };

  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker, t);
    for (auto& th : pool) th.join();
  }

  GridCertifyResult res;
  res.max_found = -1.0;
  const Partial* chosen = nullptr;
  for (const auto& p : partials) {
    if (p.best < 0.0) continue;
    res.evaluated += p.count;
    const bool take =
        !chosen || p.best > res.max_found ||
        (p.best == res.max_found &&
         std::array{p.i, p.j, p.l, p.u, p.v} <
             std::array{chosen->i, chosen->j, chosen->l, chosen->u, chosen->v});
    if (take) {
      chosen = &p;
      res.max_found = p.best;
      res.argmax = p.arg;
    }
  }
  return res;
}

}  // namespace qgd
