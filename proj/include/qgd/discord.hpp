#pragma once

#include <algorithm>
#include <cmath>

#include "qgd/errors.hpp"
#include "qgd/linalg.hpp"
#include "qgd/qstate.hpp"

namespace qgd {

// G = x x^T + T T^T; the spectrum of this 3x3 Gram matrix carries the whole
// one-sided measurement optimization.
struct GMatrix {
  Mat3 m{};
};

inline GMatrix g_matrix(const BlochForm& b) {
  GMatrix g;
  g.m = add(outer(b.x, b.x), matmul(b.T, transpose(b.T)));
  // symmetrize away roundoff so downstream eigensolves see an exactly
  // symmetric matrix
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) {
      const double v = 0.5 * (g.m[i][j] + g.m[j][i]);
      g.m[i][j] = g.m[j][i] = v;
    }
  return g;
}

// Eigen-decomposition of G with eigenvalues sorted non-increasing.
struct GSpectrum {
  std::array<double, 3> lambdas{};  // lambdas[0] >= lambdas[1] >= lambdas[2]
  std::array<Vec3, 3> vectors{};    // vectors[k] pairs lambdas[k]
};

inline GSpectrum eig3_sym(const GMatrix& g) {
  const auto e = eig_sym3(g.m);
  GSpectrum s;
  for (int k = 0; k < 3; ++k) {
    s.lambdas[k] = e.values[2 - k];
    s.vectors[k] = e.vectors[2 - k];
  }
  return s;
}

// Normalized geometric discord (2 min_chi ||rho - chi||_F^2 over zero-discord
// states chi): closed form (||x||^2 + ||T||^2 - lambda_max(G)) / 2.
inline double geometric_discord(const BlochForm& b) {
  const GSpectrum s = eig3_sym(g_matrix(b));
  const double val =
      0.5 * (norm_sq(b.x) + frob_sq(b.T) - s.lambdas[0]);
  return std::clamp(val, 0.0, 1.0);
}

inline double geometric_discord(const DensityMatrix& rho) {
  return geometric_discord(to_bloch(rho));
}

// Margin of the discord-1/4 conjecture: 1/2 - (lambda2 + lambda3)(G), i.e.
// 1/2 - 2 D. Negative values would be counterexamples.
inline double conjecture_gap(const BlochForm& b) {
  const GSpectrum s = eig3_sym(g_matrix(b));
  return 0.5 - (s.lambdas[1] + s.lambdas[2]);
}

inline double conjecture_gap(const DensityMatrix& rho) {
  return conjecture_gap(to_bloch(rho));
}

// Measurement axis attaining lambda_max. When lambda_max is degenerate, the
// eigenvectors returned by the solver are an arbitrary basis of the
// eigenspace; for reproducibility project the coordinate axes onto the
// eigenspace and take the first with a nonvanishing shadow.
inline Vec3 dominant_axis(const GSpectrum& s) {
  const double scale = std::max(1.0, std::abs(s.lambdas[0]));
  int deg = 1;
  while (deg < 3 && s.lambdas[0] - s.lambdas[deg] <= 1e-10 * scale) ++deg;
  if (deg == 1) {
    Vec3 e = s.vectors[0];
    for (int i = 0; i < 3; ++i) {
      if (std::abs(e[i]) > 1e-12) {
        if (e[i] < 0.0) e = scaled(e, -1.0);
        break;
      }
    }
    return e;
  }
  for (int axis = 0; axis < 3; ++axis) {
    Vec3 proj{};
    for (int k = 0; k < deg; ++k)
      proj = add(proj, scaled(s.vectors[k], s.vectors[k][axis]));
    if (norm(proj) > 1e-8) {
      Vec3 e = normalized(proj);
      for (int i = 0; i < 3; ++i) {
        if (std::abs(e[i]) > 1e-12) {
          if (e[i] < 0.0) e = scaled(e, -1.0);
          break;
        }
      }
      return e;
    }
  }
  return s.vectors[0];  // unreachable: the axes cannot all be orthogonal to it
}

// Bloch form of the post-measurement (classical-quantum) state for a
// sigma.e (x) I projective measurement: x -> (e.x) e, y unchanged,
// T -> e e^T T.
inline BlochForm project_bloch(const BlochForm& b, const Vec3& e) {
  BlochForm r;
  r.x = scaled(e, dot(e, b.x));
  r.y = b.y;
  const Vec3 et = matvec(transpose(b.T), e);  // e^T T
  r.T = outer(e, et);
  return r;
}

// 2 ||rho - chi_e||_F^2 for the classical-quantum state chi_e produced by
// measuring along the unit axis e; equals
// (||x - (e.x)e||^2 + ||T - e e^T T||^2) / 2 exactly.
inline double measured_discord(const BlochForm& b, const Vec3& e) {
  const double en = norm(e);
  if (std::abs(en - 1.0) > 1e-10) throw BadAxis(en);
  const Vec3 dx = sub(b.x, scaled(e, dot(e, b.x)));
  const Vec3 et = matvec(transpose(b.T), e);
  const Mat3 dT = sub(b.T, outer(e, et));
  return 0.5 * (norm_sq(dx) + frob_sq(dT));
}

inline double measured_discord(const DensityMatrix& rho, const Vec3& e) {
  return measured_discord(to_bloch(rho), e);
}

// Zero-discord (classical-quantum) state attached to its measurement axis.
struct CQState {
  Vec3 axis{};
  DensityMatrix state;
};

struct ClosestCq {
  CQState cq;
  double distance_sq = 0.0;  // ||rho - chi||_F^2, so 2*distance_sq = discord
};

inline ClosestCq closest_cq(const DensityMatrix& rho) {
  const BlochForm b = to_bloch(rho);
  const GSpectrum s = eig3_sym(g_matrix(b));
  const Vec3 e = dominant_axis(s);
  const BlochForm cb = project_bloch(b, e);
  return ClosestCq{CQState{e, from_bloch(cb)},
                   0.5 * measured_discord(b, e)};
}

}  // namespace qgd
