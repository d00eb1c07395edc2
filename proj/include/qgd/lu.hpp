#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <utility>
#include <vector>

#include "qgd/errors.hpp"
#include "qgd/linalg.hpp"
#include "qgd/qstate.hpp"
#include "qgd/rng.hpp"
#include "qgd/separability.hpp"

namespace qgd {

inline double unitarity_deviation(const Mat2c& u) {
  const Mat2c p = matmul(adjoint(u), u);
  double d = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      d = std::max(d, std::abs(p[i][j] - (i == j ? cplx(1.0) : cplx(0.0))));
  return d;
}

// (U (x) V) rho (U (x) V)^dag
inline DensityMatrix apply_local_unitary(const DensityMatrix& rho,
                                         const Mat2c& u, const Mat2c& v) {
  const double du = unitarity_deviation(u);
  if (du > 1e-10) throw NotUnitary(du);
  const double dv = unitarity_deviation(v);
  if (dv > 1e-10) throw NotUnitary(dv);
  const Mat4c w = kron(u, v);
  return DensityMatrix::from_matrix(matmul(matmul(w, rho.matrix()), adjoint(w)));
}

// Rotation on the Bloch sphere induced by a 2x2 unitary: R_ij =
// (1/2) tr(sigma_i U sigma_j U^dag). Always special orthogonal.
inline Mat3 bloch_rotation(const Mat2c& u) {
  const auto& p = detail::paulis();
  Mat3 r{};
  const Mat2c ud = adjoint(u);
  for (int j = 0; j < 3; ++j) {
    const Mat2c m = matmul(matmul(u, p[j + 1]), ud);
    for (int i = 0; i < 3; ++i) {
      cplx t{};
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) t += p[i + 1][a][b] * m[b][a];
      r[i][j] = 0.5 * t.real();
    }
  }
  return r;
}

// Complete local-unitary invariant set for the fingerprint: norms of the
// local Bloch vectors, singular values of T, and the sign of det T.
struct LUFingerprint {
  double x_norm = 0.0;
  double y_norm = 0.0;
  std::array<double, 3> t_singulars{};  // non-increasing
  int t_det_sign = 0;                   // -1, 0, +1 with threshold 1e-12
};

inline LUFingerprint lu_fingerprint(const DensityMatrix& rho) {
  const BlochForm b = to_bloch(rho);
  LUFingerprint f;
  f.x_norm = norm(b.x);
  f.y_norm = norm(b.y);
  f.t_singulars = t_singular_values(b.T);
  const double dt = det(b.T);
  f.t_det_sign = (dt > 1e-12) ? 1 : (dt < -1e-12 ? -1 : 0);
  return f;
}

inline double fingerprint_distance(const LUFingerprint& a,
                                   const LUFingerprint& b) {
  double d = std::max(std::abs(a.x_norm - b.x_norm),
                      std::abs(a.y_norm - b.y_norm));
  for (int k = 0; k < 3; ++k)
    d = std::max(d, std::abs(a.t_singulars[k] - b.t_singulars[k]));
  if (a.t_det_sign != b.t_det_sign) d = std::max(d, 1.0);
  return d;
}

// Haar-random U(2) element: Gram-Schmidt on a Ginibre matrix with positive
// real diagonal of R reproduces the Haar measure.
inline Mat2c haar_unitary2(Rng& rng) {
  cplx g0 = rng.cgauss(), g1 = rng.cgauss(), g2 = rng.cgauss(),
       g3 = rng.cgauss();
  const double n0 = std::sqrt(std::norm(g0) + std::norm(g1));
  Mat2c u{};
  u[0][0] = g0 / n0;
  u[1][0] = g1 / n0;
  const cplx ov = std::conj(u[0][0]) * g2 + std::conj(u[1][0]) * g3;
  cplx r0 = g2 - ov * u[0][0];
  cplx r1 = g3 - ov * u[1][0];
  const double n1 = std::sqrt(std::norm(r0) + std::norm(r1));
  u[0][1] = r0 / n1;
  u[1][1] = r1 / n1;
  return u;
}

// --------------------------------------------------------------------------
// The explicit witness mapping rho_star to sigma_star.
// --------------------------------------------------------------------------

inline Mat2c rho_sigma_witness_u() {
  const double s2 = std::numbers::sqrt2;
  const double rp = std::sqrt(4.0 + 2.0 * s2);
  const double rm = std::sqrt(4.0 - 2.0 * s2);
  Mat2c u{};
  u[0][0] = (1.0 + s2) / rp;
  u[0][1] = (1.0 - s2) / rm;
  u[1][0] = 1.0 / rp;
  u[1][1] = 1.0 / rm;
  return u;
}

// Hadamard-like rotation; the sign of the second column fixes the coherence
// phase gauge of the X-state form so that (U (x) V) rho* (U (x) V)^dag lands
// exactly on sigma.
inline Mat2c rho_sigma_witness_v() {
  const double h = 1.0 / std::numbers::sqrt2;
  Mat2c v{};
  v[0][0] = h;
  v[0][1] = -h;
  v[1][0] = h;
  v[1][1] = h;
  return v;
}

struct EquivalenceCheck {
  bool ok = false;
  double residual = 0.0;  // Frobenius norm of the defect
};

inline EquivalenceCheck verify_rho_sigma_equivalence(double tol = 1e-10) {
  const DensityMatrix mapped = apply_local_unitary(
      rho_star(), rho_sigma_witness_u(), rho_sigma_witness_v());
  const double res = frob(sub(mapped.matrix(), sigma_star().matrix()));
  return EquivalenceCheck{res <= tol, res};
}

// --------------------------------------------------------------------------
// Heuristic LU-equivalence search over SU(2) x SU(2) Euler angles.
// Necessary-condition prefilter via fingerprints, then a coarse 6-dim angle
// grid refined by coordinate descent. A residual above tol does NOT prove
// inequivalence; this is a best-effort numerical probe.
// --------------------------------------------------------------------------

namespace detail {

inline Mat2c su2_zyz(double alpha, double beta, double gamma) {
  const cplx ea = std::polar(1.0, -0.5 * alpha);
  const cplx eg = std::polar(1.0, -0.5 * gamma);
  const double cb = std::cos(0.5 * beta), sb = std::sin(0.5 * beta);
  Mat2c u{};
  u[0][0] = ea * cb * eg;
  u[0][1] = -ea * sb * std::conj(eg);
  u[1][0] = std::conj(ea) * sb * eg;
  u[1][1] = std::conj(ea) * cb * std::conj(eg);
  return u;
}

}  // namespace detail

struct LuSearchResult {
  bool equivalent = false;
  double residual = 0.0;
  Mat2c u{};
  Mat2c v{};
};

struct LuSearchOptions {
  int grid = 6;          // points per angle on the coarse grid
  int starts = 12;       // best coarse cells refined
  int max_iters = 400;   // coordinate-descent cycles per start
  double tol = 1e-6;
};

inline LuSearchResult lu_equivalent_search(
    const DensityMatrix& a, const DensityMatrix& b,
    const LuSearchOptions& opt = {}) {
  const Mat4c target = b.matrix();
  const auto eval = [&](const std::array<double, 6>& ang) {
    const Mat2c u = detail::su2_zyz(ang[0], ang[1], ang[2]);
    const Mat2c v = detail::su2_zyz(ang[3], ang[4], ang[5]);
    const Mat4c w = kron(u, v);
    return frob(sub(matmul(matmul(w, a.matrix()), adjoint(w)), target));
  };

  LuSearchResult best;
  best.residual = std::numeric_limits<double>::infinity();
  if (fingerprint_distance(lu_fingerprint(a), lu_fingerprint(b)) > 1e-6)
    return best;  // invariants differ: no witness can exist

  const double two_pi = 2.0 * std::numbers::pi;
  std::vector<std::pair<double, std::array<double, 6>>> coarse;
  std::array<double, 6> ang{};
  std::array<int, 6> idx{};
  const int g = std::max(2, opt.grid);
  for (idx[0] = 0; idx[0] < g; ++idx[0])
    for (idx[1] = 0; idx[1] < g; ++idx[1])
      for (idx[2] = 0; idx[2] < g; ++idx[2])
        for (idx[3] = 0; idx[3] < g; ++idx[3])
          for (idx[4] = 0; idx[4] < g; ++idx[4])
            for (idx[5] = 0; idx[5] < g; ++idx[5]) {
              for (int k = 0; k < 6; ++k) ang[k] = two_pi * idx[k] / g;
              coarse.emplace_back(eval(ang), ang);
            }
  std::sort(coarse.begin(), coarse.end(),
            [](const auto& l, const auto& r) { return l.first < r.first; });

  const int starts = std::min<int>(opt.starts, coarse.size());
  for (int s = 0; s < starts; ++s) {
    auto cur = coarse[s].second;
    double val = coarse[s].first;
    double step = two_pi / g;
    for (int it = 0; it < opt.max_iters && step > 1e-12; ++it) {
      bool improved = false;
      for (int k = 0; k < 6; ++k) {
        for (double sgn : {1.0, -1.0}) {
          auto cand = cur;
          cand[k] += sgn * step;
          const double cv = eval(cand);
          if (cv < val) {
            cur = cand;
            val = cv;
            improved = true;
            break;
          }
        }
      }
      if (!improved) step *= 0.5;
    }
    if (val < best.residual) {
      best.residual = val;
      best.u = detail::su2_zyz(cur[0], cur[1], cur[2]);
      best.v = detail::su2_zyz(cur[3], cur[4], cur[5]);
    }
    if (best.residual <= opt.tol) break;
  }
  best.equivalent = best.residual <= opt.tol;
  return best;
}

}  // namespace qgd
