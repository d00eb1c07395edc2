#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <utility>

namespace qgd {

using cplx = std::complex<double>;
using Vec3 = std::array<double, 3>;
using Mat3 = std::array<std::array<double, 3>, 3>;
using Mat2c = std::array<std::array<cplx, 2>, 2>;
using Mat4c = std::array<std::array<cplx, 4>, 4>;
using Vec4c = std::array<cplx, 4>;

// ---------------------------------------------------------------------------
// Real 3-vectors / 3x3 matrices
// ---------------------------------------------------------------------------

inline double dot(const Vec3& a, const Vec3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

inline double norm_sq(const Vec3& a) { return dot(a, a); }

inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

inline Vec3 scaled(const Vec3& a, double s) {
  return {a[0] * s, a[1] * s, a[2] * s};
}

inline Vec3 add(const Vec3& a, const Vec3& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}

inline Vec3 sub(const Vec3& a, const Vec3& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}

inline Vec3 normalized(const Vec3& a) {
  const double n = norm(a);
  return {a[0] / n, a[1] / n, a[2] / n};
}

inline Mat3 zero3() { return {}; }

inline Mat3 identity3() {
  Mat3 m{};
  m[0][0] = m[1][1] = m[2][2] = 1.0;
  return m;
}

inline Mat3 transpose(const Mat3& m) {
  Mat3 r{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r[i][j] = m[j][i];
  return r;
}

inline Mat3 matmul(const Mat3& a, const Mat3& b) {
  Mat3 r{};
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k) {
      const double aik = a[i][k];
      for (int j = 0; j < 3; ++j) r[i][j] += aik * b[k][j];
    }
  return r;
}

inline Vec3 matvec(const Mat3& m, const Vec3& v) {
  return {dot(m[0], v), dot(m[1], v), dot(m[2], v)};
}

// a b^T
inline Mat3 outer(const Vec3& a, const Vec3& b) {
  Mat3 r{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r[i][j] = a[i] * b[j];
  return r;
}

inline Mat3 add(const Mat3& a, const Mat3& b) {
  Mat3 r{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r[i][j] = a[i][j] + b[i][j];
  return r;
}

inline Mat3 sub(const Mat3& a, const Mat3& b) {
  Mat3 r{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r[i][j] = a[i][j] - b[i][j];
  return r;
}

inline Mat3 scaled(const Mat3& m, double s) {
  Mat3 r{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r[i][j] = m[i][j] * s;
  return r;
}

inline double frob_sq(const Mat3& m) {
  double s = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) s += m[i][j] * m[i][j];
  return s;
}

inline double det(const Mat3& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

inline double max_abs_asymmetry(const Mat3& m) {
  double d = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      d = std::max(d, std::abs(m[i][j] - m[j][i]));
  return d;
}

// ---------------------------------------------------------------------------
// Complex 2x2 / 4x4 matrices
// ---------------------------------------------------------------------------

inline Mat4c zero4() { return {}; }

inline Mat4c identity4() {
  Mat4c m{};
  for (int i = 0; i < 4; ++i) m[i][i] = 1.0;
  return m;
}

inline Mat2c identity2() {
  Mat2c m{};
  m[0][0] = m[1][1] = 1.0;
  return m;
}

inline Mat2c matmul(const Mat2c& a, const Mat2c& b) {
  Mat2c r{};
  for (int i = 0; i < 2; ++i)
    for (int k = 0; k < 2; ++k)
      for (int j = 0; j < 2; ++j) r[i][j] += a[i][k] * b[k][j];
  return r;
}

inline Mat2c adjoint(const Mat2c& m) {
  Mat2c r{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r[i][j] = std::conj(m[j][i]);
  return r;
}

inline Mat4c matmul(const Mat4c& a, const Mat4c& b) {
  Mat4c r{};
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k) {
      const cplx aik = a[i][k];
      if (aik == cplx(0.0)) continue;
      for (int j = 0; j < 4; ++j) r[i][j] += aik * b[k][j];
    }
  return r;
}

inline Mat4c adjoint(const Mat4c& m) {
  Mat4c r{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r[i][j] = std::conj(m[j][i]);
  return r;
}

inline Mat4c add(const Mat4c& a, const Mat4c& b) {
  Mat4c r{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r[i][j] = a[i][j] + b[i][j];
  return r;
}

inline Mat4c sub(const Mat4c& a, const Mat4c& b) {
  Mat4c r{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r[i][j] = a[i][j] - b[i][j];
  return r;
}

inline Mat4c scaled(const Mat4c& m, cplx s) {
  Mat4c r{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r[i][j] = m[i][j] * s;
  return r;
}

inline cplx trace(const Mat4c& m) {
  return m[0][0] + m[1][1] + m[2][2] + m[3][3];
}

inline double frob_sq(const Mat4c& m) {
  double s = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) s += std::norm(m[i][j]);
  return s;
}

inline double frob(const Mat4c& m) { return std::sqrt(frob_sq(m)); }

inline double max_abs_nonhermiticity(const Mat4c& m) {
  double d = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = i; j < 4; ++j)
      d = std::max(d, std::abs(m[i][j] - std::conj(m[j][i])));
  return d;
}

// Kronecker product of two 2x2 blocks, index convention |ab> = |a>|b>.
inline Mat4c kron(const Mat2c& a, const Mat2c& b) {
  Mat4c r{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l)
          r[2 * i + k][2 * j + l] = a[i][j] * b[k][l];
  return r;
}

// |v><v|
inline Mat4c projector(const Vec4c& v) {
  Mat4c r{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r[i][j] = v[i] * std::conj(v[j]);
  return r;
}

// ---------------------------------------------------------------------------
// Cyclic Jacobi eigensolver for real symmetric matrices
// ---------------------------------------------------------------------------

template <std::size_t N>
struct SymEig {
  std::array<double, N> values;                  // ascending
  std::array<std::array<double, N>, N> vectors;  // vectors[k] pairs values[k]
};

namespace detail {

template <std::size_t N>
inline double max_offdiag(const std::array<std::array<double, N>, N>& a) {
  double m = 0.0;
  for (std::size_t p = 0; p + 1 < N; ++p)
    for (std::size_t q = p + 1; q < N; ++q) m = std::max(m, std::abs(a[p][q]));
  return m;
}

}  // namespace detail

// Plain cyclic Jacobi: sweeps until every off-diagonal entry is below tol in
// absolute value or max_sweeps is hit. Deterministic, no pivoting heuristics.
template <std::size_t N>
inline SymEig<N> jacobi_sym(std::array<std::array<double, N>, N> a, double tol,
                            int max_sweeps) {
  std::array<std::array<double, N>, N> v{};
  for (std::size_t i = 0; i < N; ++i) v[i][i] = 1.0;

  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    if (detail::max_offdiag<N>(a) < tol) break;
    for (std::size_t p = 0; p + 1 < N; ++p) {
      for (std::size_t q = p + 1; q < N; ++q) {
        const double apq = a[p][q];
        if (std::abs(apq) < tol * 1e-3) continue;
        const double theta = (a[q][q] - a[p][p]) / (2.0 * apq);
        double t;
        if (std::abs(theta) > 1e154) {
          t = 1.0 / (2.0 * theta);
        } else {
          t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
          if (theta < 0.0) t = -t;
        }
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const double tau = s / (1.0 + c);

        a[p][p] -= t * apq;
        a[q][q] += t * apq;
        a[p][q] = 0.0;
        a[q][p] = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
          if (i != p && i != q) {
            const double aip = (i < p) ? a[i][p] : a[p][i];
            const double aiq = (i < q) ? a[i][q] : a[q][i];
            const double nip = aip - s * (aiq + tau * aip);
            const double niq = aiq + s * (aip - tau * aiq);
            (i < p ? a[i][p] : a[p][i]) = nip;
            (i < q ? a[i][q] : a[q][i]) = niq;
          }
          // accumulate rotations column-wise: column k of the accumulated
          // matrix is the k-th eigenvector
          const double vip = v[i][p];
          const double viq = v[i][q];
          v[i][p] = vip - s * (viq + tau * vip);
          v[i][q] = viq + s * (vip - tau * viq);
        }
      }
    }
  }

  std::array<std::size_t, N> order{};
  for (std::size_t i = 0; i < N; ++i) order[i] = i;
  for (std::size_t i = 0; i + 1 < N; ++i) {  // insertion sort, ascending
    std::size_t best = i;
    for (std::size_t j = i + 1; j < N; ++j)
      if (a[order[j]][order[j]] < a[order[best]][order[best]]) best = j;
    std::swap(order[i], order[best]);
  }

  SymEig<N> out{};
  for (std::size_t k = 0; k < N; ++k) {
    const std::size_t c = order[k];
    out.values[k] = a[c][c];
    for (std::size_t i = 0; i < N; ++i) out.vectors[k][i] = v[i][c];
    // sign convention: first component larger than 1e-12 in magnitude is
    // made positive, so repeated runs and degenerate-permutation choices
    // stay reproducible
    for (std::size_t i = 0; i < N; ++i) {
      if (std::abs(out.vectors[k][i]) > 1e-12) {
        if (out.vectors[k][i] < 0.0)
          for (std::size_t j = 0; j < N; ++j) out.vectors[k][j] = -out.vectors[k][j];
        break;
      }
    }
  }
  return out;
}

inline SymEig<3> eig_sym3(const Mat3& m) { return jacobi_sym<3>(m, 1e-15, 30); }

// ---------------------------------------------------------------------------
// 4x4 Hermitian eigensolver via the 8x8 real symmetric embedding
//   H = A + iB  ->  [[A, -B], [B, A]]
// Each eigenvalue of H appears twice in the embedding; eigenvectors (u; v)
// map back to u + iv.
// ---------------------------------------------------------------------------

struct HermEig4 {
  std::array<double, 4> values;    // ascending
  std::array<Vec4c, 4> vectors;    // vectors[k] pairs values[k], unit norm
};

namespace detail {

inline std::array<std::array<double, 8>, 8> embed_hermitian(const Mat4c& h) {
  std::array<std::array<double, 8>, 8> e{};
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      // symmetrize so roundoff-level non-Hermiticity cannot skew the
      // embedding: use (H + H^dag)/2
      const double re = 0.5 * (h[i][j].real() + h[j][i].real());
      const double im = 0.5 * (h[i][j].imag() - h[j][i].imag());
      e[i][j] = re;
      e[i + 4][j + 4] = re;
      e[i][j + 4] = -im;
      e[i + 4][j] = im;
    }
  }
  return e;
}

}  // namespace detail

inline std::array<double, 4> eigvals_hermitian4(const Mat4c& h) {
  const auto r = jacobi_sym<8>(detail::embed_hermitian(h), 1e-14, 100);
  // duplicated pairs: take every second value of the ascending list
  return {r.values[0], r.values[2], r.values[4], r.values[6]};
}

inline HermEig4 eig_hermitian4(const Mat4c& h) {
  const auto r = jacobi_sym<8>(detail::embed_hermitian(h), 1e-14, 100);

  HermEig4 out{};
  int taken = 0;
  std::array<Vec4c, 4> basis{};
  for (int m = 0; m < 8 && taken < 4; ++m) {
    Vec4c w{};
    for (int i = 0; i < 4; ++i) w[i] = cplx(r.vectors[m][i], r.vectors[m][i + 4]);
    // Gram-Schmidt against the complex vectors already selected; a
    // duplicated embedding partner collapses to ~0 here and is skipped.
    for (int s = 0; s < taken; ++s) {
      cplx ov{};
      for (int i = 0; i < 4; ++i) ov += std::conj(basis[s][i]) * w[i];
      for (int i = 0; i < 4; ++i) w[i] -= ov * basis[s][i];
    }
    double n2 = 0.0;
    for (int i = 0; i < 4; ++i) n2 += std::norm(w[i]);
    if (n2 < 0.25) continue;
    const double inv = 1.0 / std::sqrt(n2);
    for (int i = 0; i < 4; ++i) w[i] *= inv;
    // phase convention: first component larger than 1e-12 made real positive
    for (int i = 0; i < 4; ++i) {
      const double mag = std::abs(w[i]);
      if (mag > 1e-12) {
        const cplx ph = std::conj(w[i]) / mag;
        for (int j = 0; j < 4; ++j) w[j] *= ph;
        break;
      }
    }
    out.values[taken] = r.values[m];
    basis[taken] = w;
    out.vectors[taken] = w;
    ++taken;
  }
  return out;
}

}  // namespace qgd
