#pragma once

#include <algorithm>
#include <cmath>
#include <optional>

#include "qgd/discord.hpp"
#include "qgd/linalg.hpp"
#include "qgd/qstate.hpp"

namespace qgd {

// Transpose on the second factor: <ab|rho^Tb|cd> = <ad|rho|cb>.  Defined on
// raw matrices because the output of a partial transpose need not be positive
// semidefinite.
inline Mat4c partial_transpose(const Mat4c& m) {
  Mat4c r{};
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c)
        for (int d = 0; d < 2; ++d)
          r[2 * a + b][2 * c + d] = m[2 * a + d][2 * c + b];
  return r;
}

inline Mat4c partial_transpose(const DensityMatrix& rho) {
  return partial_transpose(rho.matrix());
}

inline double min_pt_eigenvalue(const DensityMatrix& rho) {
  return eigvals_hermitian4(partial_transpose(rho))[0];
}

// For two qubits PPT is necessary and sufficient, so this is an exact
// separability decision up to the eigenvalue tolerance.
inline bool is_separable(const DensityMatrix& rho, double tol = 1e-10) {
  return min_pt_eigenvalue(rho) >= -tol;
}

// X-state separability in gauged parameters: max{p,q}^2 <= min{ad, bc}.
// (Partial transposition swaps p and q, so PPT of state and partner reduce
// to this single inequality pair.)
inline bool x_state_separable(const XStateParams& s, double tol = 1e-10) {
  const double m2 = std::max(s.p * s.p, s.q * s.q);
  return m2 <= std::min(s.a * s.d, s.b * s.c) + tol;
}

// Singular values of the correlation matrix T, non-increasing.
inline std::array<double, 3> t_singular_values(const Mat3& T) {
  const auto e = eig_sym3(matmul(T, transpose(T)));
  std::array<double, 3> s{};
  for (int k = 0; k < 3; ++k)
    s[k] = std::sqrt(std::max(0.0, e.values[2 - k]));
  return s;
}

// ||T||_tr = sum of singular values; separable states obey ||T||_tr <= 1
// (necessary only).
inline double t_trace_norm(const BlochForm& b) {
  const auto s = t_singular_values(b.T);
  return s[0] + s[1] + s[2];
}

// CHSH quantity M = sum of the two largest eigenvalues of T^T T; M > 1 means
// a Bell violation.
inline double chsh_M(const BlochForm& b) {
  const auto e = eig_sym3(matmul(transpose(b.T), b.T));
  return std::max(0.0, e.values[2]) + std::max(0.0, e.values[1]);
}

struct SeparabilityReport {
  bool ppt = false;
  double min_pt_eigenvalue = 0.0;
  double t_trace_norm = 0.0;
  double chsh_M = 0.0;
  // Present iff the matrix is X-shaped (within 1e-12); value of the
  // closed-form X-state separability test, which must agree with ppt.
  std::optional<bool> x_condition;
};

namespace detail {

inline std::optional<XStateParams> x_shape_params(const Mat4c& m) {
  double off = 0.0;  // largest entry outside the X pattern
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (i != j && i + j != 3) off = std::max(off, std::abs(m[i][j]));
  if (off > 1e-12) return std::nullopt;
  return phase_gauge(m[0][0].real(), m[1][1].real(), m[2][2].real(),
                     m[3][3].real(), m[0][3], m[1][2]);
}

}  // namespace detail

inline SeparabilityReport separability_report(const DensityMatrix& rho,
                                              double tol = 1e-10) {
  SeparabilityReport r;
  r.min_pt_eigenvalue = min_pt_eigenvalue(rho);
  r.ppt = r.min_pt_eigenvalue >= -tol;
  const BlochForm b = to_bloch(rho);
  r.t_trace_norm = t_trace_norm(b);
  r.chsh_M = chsh_M(b);
  if (const auto xs = detail::x_shape_params(rho.matrix()))
    r.x_condition = x_state_separable(*xs, tol);
  return r;
}

}  // namespace qgd
