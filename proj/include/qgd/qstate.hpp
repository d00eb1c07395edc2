#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "qgd/errors.hpp"
#include "qgd/linalg.hpp"

namespace qgd {

inline constexpr double kHermTol = 1e-12;   // max |M - M^dag| entry
inline constexpr double kTraceTol = 1e-12;  // |tr - 1|
inline constexpr double kPsdTol = 1e-10;    // min eigenvalue >= -kPsdTol

// Bloch decomposition of a two-qubit state:
//   rho = (1/4) [ I(x)I + x.sigma (x) I + I (x) y.sigma + sum_ij T_ij s_i(x)s_j ]
// x, y are the local Bloch vectors, T the 3x3 correlation matrix.
struct BlochForm {
  Vec3 x{};
  Vec3 y{};
  Mat3 T{};
};

// Real X-state parameters (diagonal a,b,c,d; coherences p = <00|rho|11>,
// q = <01|rho|10>, both already gauged nonnegative).
struct XStateParams {
  double a = 0.0, b = 0.0, c = 0.0, d = 0.0;
  double p = 0.0, q = 0.0;
};

inline void validate(const XStateParams& s) {
  const double vals[6] = {s.a, s.b, s.c, s.d, s.p, s.q};
  const char* names[6] = {"a", "b", "c", "d", "p", "q"};
  for (int i = 0; i < 6; ++i)
    if (!(vals[i] >= 0.0))
      throw InvalidParams(std::string("x-state parameter ") + names[i] +
                          " must be nonnegative");
  const double sum = s.a + s.b + s.c + s.d;
  if (std::abs(sum - 1.0) > 1e-12)
    throw InvalidParams(detail::with_magnitude(
        "x-state populations must sum to 1", sum - 1.0));
  if (s.p * s.p > s.a * s.d + 1e-12)
    throw InvalidParams(detail::with_magnitude(
        "x-state positivity requires p^2 <= ad", s.p * s.p - s.a * s.d));
  if (s.q * s.q > s.b * s.c + 1e-12)
    throw InvalidParams(detail::with_magnitude(
        "x-state positivity requires q^2 <= bc", s.q * s.q - s.b * s.c));
}

// Validated two-qubit density matrix. Construction always passes through the
// Hermiticity / unit-trace / positivity gate, so a held value is a state.
class DensityMatrix {
 public:
  static DensityMatrix from_matrix(const Mat4c& m) {
    const double herm = max_abs_nonhermiticity(m);
    if (herm > kHermTol) throw NotHermitian(herm);
    const cplx tr = trace(m);
    const double tr_dev = std::abs(tr - cplx(1.0));
    if (tr_dev > kTraceTol) throw NotUnitTrace(tr_dev);
    const auto ev = eigvals_hermitian4(m);
    if (ev[0] < -kPsdTol) throw NotPSD(ev[0]);
    return DensityMatrix(m);
  }

  const Mat4c& matrix() const { return m_; }
  cplx operator()(int i, int j) const { return m_[i][j]; }

 private:
  explicit DensityMatrix(const Mat4c& m) : m_(m) {}
  Mat4c m_;
};

namespace detail {

inline const std::array<Mat2c, 4>& paulis() {
  static const std::array<Mat2c, 4> p = [] {
    std::array<Mat2c, 4> m{};
    m[0] = identity2();
    m[1] = {{{cplx(0.0), cplx(1.0)}, {cplx(1.0), cplx(0.0)}}};            // X
    m[2] = {{{cplx(0.0), cplx(0.0, -1.0)}, {cplx(0.0, 1.0), cplx(0.0)}}}; // Y
    m[3] = {{{cplx(1.0), cplx(0.0)}, {cplx(0.0), cplx(-1.0)}}};           // Z
    return m;
  }();
  return p;
}

inline double re_trace_prod(const Mat4c& rho, const Mat4c& op) {
  // Re tr(rho * op); all our observables are Hermitian so the trace is real
  cplx t{};
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k) t += rho[i][k] * op[k][i];
  return t.real();
}

}  // namespace detail

inline BlochForm to_bloch(const DensityMatrix& rho) {
  const auto& p = detail::paulis();
  BlochForm b;
  for (int i = 0; i < 3; ++i) {
    b.x[i] = detail::re_trace_prod(rho.matrix(), kron(p[i + 1], p[0]));
    b.y[i] = detail::re_trace_prod(rho.matrix(), kron(p[0], p[i + 1]));
    for (int j = 0; j < 3; ++j)
      b.T[i][j] = detail::re_trace_prod(rho.matrix(), kron(p[i + 1], p[j + 1]));
  }
  return b;
}

inline Mat4c bloch_matrix(const BlochForm& b) {
  const auto& p = detail::paulis();
  Mat4c m = identity4();
  for (int i = 0; i < 3; ++i) {
    m = add(m, scaled(kron(p[i + 1], p[0]), cplx(b.x[i])));
    m = add(m, scaled(kron(p[0], p[i + 1]), cplx(b.y[i])));
    for (int j = 0; j < 3; ++j)
      m = add(m, scaled(kron(p[i + 1], p[j + 1]), cplx(b.T[i][j])));
  }
  return scaled(m, cplx(0.25));
}

// Validates: an inconsistent (x, y, T) triple surfaces as NotPSD.
inline DensityMatrix from_bloch(const BlochForm& b) {
  return DensityMatrix::from_matrix(bloch_matrix(b));
}

inline Mat4c x_state_matrix(const XStateParams& s) {
  Mat4c m{};
  m[0][0] = s.a;
  m[1][1] = s.b;
  m[2][2] = s.c;
  m[3][3] = s.d;
  m[0][3] = m[3][0] = s.p;
  m[1][2] = m[2][1] = s.q;
  return m;
}

inline DensityMatrix x_state(const XStateParams& s) {
  validate(s);
  return DensityMatrix::from_matrix(x_state_matrix(s));
}

// Exact Bloch form of a real X state:
//   x = (0,0,a+b-c-d), y = (0,0,a-b+c-d),
//   T = diag(2(p+q), 2(q-p), a-b-c+d)
inline BlochForm x_state_bloch(const XStateParams& s) {
  BlochForm b;
  b.x = {0.0, 0.0, s.a + s.b - s.c - s.d};
  b.y = {0.0, 0.0, s.a - s.b + s.c - s.d};
  b.T = zero3();
  b.T[0][0] = 2.0 * (s.p + s.q);
  b.T[1][1] = 2.0 * (s.q - s.p);
  b.T[2][2] = s.a - s.b - s.c + s.d;
  return b;
}

// Local phase rotations exp(i theta_k sigma_z / 2) make both coherences of an
// X state real nonnegative without touching populations or discord; this maps
// complex coherences to the gauged parameter set.
inline XStateParams phase_gauge(double a, double b, double c, double d,
                                cplx p, cplx q) {
  XStateParams s{a, b, c, d, std::abs(p), std::abs(q)};
  validate(s);
  return s;
}

// --------------------------------------------------------------------------
// Named states
// --------------------------------------------------------------------------

inline DensityMatrix bell_phi_plus() {
  const double h = 0.5;
  Mat4c m{};
  m[0][0] = m[0][3] = m[3][0] = m[3][3] = h;
  return DensityMatrix::from_matrix(m);
}

inline DensityMatrix bell_psi_minus() {
  const double h = 0.5;
  Mat4c m{};
  m[1][1] = m[2][2] = h;
  m[1][2] = m[2][1] = -h;
  return DensityMatrix::from_matrix(m);
}

// w |Psi-><Psi-| + (1-w)/4 I
inline DensityMatrix werner(double w) {
  if (!(w >= 0.0 && w <= 1.0))
    throw ParamOutOfRange(detail::with_magnitude(
        "werner parameter must lie in [0, 1]", w));
  Mat4c m{};
  m[0][0] = m[3][3] = (1.0 - w) / 4.0;
  m[1][1] = m[2][2] = (1.0 + w) / 4.0;
  m[1][2] = m[2][1] = -w / 2.0;
  return DensityMatrix::from_matrix(m);
}

enum class EntangledComponent {
  odd_parity,   // (|01> + |10>)/sqrt(2)  (default)
  even_parity,  // (|00> + |11>)/sqrt(2)
};

// (1/2 + s)|Psi><Psi| + (1/2 - s)|00><00| with s = sqrt(1/4 - eps/3);
// eps in [0, 3/4]. With the odd-parity component the discord is exactly
// 1 - eps on the whole family.
inline DensityMatrix rho_epsilon(
    double eps, EntangledComponent comp = EntangledComponent::odd_parity) {
  if (!(eps >= 0.0 && eps <= 0.75))
    throw ParamOutOfRange(detail::with_magnitude(
        "rho_epsilon parameter must lie in [0, 3/4]", eps));
  const double s = std::sqrt(std::max(0.0, 0.25 - eps / 3.0));
  const double wpsi = 0.5 + s;
  const double w00 = 0.5 - s;
  Vec4c psi{};
  if (comp == EntangledComponent::odd_parity) {
    psi[1] = psi[2] = 1.0 / std::numbers::sqrt2;
  } else {
    psi[0] = psi[3] = 1.0 / std::numbers::sqrt2;
  }
  Mat4c m = scaled(projector(psi), cplx(wpsi));
  m[0][0] += w00;
  return DensityMatrix::from_matrix(m);
}

inline XStateParams rho_star_params() {
  const double s2 = std::numbers::sqrt2;
  return XStateParams{(2.0 + s2) / 8.0, (2.0 + s2) / 8.0, (2.0 - s2) / 8.0,
                      (2.0 - s2) / 8.0, 1.0 / (4.0 * s2), 1.0 / (4.0 * s2)};
}

// The extremal separable X state: populations (2+sqrt2)/8 twice and
// (2-sqrt2)/8 twice, both coherences 1/(4 sqrt2). Discord 1/4.
inline DensityMatrix rho_star() { return x_state(rho_star_params()); }

// (1/2)|00><00| + (1/2)|+1><+1|; the non-X form of the same extremal point.
inline DensityMatrix sigma_star() {
  Mat4c m{};
  m[0][0] = 0.5;
  m[1][1] = m[1][3] = m[3][1] = m[3][3] = 0.25;
  return DensityMatrix::from_matrix(m);
}

// Product state from local Bloch vectors (norms <= 1; unit vectors give the
// pure product |a><a| (x) |b><b|).
inline DensityMatrix product_state(const Vec3& a, const Vec3& b) {
  if (norm(a) > 1.0 + 1e-12) throw ParamOutOfRange(detail::with_magnitude(
      "first local Bloch vector must have norm <= 1", norm(a)));
  if (norm(b) > 1.0 + 1e-12) throw ParamOutOfRange(detail::with_magnitude(
      "second local Bloch vector must have norm <= 1", norm(b)));
  BlochForm f;
  f.x = a;
  f.y = b;
  f.T = outer(a, b);
  return from_bloch(f);
}

inline int numerical_rank(const DensityMatrix& rho, double tol = 1e-10) {
  const auto ev = eigvals_hermitian4(rho.matrix());
  int r = 0;
  for (double v : ev)
    if (v > tol) ++r;
  return r;
}

}  // namespace qgd
