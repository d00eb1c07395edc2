#include "qgd/linalg.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "qgd/rng.hpp"

namespace {

using namespace qgd;

Mat3 random_symmetric(Rng& rng) {
  Mat3 m{};
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) m[i][j] = m[j][i] = rng.uniform(-2.0, 2.0);
  return m;
}

Mat4c random_hermitian(Rng& rng) {
  Mat4c g{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) g[i][j] = rng.cgauss();
  return scaled(add(g, adjoint(g)), cplx(0.5));
}

TEST(Mat3Algebra, TransposeAndProducts) {
  Rng rng(11);
  const Mat3 a = random_symmetric(rng);
  Mat3 b{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) b[i][j] = rng.uniform(-1.0, 1.0);
  const Mat3 ab_t = transpose(matmul(a, b));
  const Mat3 bt_at = matmul(transpose(b), transpose(a));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      EXPECT_NEAR(ab_t[i][j], bt_at[i][j], 1e-14);

  const Vec3 v{0.3, -0.7, 1.1};
  const Vec3 bv = matvec(b, v);
  for (int i = 0; i < 3; ++i) EXPECT_DOUBLE_EQ(bv[i], dot(b[i], v));
}

TEST(Mat3Algebra, DeterminantMatchesCofactorExpansion) {
  const Mat3 m{{{2.0, 1.0, 0.5}, {-1.0, 3.0, 2.0}, {0.0, 1.5, -2.0}}};
  // cofactor expansion by hand: 2*(3*-2 - 2*1.5) - 1*(-1*-2 - 2*0) +
  // 0.5*(-1*1.5 - 3*0) = 2*(-9) - 2 - 0.75
  EXPECT_NEAR(det(m), -20.75, 1e-14);
  EXPECT_NEAR(det(identity3()), 1.0, 0.0);
}

TEST(JacobiSym3, ReconstructsRandomMatrices) {
  Rng rng(42);
  for (int trial = 0; trial < 200; ++trial) {
    const Mat3 m = random_symmetric(rng);
    const auto e = eig_sym3(m);
    EXPECT_LE(e.values[0], e.values[1]);
    EXPECT_LE(e.values[1], e.values[2]);
    // sum_k lambda_k v_k v_k^T == m
    Mat3 rec{};
    for (int k = 0; k < 3; ++k)
      rec = add(rec, scaled(outer(e.vectors[k], e.vectors[k]), e.values[k]));
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) EXPECT_NEAR(rec[i][j], m[i][j], 1e-13);
    // orthonormal eigenbasis
    for (int k = 0; k < 3; ++k)
      for (int l = 0; l < 3; ++l)
        EXPECT_NEAR(dot(e.vectors[k], e.vectors[l]), k == l ? 1.0 : 0.0,
                    1e-13);
  }
}

TEST(JacobiSym3, DiagonalAndDegenerateInput) {
  Mat3 d{};
  d[0][0] = 3.0;
  d[1][1] = -1.0;
  d[2][2] = 3.0;  // degenerate pair {3, 3}
  const auto e = eig_sym3(d);
  EXPECT_DOUBLE_EQ(e.values[0], -1.0);
  EXPECT_DOUBLE_EQ(e.values[1], 3.0);
  EXPECT_DOUBLE_EQ(e.values[2], 3.0);

  const auto id = eig_sym3(identity3());
  for (int k = 0; k < 3; ++k) EXPECT_DOUBLE_EQ(id.values[k], 1.0);
}

TEST(JacobiSym3, SignConventionAndDeterminism) {
  Rng rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const Mat3 m = random_symmetric(rng);
    const auto e1 = eig_sym3(m);
    const auto e2 = eig_sym3(m);
    for (int k = 0; k < 3; ++k) {
      EXPECT_EQ(e1.values[k], e2.values[k]);  // bit-identical
      for (int i = 0; i < 3; ++i) EXPECT_EQ(e1.vectors[k][i], e2.vectors[k][i]);
      // first non-tiny component is positive
      for (int i = 0; i < 3; ++i) {
        if (std::abs(e1.vectors[k][i]) > 1e-12) {
          EXPECT_GT(e1.vectors[k][i], 0.0);
          break;
        }
      }
    }
  }
}

TEST(EigHermitian4, ReconstructsRandomHermitians) {
  Rng rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    const Mat4c h = random_hermitian(rng);
    const auto e = eig_hermitian4(h);
    for (int k = 0; k + 1 < 4; ++k) EXPECT_LE(e.values[k], e.values[k + 1]);
    Mat4c rec{};
    for (int k = 0; k < 4; ++k)
      rec = add(rec, scaled(projector(e.vectors[k]), cplx(e.values[k])));
    EXPECT_LT(frob(sub(rec, h)), 1e-10);
    // orthonormality
    for (int k = 0; k < 4; ++k)
      for (int l = 0; l < 4; ++l) {
        cplx ov{};
        for (int i = 0; i < 4; ++i)
          ov += std::conj(e.vectors[k][i]) * e.vectors[l][i];
        EXPECT_NEAR(std::abs(ov), k == l ? 1.0 : 0.0, 1e-11);
      }
  }
}

TEST(EigHermitian4, KnownSpectra) {
  // Bell projector |phi+><phi+|: eigenvalues {0, 0, 0, 1}
  Vec4c phi{};
  phi[0] = phi[3] = 1.0 / std::sqrt(2.0);
  const auto e = eigvals_hermitian4(projector(phi));
  EXPECT_NEAR(e[0], 0.0, 1e-13);
  EXPECT_NEAR(e[1], 0.0, 1e-13);
  EXPECT_NEAR(e[2], 0.0, 1e-13);
  EXPECT_NEAR(e[3], 1.0, 1e-13);

  // complex entries: sigma_y (x) sigma_y has eigenvalues {-1, -1, 1, 1}
  Mat4c yy{};
  yy[0][3] = -1.0;
  yy[1][2] = 1.0;
  yy[2][1] = 1.0;
  yy[3][0] = -1.0;
  const auto ey = eigvals_hermitian4(yy);
  EXPECT_NEAR(ey[0], -1.0, 1e-13);
  EXPECT_NEAR(ey[1], -1.0, 1e-13);
  EXPECT_NEAR(ey[2], 1.0, 1e-13);
  EXPECT_NEAR(ey[3], 1.0, 1e-13);

  // a genuinely complex Hermitian matrix with hand-picked spectrum:
  // diag(1,2,3,4) conjugated by a phase rotation keeps the spectrum
  Mat4c d{};
  for (int i = 0; i < 4; ++i) d[i][i] = 1.0 + i;
  Mat2c ph{};
  ph[0][0] = std::polar(1.0, 0.4);
  ph[1][1] = std::polar(1.0, -0.9);
  Mat2c rot{};
  rot[0][0] = rot[1][1] = std::cos(0.3);
  rot[0][1] = -std::sin(0.3);
  rot[1][0] = std::sin(0.3);
  const Mat4c w = kron(matmul(ph, rot), matmul(rot, ph));
  const Mat4c h = matmul(matmul(w, d), adjoint(w));
  const auto eh = eigvals_hermitian4(h);
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(eh[i], 1.0 + i, 1e-12);
}

TEST(EigHermitian4, DegenerateSpectraKeepMultiplicity) {
  // maximally mixed: all eigenvalues 1/4
  const auto e = eigvals_hermitian4(scaled(identity4(), cplx(0.25)));
  for (int k = 0; k < 4; ++k) EXPECT_NEAR(e[k], 0.25, 1e-14);

  // rank-2 projector mixture with double eigenvalues {0, 0, 1/2, 1/2}
  Vec4c a{}, b{};
  a[0] = 1.0;
  b[1] = b[2] = 1.0 / std::sqrt(2.0);
  const Mat4c m = add(scaled(projector(a), cplx(0.5)),
                      scaled(projector(b), cplx(0.5)));
  const auto em = eig_hermitian4(m);
  EXPECT_NEAR(em.values[0], 0.0, 1e-13);
  EXPECT_NEAR(em.values[1], 0.0, 1e-13);
  EXPECT_NEAR(em.values[2], 0.5, 1e-13);
  EXPECT_NEAR(em.values[3], 0.5, 1e-13);
  Mat4c rec{};
  for (int k = 0; k < 4; ++k)
    rec = add(rec, scaled(projector(em.vectors[k]), cplx(em.values[k])));
  EXPECT_LT(frob(sub(rec, m)), 1e-12);
}

TEST(Kron, MatchesIndexConvention) {
  // |01><10| = |0><1| (x) |1><0|
  Mat2c e01{}, e10{};
  e01[0][1] = 1.0;
  e10[1][0] = 1.0;
  const Mat4c k = kron(e01, e10);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      EXPECT_EQ(k[i][j], (i == 1 && j == 2) ? cplx(1.0) : cplx(0.0));
}

}  // namespace
