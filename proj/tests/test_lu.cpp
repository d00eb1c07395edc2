#include "qgd/lu.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "qgd/discord.hpp"
#include "qgd/qstate.hpp"
#include "qgd/rng.hpp"
#include "qgd/separability.hpp"
#include "qgd/xmax.hpp"

namespace {

using namespace qgd;

TEST(ApplyLocalUnitary, RejectsNonUnitaryFactors) {
  Mat2c bad = identity2();
  bad[0][0] = cplx(1.5, 0.0);
  EXPECT_THROW(apply_local_unitary(rho_star(), bad, identity2()), NotUnitary);
  EXPECT_THROW(apply_local_unitary(rho_star(), identity2(), bad), NotUnitary);
  EXPECT_NO_THROW(apply_local_unitary(rho_star(), identity2(), identity2()));
}

TEST(ApplyLocalUnitary, IdentityIsNoOp) {
  const DensityMatrix rho = oracles::random_state(3);
  const DensityMatrix out =
      apply_local_unitary(rho, identity2(), identity2());
  EXPECT_LE(frob(sub(out.matrix(), rho.matrix())), 1e-14);
}

TEST(BlochRotation, IsSpecialOrthogonal) {
  Rng rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const Mat3 r = bloch_rotation(haar_unitary2(rng));
    const Mat3 rrt = matmul(r, transpose(r));
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        EXPECT_NEAR(rrt[i][j], i == j ? 1.0 : 0.0, 1e-13);
    EXPECT_NEAR(det(r), 1.0, 1e-12);
  }
}

TEST(BlochRotation, MatchesBlochTransformationLaw) {
  // x' = R_u x, y' = R_v y, T' = R_u T R_v^T
  Rng rng(13);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const DensityMatrix rho = oracles::random_state(seed);
    const Mat2c u = haar_unitary2(rng);
    const Mat2c v = haar_unitary2(rng);
    const BlochForm before = to_bloch(rho);
    const BlochForm after = to_bloch(apply_local_unitary(rho, u, v));
    const Mat3 ru = bloch_rotation(u);
    const Mat3 rv = bloch_rotation(v);
    const Vec3 px = matvec(ru, before.x);
    const Vec3 py = matvec(rv, before.y);
    const Mat3 pt = matmul(matmul(ru, before.T), transpose(rv));
    for (int i = 0; i < 3; ++i) {
      EXPECT_NEAR(after.x[i], px[i], 1e-12);
      EXPECT_NEAR(after.y[i], py[i], 1e-12);
      for (int j = 0; j < 3; ++j) EXPECT_NEAR(after.T[i][j], pt[i][j], 1e-12);
    }
  }
}

TEST(LocalUnitaries, PreserveDiscordFingerprintAndSeparability) {
  Rng rng(29);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const DensityMatrix rho = oracles::random_state(seed);
    const DensityMatrix out =
        apply_local_unitary(rho, haar_unitary2(rng), haar_unitary2(rng));
    EXPECT_NEAR(geometric_discord(out), geometric_discord(rho), 1e-12);
    EXPECT_LE(fingerprint_distance(lu_fingerprint(out), lu_fingerprint(rho)),
              1e-12);
    const double m_in = min_pt_eigenvalue(rho);
    const double m_out = min_pt_eigenvalue(out);
    EXPECT_NEAR(m_in, m_out, 1e-12);
  }
}

TEST(LuFingerprint, KnownStates) {
  {
    const LUFingerprint f = lu_fingerprint(rho_star());
    EXPECT_NEAR(f.x_norm, 1.0 / std::numbers::sqrt2, 1e-12);
    // a=b and c=d make the second marginal maximally mixed
    EXPECT_NEAR(f.y_norm, 0.0, 1e-12);
    EXPECT_NEAR(f.t_singulars[0], 1.0 / std::numbers::sqrt2, 1e-12);
    EXPECT_NEAR(f.t_singulars[1], 0.0, 1e-12);
    EXPECT_NEAR(f.t_singulars[2], 0.0, 1e-12);
    EXPECT_EQ(f.t_det_sign, 0);
  }
  {
    const LUFingerprint f = lu_fingerprint(bell_phi_plus());
    EXPECT_NEAR(f.x_norm, 0.0, 1e-12);
    for (int k = 0; k < 3; ++k) EXPECT_NEAR(f.t_singulars[k], 1.0, 1e-12);
    EXPECT_EQ(f.t_det_sign, -1);
  }
}

TEST(LuFingerprint, SigmaMatchesRhoStar) {
  EXPECT_LE(fingerprint_distance(lu_fingerprint(rho_star()),
                                 lu_fingerprint(sigma_star())),
            1e-12);
}

TEST(LuFingerprint, BellPairMatchesItsLocalRotation) {
  // |Phi+> and |Psi-> are locally equivalent (both have singulars {1,1,1})
  EXPECT_LE(fingerprint_distance(lu_fingerprint(bell_phi_plus()),
                                 lu_fingerprint(bell_psi_minus())),
            1e-12);
}

TEST(LuFingerprint, SeparatesInequivalentStates) {
  const double d = fingerprint_distance(lu_fingerprint(werner(0.5)),
                                        lu_fingerprint(werner(0.6)));
  EXPECT_GT(d, 0.05);
  // det-sign mismatch dominates the distance
  const double d2 = fingerprint_distance(lu_fingerprint(bell_phi_plus()),
                                         lu_fingerprint(rho_star()));
  EXPECT_GE(d2, 1.0);
}

TEST(HaarUnitary2, DeterministicAndUnitary) {
  Rng a(42), b(42);
  for (int k = 0; k < 50; ++k) {
    const Mat2c u = haar_unitary2(a);
    const Mat2c w = haar_unitary2(b);
    EXPECT_LE(unitarity_deviation(u), 1e-14);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        EXPECT_EQ(u[i][j].real(), w[i][j].real());
        EXPECT_EQ(u[i][j].imag(), w[i][j].imag());
      }
  }
}

TEST(HaarUnitary2, FirstEntryModulusAveragesToOneHalf) {
  // for Haar on U(2), E|u00|^2 = 1/2
  Rng rng(7);
  double acc = 0.0;
  const int n = 20000;
  for (int k = 0; k < n; ++k) acc += std::norm(haar_unitary2(rng)[0][0]);
  EXPECT_NEAR(acc / n, 0.5, 0.01);
}

TEST(Witness, MapsRhoStarExactlyOntoSigma) {
  EXPECT_LE(unitarity_deviation(rho_sigma_witness_u()), 1e-14);
  EXPECT_LE(unitarity_deviation(rho_sigma_witness_v()), 1e-14);
  const EquivalenceCheck chk = verify_rho_sigma_equivalence(1e-12);
  EXPECT_TRUE(chk.ok);
  EXPECT_LE(chk.residual, 1e-12);
}

TEST(Witness, ColumnsAreTheAdvertisedEigenvectorRatios) {
  // u's columns are the normalized (1 +/- sqrt2, 1) pairs
  const Mat2c u = rho_sigma_witness_u();
  const double s2 = std::numbers::sqrt2;
  EXPECT_NEAR((u[0][0] / u[1][0]).real(), 1.0 + s2, 1e-12);
  EXPECT_NEAR((u[0][1] / u[1][1]).real(), 1.0 - s2, 1e-12);
}

TEST(LuSearch, RecoversBranchEquivalence) {
  // the two appendix branches at k = 2 are related by sigma_x (x) I; the
  // angle search should find some witness with a small residual
  const auto plus = solve_constraints(2.0, AppendixBranch::plus);
  const auto minus = solve_constraints(2.0, AppendixBranch::minus);
  LuSearchOptions opt;
  opt.grid = 6;
  opt.starts = 16;
  const LuSearchResult r =
      lu_equivalent_search(x_state(plus.params), x_state(minus.params), opt);
  EXPECT_TRUE(r.equivalent);
  EXPECT_LE(r.residual, 1e-6);
  EXPECT_LE(unitarity_deviation(r.u), 1e-12);
  EXPECT_LE(unitarity_deviation(r.v), 1e-12);
}

TEST(LuSearch, FingerprintPrefilterShortCircuits) {
  const LuSearchResult r = lu_equivalent_search(werner(0.5), werner(0.6));
  EXPECT_FALSE(r.equivalent);
  EXPECT_TRUE(std::isinf(r.residual));
}

TEST(LuSearch, FindsTheRhoSigmaWitness) {
  LuSearchOptions opt;
  opt.grid = 8;
  opt.starts = 24;
  const LuSearchResult r = lu_equivalent_search(rho_star(), sigma_star(), opt);
  EXPECT_TRUE(r.equivalent);
  EXPECT_LE(r.residual, 1e-6);
}

}  // namespace
