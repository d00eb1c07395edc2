#include "qgd/xmax.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "qgd/discord.hpp"
#include "qgd/lu.hpp"
#include "qgd/separability.hpp"

namespace {

using namespace qgd;

constexpr double kSqrt2 = std::numbers::sqrt2;

TEST(FAppendix, KnownValues) {
  EXPECT_NEAR(f_appendix(1.0), 0.125, 1e-16);
  EXPECT_NEAR(f_appendix(2.0), 10.0 / 81.0, 1e-15);
  EXPECT_NEAR(f_appendix(0.5), 0.5 * 1.25 / std::pow(1.5, 4), 1e-15);
  // symmetry under k -> 1/k
  for (double k : {0.2, 0.7, 3.0, 11.0})
    EXPECT_NEAR(f_appendix(k), f_appendix(1.0 / k), 1e-14);
  EXPECT_THROW(f_appendix(0.0), DomainError);
  EXPECT_THROW(f_appendix(-1.0), DomainError);
}

TEST(FAppendix, DerivativeMatchesFiniteDifference) {
  for (double k : {0.1, 0.4, 0.9, 1.0, 1.1, 2.5, 8.0}) {
    const double fd = oracles::fd_derivative([](double t) { return f_appendix(t); },
                                             k, 1e-4);
    EXPECT_NEAR(f_appendix_derivative(k), fd, 1e-10) << "k=" << k;
  }
  // sign structure: increasing below 1, stationary at 1, decreasing above
  EXPECT_GT(f_appendix_derivative(0.5), 0.0);
  EXPECT_NEAR(f_appendix_derivative(1.0), 0.0, 1e-16);
  EXPECT_LT(f_appendix_derivative(2.0), 0.0);
}

TEST(FAppendix, QuarticFlankNearMaximum) {
  // f(1+h) = 1/8 - h^4/128 + O(h^5); the plateau is quartic, not quadratic
  for (double h : {1e-2, 3e-2, 1e-1}) {
    const double drop = 0.125 - f_appendix(1.0 + h);
    EXPECT_NEAR(drop, std::pow(h, 4) / 128.0, std::pow(h, 5));
  }
}

TEST(FAppendix, FourthDerivativeAtOne) {
  const double f4 = oracles::fd_fourth_derivative(
      [](double t) { return f_appendix(t); }, 1.0, 0.01);
  EXPECT_NEAR(f4, -3.0 / 16.0, 1e-5);
}

TEST(MaximizeF, FindsKStarToTightTolerance) {
  const MaximizeResult r = maximize_f(1e-12);
  EXPECT_NEAR(r.k_star, 1.0, 1e-10);
  EXPECT_NEAR(r.f_star, 0.125, 1e-15);
  EXPECT_GT(r.iterations, 0);
}

TEST(MaximizeF, AgreesWithValueOnlyOracles) {
  // two independent maximizers that never see the derivative
  const MaximizeResult r = maximize_f(1e-12);
  const double golden = oracles::golden_section_max(
      [](double k) { return f_appendix(k); }, 0.01, 100.0, 1e-10);
  const double dense = oracles::dense_grid_max(
      [](double k) { return f_appendix(k); }, 0.5, 2.0, 200001);
  // the quartic plateau limits value-only localization of k; values are sharp
  EXPECT_NEAR(golden, r.k_star, 2e-3);
  EXPECT_NEAR(dense, r.k_star, 2e-3);
  EXPECT_NEAR(f_appendix(golden), r.f_star, 1e-12);
  EXPECT_NEAR(f_appendix(dense), r.f_star, 1e-12);
}

TEST(SolveConstraints, KEqualsOneRecoversExtremalState) {
  const AppendixSolution sol = solve_constraints(1.0, AppendixBranch::plus);
  const XStateParams want{(2.0 + kSqrt2) / 8.0, (2.0 + kSqrt2) / 8.0,
                          (2.0 - kSqrt2) / 8.0, (2.0 - kSqrt2) / 8.0,
                          1.0 / (4.0 * kSqrt2), 1.0 / (4.0 * kSqrt2)};
  EXPECT_NEAR(sol.params.a, want.a, 1e-15);
  EXPECT_NEAR(sol.params.b, want.b, 1e-15);
  EXPECT_NEAR(sol.params.c, want.c, 1e-15);
  EXPECT_NEAR(sol.params.d, want.d, 1e-15);
  EXPECT_NEAR(sol.params.p, want.p, 1e-15);
  EXPECT_NEAR(sol.params.q, want.q, 1e-15);
  EXPECT_NEAR(sol.discord, 0.25, 1e-14);
}

TEST(SolveConstraints, BranchesAreMirrorImages) {
  for (double k : {0.3, 1.0, 1.7, 5.0}) {
    const auto plus = solve_constraints(k, AppendixBranch::plus);
    const auto minus = solve_constraints(k, AppendixBranch::minus);
    // the minus branch swaps which diagonal pair carries the larger weight
    EXPECT_NEAR(plus.params.a, minus.params.c, 1e-15);
    EXPECT_NEAR(plus.params.b, minus.params.d, 1e-15);
    EXPECT_NEAR(plus.params.c, minus.params.a, 1e-15);
    EXPECT_NEAR(plus.params.d, minus.params.b, 1e-15);
    EXPECT_NEAR(plus.params.p, minus.params.p, 1e-15);
    EXPECT_NEAR(plus.params.q, minus.params.q, 1e-15);
    EXPECT_NEAR(plus.discord, minus.discord, 1e-14);
  }
}

TEST(SolveConstraints, BranchDiscordEqualsTwiceF) {
  for (double k : {0.2, 0.5, 1.0, 1.5, 3.0, 10.0}) {
    const auto sol = solve_constraints(k, AppendixBranch::plus);
    EXPECT_NEAR(sol.discord, 2.0 * f_appendix(k), 1e-12) << "k=" << k;
    // the constrained family is separable and saturates its own coherence cap
    validate(sol.params);
    EXPECT_TRUE(x_state_separable(sol.params));
    EXPECT_NEAR(sol.params.p * sol.params.p, sol.params.a * sol.params.d,
                1e-15);
  }
}

TEST(SolveConstraints, SolutionsArePhysical) {
  for (double k : {0.05, 0.33, 1.0, 2.2, 40.0}) {
    for (auto branch : {AppendixBranch::plus, AppendixBranch::minus}) {
      const auto sol = solve_constraints(k, branch);
      EXPECT_NO_THROW(validate(sol.params));
      EXPECT_NO_THROW(x_state(sol.params));
      const double sum =
          sol.params.a + sol.params.b + sol.params.c + sol.params.d;
      EXPECT_NEAR(sum, 1.0, 1e-14);
    }
  }
  EXPECT_THROW(solve_constraints(0.0, AppendixBranch::plus), DomainError);
  EXPECT_THROW(solve_constraints(-2.0, AppendixBranch::plus), DomainError);
}

TEST(SolveConstraints, MinusBranchIsLocallyEquivalentToPlus) {
  // conjugation by sigma_x (x) I maps one branch onto the other exactly
  const double k = 2.0;
  const auto plus = solve_constraints(k, AppendixBranch::plus);
  const auto minus = solve_constraints(k, AppendixBranch::minus);
  const Mat2c sx{{{cplx(0, 0), cplx(1, 0)}, {cplx(1, 0), cplx(0, 0)}}};
  const DensityMatrix mapped =
      apply_local_unitary(x_state(plus.params), sx, identity2());
  EXPECT_LE(frob(sub(mapped.matrix(), x_state_matrix(minus.params))), 1e-15);
}

TEST(MaxSeparableXDiscord, IsExactlyOneQuarter) {
  const XMaxResult r = max_separable_x_discord();
  EXPECT_NEAR(r.value, 0.25, 1e-12);
  ASSERT_EQ(r.states.size(), 2u);
  const XStateParams star = rho_star_params();
  for (const auto& s : r.states) {
    EXPECT_NEAR(s.params.a + s.params.c, star.a + star.c, 1e-10);
    EXPECT_NEAR(s.params.p, star.p, 1e-10);
    EXPECT_NEAR(s.discord, 0.25, 1e-12);
    EXPECT_TRUE(x_state_separable(s.params));
  }
  // plus branch is the extremal state itself
  EXPECT_NEAR(r.states[0].params.a, star.a, 1e-8);
  EXPECT_NEAR(r.states[0].params.d, star.d, 1e-8);
}

TEST(GridCertify, FrozenReferenceValues) {
  // locked-in values from an independent scripted evaluation of the same grid
  const GridCertifyResult g10 = grid_certify(10, GridMode::full);
  EXPECT_NEAR(g10.max_found, 0.20060000000000008, 1e-15);
  const GridCertifyResult r10 = grid_certify(10, GridMode::reduced);
  EXPECT_LE(r10.max_found, g10.max_found + 1e-15);
}

TEST(GridCertify, ReducedIsRestrictionOfFull) {
  // the pinned p = q = m points are a subset of the full sweep, so the
  // reduced maximum can never exceed the full one
  for (int n : {6, 9, 14}) {
    const auto full = grid_certify(n, GridMode::full);
    const auto red = grid_certify(n, GridMode::reduced);
    EXPECT_LE(red.max_found, full.max_found + 1e-15);
    EXPECT_LT(red.evaluated, full.evaluated);
    EXPECT_LE(full.max_found, 0.25 + 1e-12);
  }
  // yet the restriction still approaches the same bound as the grid refines:
  // at n = 40 the best cell (a = b = 0.425, c = d = 0.075) already gives 0.245
  const auto red40 = grid_certify(40, GridMode::reduced);
  EXPECT_GE(red40.max_found, 0.244);
  EXPECT_LE(red40.max_found, 0.25 + 1e-12);
}

TEST(GridCertify, EvaluationCountMatchesCombinatorics) {
  // full mode: C(n+3,3) simplex points, each with (n+1)^2 coherence pairs
  for (int n : {4, 7, 10}) {
    const auto g = grid_certify(n, GridMode::full);
    const std::uint64_t simplex =
        static_cast<std::uint64_t>(n + 3) * (n + 2) * (n + 1) / 6;
    EXPECT_EQ(g.evaluated,
              simplex * static_cast<std::uint64_t>(n + 1) * (n + 1));
  }
  EXPECT_THROW(grid_certify(0), DomainError);
}

TEST(GridCertify, ArgmaxIsValidSeparableXState) {
  const auto g = grid_certify(12, GridMode::full);
  EXPECT_NO_THROW(validate(g.argmax));
  EXPECT_TRUE(x_state_separable(g.argmax, 1e-9));
  EXPECT_NEAR(geometric_discord(x_state_bloch(g.argmax)), g.max_found, 1e-12);
}

TEST(GridCertify, ThreadCountDoesNotChangeTheResult) {
  const auto one = grid_certify(12, GridMode::full, 1);
  const auto three = grid_certify(12, GridMode::full, 3);
  const auto seven = grid_certify(12, GridMode::full, 7);
  EXPECT_EQ(one.max_found, three.max_found);
  EXPECT_EQ(one.max_found, seven.max_found);
  EXPECT_EQ(one.evaluated, three.evaluated);
  EXPECT_EQ(one.evaluated, seven.evaluated);
  EXPECT_EQ(one.argmax.a, three.argmax.a);
  EXPECT_EQ(one.argmax.p, seven.argmax.p);
  EXPECT_EQ(one.argmax.q, seven.argmax.q);
}

TEST(GridCertify, MaxGrowsTowardTheBoundAsTheGridRefines) {
  double prev = 0.0;
  for (int n : {5, 10, 20}) {
    const auto g = grid_certify(n, GridMode::full);
    EXPECT_GE(g.max_found, prev - 1e-15);
    prev = g.max_found;
  }
  EXPECT_GT(prev, 0.22);
  EXPECT_LE(prev, 0.25 + 1e-12);
}

}  // namespace
