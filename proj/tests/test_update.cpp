#include <cmath>

#include <gtest/gtest.h>

#include "expect_code.hpp"
#include "support.hpp"

using namespace sofup;
using namespace sofup::test;

TEST(Kron, VecConventionAndIdentity) {
  Rng rng(1);
  const Matrix X = rng.normal(3, 2), Y = rng.normal(2, 4), Z = rng.normal(4, 3);
  EXPECT_EQ(vec(X), vec_oracle(X));
  EXPECT_EQ(unvec(vec(X), 3, 2), X);
  EXPECT_LE((kron(X, Y) - kron_oracle(X, Y)).norm(), 0.0);
  // vec(X Y Z) = (Z^T kron X) vec(Y)
  EXPECT_LE((vec(X * Y * Z) - kron(Z.transpose(), X) * vec(Y)).norm(), 1e-12);
}

TEST(Kron, FactorsReproduceH) {
  Rng rng(2);
  for (int t = 0; t < 20; ++t) {
    const Index n = rng.integer(2, 5), m = rng.integer(1, static_cast<int>(n)),
                p = rng.integer(1, static_cast<int>(n));
    const auto [B, C] = random_instance(rng, n, m, p);
    const KroneckerFactors f(B, C);
    const Matrix H = kron_oracle(C.transpose(), B);
    EXPECT_LE((f.U_H() * f.Sigma_omega() * f.V_H().transpose() - H).norm(), 1e-10 * H.norm());
    EXPECT_LE((f.U_H().transpose() * f.U_H() - Matrix::Identity(n * n, n * n)).norm(), 1e-10);
    for (Index k = 1; k < f.sigma().size(); ++k) EXPECT_GE(f.sigma()(k - 1), f.sigma()(k));
    const Matrix D = rng.normal(n, n);
    EXPECT_LE((f.to_range_coords(D) - f.U_H().transpose() * vec(D)).norm(), 1e-10 * D.norm());
    const Vector chi = rng.normal(n * n, 1);
    EXPECT_LE((vec(f.from_range_coords(chi)) - f.U_H() * chi).norm(), 1e-10 * chi.norm());
  }
}

TEST(Projector, IdentityBAndCGiveZero) {
  const Matrix I3 = Matrix::Identity(3, 3);
  const Projector P = Projector::build(I3, I3);
  EXPECT_LE(P.matrix().norm(), 1e-12);
}

TEST(Projector, HandRankOneExample) {
  Matrix B(2, 1), C(1, 2);
  B << 1, 0;
  C << 1, 0;
  const Projector P = Projector::build(B, C);
  Vector e1 = Vector::Zero(4);
  e1(0) = 1;
  EXPECT_LE((P.H() - e1).norm(), 0.0);
  Matrix expected = Matrix::Identity(4, 4);
  expected(0, 0) = 0;
  EXPECT_LE((P.matrix() - expected).norm(), 1e-12);
}

TEST(Projector, InvariantsAndRouteAgreement) {
  Rng rng(3);
  for (int t = 0; t < 40; ++t) {
    const Index n = rng.integer(2, 6), m = rng.integer(1, static_cast<int>(n)),
                p = rng.integer(1, static_cast<int>(n));
    const auto [B, C] = random_instance(rng, n, m, p);
    const Projector proj = Projector::build(B, C);
    const Matrix& P = proj.matrix();
    const Matrix direct = projector_direct(kron_oracle(C.transpose(), B));
    EXPECT_LE((P - direct).norm(), 1e-9);
    EXPECT_LE(proj.route_discrepancy(), 1e-9);
    EXPECT_LE((P - P.transpose()).norm(), 1e-10);
    EXPECT_LE((P * P - P).norm(), 1e-9);
    EXPECT_LE((P * proj.H()).norm(), 1e-9);
    EXPECT_NEAR(P.trace(), double(n * n - m * p), 1e-8);
  }
}

TEST(Projector, ErrorPaths) {
  Rng rng(4);
  EXPECT_CODE(Projector::build(Matrix::Ones(3, 2), rng.normal(1, 3)), ErrorCode::RankDeficient);
  ProjectorOptions small;
  small.max_explicit_n = 3;
  EXPECT_CODE(Projector::build(rng.normal(4, 2), rng.normal(2, 4), small), ErrorCode::DimensionOverflow);
}

TEST(OptimalUpdate, ZeroAndFullCancellation) {
  Rng rng(5);
  const auto [B, C] = random_instance(rng, 4, 2, 3);
  EXPECT_LE(optimal_update(B, C, Matrix::Zero(4, 4)).norm(), 0.0);
  EXPECT_LE(optimal_update_vectorized(B, C, Matrix::Zero(4, 4)).norm(), 0.0);
  EXPECT_LE(optimal_update_svd(B, C, Matrix::Zero(4, 4)).norm(), 0.0);
  const Matrix I = Matrix::Identity(4, 4);
  const Matrix D = rng.normal(4, 4);
  EXPECT_LE((optimal_update(I, I, D) + D).norm(), 1e-12);
  EXPECT_LE((optimal_update_svd(I, I, D) + D).norm(), 1e-12);
  EXPECT_NEAR(residual_cost(I, I, D), 0.0, 1e-20 + 1e-12 * D.squaredNorm());
}

TEST(OptimalUpdate, VecConventionByHand) {
  const Matrix I = Matrix::Identity(2, 2);
  Matrix D(2, 2);
  D << 1, 2, 3, 4;
  Vector expected(4);
  expected << -1, -3, -2, -4;
  EXPECT_LE((optimal_update_vectorized(I, I, D) - expected).norm(), 1e-14);
}

TEST(OptimalUpdate, MatchesNormalEquationsOracle) {
  Rng rng(6);
  const auto [B, C] = random_instance(rng, 5, 2, 3);
  const Matrix D = rng.normal(5, 5);
  const LsqOracle oracle = least_squares_oracle(B, C, D);
  EXPECT_LE((vec(optimal_update(B, C, D)) - oracle.g).norm(), 1e-10);
  EXPECT_NEAR(residual_cost(B, C, D), oracle.cost, 1e-9);
}

TEST(OptimalUpdate, ThreeRoutesAndFirstOrderConditions) {
  Rng rng(7);
  for (int t = 0; t < 100; ++t) {
    const Index n = rng.integer(2, 6), m = rng.integer(1, static_cast<int>(n)),
                p = rng.integer(1, static_cast<int>(n));
    const auto [B, C] = random_instance(rng, n, m, p);
    const Matrix D = rng.normal(n, n);
    const Matrix G1 = optimal_update(B, C, D);
    const Matrix G2 = unvec(optimal_update_vectorized(B, C, D), m, p);
    const Matrix G3 = optimal_update_svd(B, C, D);
    EXPECT_LE((G1 - G2).norm(), 1e-9);
    EXPECT_LE((G1 - G3).norm(), 1e-9);
    EXPECT_LE((G2 - G3).norm(), 1e-9);
    const Matrix H = kron_oracle(C.transpose(), B);
    EXPECT_LE((H.transpose() * (H * vec(G1) + vec(D))).norm(), 1e-8);
    const Projector P = Projector::build(B, C);
    EXPECT_NEAR(update_cost(B, C, G1, D), P.quadratic_form(D), 1e-9);
  }
}

TEST(OptimalUpdate, GlobalOptimalityAgainstRandomGains) {
  Rng rng(8);
  for (int t = 0; t < 10; ++t) {
    const Index n = rng.integer(3, 5), m = rng.integer(1, 3), p = rng.integer(1, 3);
    ASSERT_LE(m * p, 12);
    const auto [B, C] = random_instance(rng, n, m, p);
    const Matrix D = rng.normal(n, n);
    const double J = residual_cost(B, C, D);
    EXPECT_NEAR(J, least_squares_oracle(B, C, D).cost, 1e-9);
    const Matrix G = optimal_update(B, C, D);
    for (int k = 0; k < 1000; ++k) {
      const Matrix Gr = G + rng.uniform(0.0, 2.0) * rng.normal(m, p);
      EXPECT_LE(J, update_cost(B, C, Gr, D) + 1e-12);
    }
  }
}

TEST(ResidualCost, HandExampleAndImplicitRoute) {
  Matrix B(2, 1), C(1, 2);
  B << 1, 0;
  C << 1, 0;
  EXPECT_NEAR(residual_cost(B, C, Matrix::Identity(2, 2)), 1.0, 1e-14);
  EXPECT_EQ(residual_cost(B, C, Matrix::Zero(2, 2)), 0.0);
  // Explicit cap below n forces the implicit evaluation.
  Rng rng(9);
  const auto [B2, C2] = random_instance(rng, 6, 2, 3);
  const Matrix D = rng.normal(6, 6);
  EXPECT_NEAR(residual_cost(B2, C2, D, 2), residual_cost(B2, C2, D), 1e-10);
}

TEST(ResidualCost, LargeNStaysImplicit) {
  Rng rng(10);
  const auto [B, C] = random_instance(rng, 80, 5, 6);
  const Matrix D = rng.normal(80, 80);
  const double J = residual_cost(B, C, D);
  EXPECT_NEAR(J, update_cost(B, C, optimal_update(B, C, D), D), 1e-8 * D.squaredNorm());
}

TEST(OptimalUpdate, RankDeficientInputs) {
  Rng rng(11);
  const Matrix D = rng.normal(3, 3);
  EXPECT_CODE(optimal_update(Matrix::Ones(3, 2), rng.normal(1, 3), D), ErrorCode::RankDeficient);
  EXPECT_CODE(optimal_update_svd(rng.normal(3, 1), Matrix::Ones(2, 3), D), ErrorCode::RankDeficient);
  EXPECT_CODE(optimal_update_vectorized(Matrix::Ones(3, 2), rng.normal(1, 3), D), ErrorCode::RankDeficient);
}

TEST(ApplyUpdate, ZeroDeltaKeepsNominal) {
  Rng rng(12);
  const SymmetricFixture fx = symmetric_fixture(rng, 4, 2, 2);
  const UpdateResult r = apply_update(fx.model, fx.F, Matrix::Zero(4, 4));
  EXPECT_EQ(r.F_updated.F, fx.F.F);
  EXPECT_EQ(r.J_star, 0.0);
  EXPECT_NEAR(r.alpha_closed, spectral_abscissa(fx.S), 1e-12);
  EXPECT_FALSE(r.certified);
  EXPECT_EQ(r.F_updated.provenance, GainProvenance::updated);
}

TEST(ApplyUpdate, AdditiveIdentityAndCostInvariant) {
  Rng rng(13);
  const SymmetricFixture fx = symmetric_fixture(rng, 5, 2, 3);
  const Matrix D = 0.3 * rng.normal(5, 5);
  const UpdateResult r = apply_update(fx.model, fx.F, D, 0.4);
  EXPECT_EQ(r.F_updated.F, fx.F.F + r.G_star);
  const double direct = (fx.model.B() * r.G_star * fx.model.C() + D).squaredNorm();
  EXPECT_NEAR(r.J_star, direct, 1e-8 * std::max(1.0, direct));
  EXPECT_EQ(r.certified, std::sqrt(r.J_star) < 0.4);
}

TEST(ApplyUpdate, FullCancellationRestoresNominalAbscissa) {
  Rng rng(14);
  const Matrix I = Matrix::Identity(4, 4);
  for (int t = 0; t < 20; ++t) {
    const Matrix A = rng.stable(4, -0.3) - I;
    const StateSpaceModel model(A, I, I);
    const GainMatrix F{I, GainProvenance::nominal};
    const UpdateResult r = apply_update(model, F, rng.normal(4, 4));
    EXPECT_NEAR(r.alpha_closed, spectral_abscissa(A + I), 1e-9);
  }
}

TEST(ApplyUpdate, CertificateSoundOnSymmetricClosedLoops) {
  Rng rng(15);
  int certified = 0;
  for (int t = 0; t < 200; ++t) {
    const SymmetricFixture fx = symmetric_fixture(rng, 4, 2, 2);
    const double beta = symmetric_exact(fx.S);
    const Matrix D = rng.uniform(0.1, 3.0) * rng.normal(4, 4) / 4.0;
    const UpdateResult r = apply_update(fx.model, fx.F, D, beta);
    if (r.certified) {
      ++certified;
      EXPECT_TRUE(is_hurwitz(closed_loop(fx.model, r.F_updated, &D)));
    }
  }
  EXPECT_GT(certified, 20);
}

TEST(ApplyUpdate, DimensionMismatch) {
  Rng rng(16);
  const SymmetricFixture fx = symmetric_fixture(rng, 4, 2, 2);
  EXPECT_CODE(apply_update(fx.model, {Matrix::Zero(2, 3)}, Matrix::Zero(4, 4)), ErrorCode::DimensionMismatch);
  EXPECT_CODE(apply_update(fx.model, fx.F, Matrix::Zero(3, 3)), ErrorCode::DimensionMismatch);
}

TEST(ApplyUpdate, PrintedAircraftMatricesAdd) {
  Matrix F_nom(2, 4), G(2, 4), F_upd(2, 4);
  F_nom << 0, 0, 0, -0.5057, 0.7521, 0, -3.0713, 1.1408;
  G << 0.0745, -0.2034, 0.0214, -0.0939, 0.0115, -0.0302, 0.0018, -0.0169;
  F_upd << 0.0745, -0.2034, 0.0214, -0.5996, 0.7636, -0.0302, -3.0695, 1.1239;
  EXPECT_LE((F_nom + G - F_upd).cwiseAbs().maxCoeff(), 1e-4 + 1e-12);
}
