#include <gtest/gtest.h>

#include <Eigen/Dense>

#include <cmath>
#include <random>
#include <vector>

#include "isospec/spectral_core.hpp"

using namespace isospec;

namespace {

// Stieltjes procedure in long double on the discrete measure.
std::vector<double> stieltjes_entries(const std::vector<double>& x, std::vector<double> w) {
  const std::size_t d = x.size();
  long double total = 0;
  for (double v : w) total += v;
  std::vector<long double> prev(d, 0), cur(d, 1);
  long double prev_norm = 1;
  std::vector<double> out;
  for (std::size_t n = 0; n < d; ++n) {
    long double norm = 0, moment = 0;
    for (std::size_t k = 0; k < d; ++k) {
      norm += w[k] / total * cur[k] * cur[k];
      moment += w[k] / total * x[k] * cur[k] * cur[k];
    }
    if (n > 0) out.push_back(static_cast<double>(std::sqrt(norm / prev_norm)));
    const long double a = moment / norm;
    out.push_back(static_cast<double>(a));
    const long double b2 = n > 0 ? norm / prev_norm : 0;
    std::vector<long double> next(d);
    for (std::size_t k = 0; k < d; ++k) next[k] = (x[k] - a) * cur[k] - b2 * prev[k];
    prev = cur;
    cur = next;
    prev_norm = norm;
  }
  return out;
}

// Eigenvalues and squared first eigenvector components from a dense solver.
std::pair<std::vector<double>, std::vector<double>> dense_spectral(const TridiagonalMatrix& t) {
  const auto d = static_cast<Eigen::Index>(t.dimension());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i) m(i, i) = t.diag()[static_cast<std::size_t>(i)];
  for (Eigen::Index i = 0; i + 1 < d; ++i) m(i, i + 1) = m(i + 1, i) = t.offdiag()[static_cast<std::size_t>(i)];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  std::vector<double> ev(static_cast<std::size_t>(d)), w(static_cast<std::size_t>(d));
  for (Eigen::Index k = 0; k < d; ++k) {
    ev[static_cast<std::size_t>(k)] = es.eigenvalues()(k);
    w[static_cast<std::size_t>(k)] = es.eigenvectors()(0, k) * es.eigenvectors()(0, k);
  }
  return {ev, w};
}

Distribution random_distribution(std::mt19937_64& rng, std::size_t d) {
  std::uniform_real_distribution<double> gap(0.2, 1.0), wt(0.05, 1.0);
  std::vector<double> x(d), w(d);
  double v = -1.0;
  for (std::size_t k = 0; k < d; ++k) {
    x[k] = v;
    v += gap(rng);
    w[k] = wt(rng);
  }
  return Distribution::full(Spectrum(x), w);
}

}  // namespace

TEST(Reconstruct, SymmetricTwoPoint) {
  const auto t = reconstruct(Distribution::full(Spectrum({-1.0, 1.0}), {0.5, 0.5}));
  EXPECT_EQ(t, TridiagonalMatrix({0.0, 0.0}, {1.0}));
}

TEST(Reconstruct, SinglePoint) {
  const auto t = reconstruct(Distribution::full(Spectrum({2.5}), {3.0}));
  EXPECT_EQ(t, TridiagonalMatrix({2.5}, {}));
}

TEST(Reconstruct, MatchesStieltjesOracle) {
  std::mt19937_64 rng(11);
  for (std::size_t d = 2; d <= 6; ++d) {
    for (int c = 0; c < 20; ++c) {
      const Distribution w = random_distribution(rng, d);
      const auto got = reconstruct(w).entries();
      const auto want = stieltjes_entries(w.points(), {w.weights().begin(), w.weights().end()});
      ASSERT_EQ(got.size(), want.size());
      for (std::size_t k = 0; k < got.size(); ++k) EXPECT_NEAR(got[k], want[k], 1e-9) << "d=" << d << " k=" << k;
    }
  }
}

TEST(Reconstruct, IgnoresWeightScaleAndSign) {
  const Distribution w = Distribution::full(Spectrum({0.0, 1.0, 3.0}), {0.2, 0.3, 0.5});
  EXPECT_EQ(reconstruct(w.scaled(8.0)), reconstruct(w));
  EXPECT_EQ(reconstruct(w.scaled(-0.25)), reconstruct(w));
}

TEST(Reconstruct, PartialSupportGivesSmallerMatrix) {
  const Distribution w(Spectrum({0.0, 1.0, 2.0}), {1, 2}, {1.0, 4.0});
  const auto t = reconstruct(w);
  EXPECT_EQ(t.dimension(), 2u);
  EXPECT_NEAR(t.diag()[0], 9.0 / 5.0, 1e-15);
  EXPECT_NEAR(t.offdiag()[0], 2.0 / 5.0, 1e-15);
  EXPECT_NEAR(t.diag()[1], 6.0 / 5.0, 1e-15);
}

TEST(Mop, TwoPointPolynomial) {
  const auto ps = mop(Distribution::full(Spectrum({0.0, 1.0}), {0.3, 0.7}));
  const auto p2 = ps.coefficients(2);
  ASSERT_EQ(p2.size(), 3u);
  EXPECT_NEAR(p2[0], 0.0, 1e-15);
  EXPECT_NEAR(p2[1], -1.0, 1e-15);
  EXPECT_NEAR(p2[2], 1.0, 1e-15);
}

TEST(Mop, PnIsLeadingMinorCharacteristicPolynomial) {
  std::mt19937_64 rng(3);
  const Distribution w = random_distribution(rng, 5);
  const auto ps = mop(w);
  const auto t = reconstruct(w);
  for (std::size_t n = 1; n <= 5; ++n) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = t.diag()[i];
    for (std::size_t i = 0; i + 1 < n; ++i) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i + 1)) = t.offdiag()[i];
      m(static_cast<Eigen::Index>(i + 1), static_cast<Eigen::Index>(i)) = t.offdiag()[i];
    }
    for (double x : {-0.7, 0.3, 2.2}) {
      const double det = (x * Eigen::MatrixXd::Identity(m.rows(), m.cols()) - m).determinant();
      EXPECT_NEAR(ps.evaluate(n, x), det, 1e-12 * std::max(1.0, std::abs(det)));
    }
  }
}

TEST(SpectralDistribution, SwapMatrix) {
  const auto d = spectral_distribution(TridiagonalMatrix({0.0, 0.0}, {1.0}));
  ASSERT_EQ(d.size(), 2u);
  EXPECT_NEAR(d.points()[0], -1.0, 1e-15);
  EXPECT_NEAR(d.points()[1], 1.0, 1e-15);
  EXPECT_NEAR(d.weights()[0], 0.5, 1e-15);
  EXPECT_NEAR(d.weights()[1], 0.5, 1e-15);
}

TEST(SpectralDistribution, MatchesDenseEigensolver) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> diag(-1.0, 1.0), off(0.1, 1.0);
  for (std::size_t d = 1; d <= 8; ++d) {
    std::vector<double> a(d), b(d - 1);
    for (double& v : a) v = diag(rng);
    for (double& v : b) v = off(rng);
    const TridiagonalMatrix t(a, b);
    const auto got = spectral_distribution(t);
    const auto [ev, w] = dense_spectral(t);
    for (std::size_t k = 0; k < d; ++k) {
      EXPECT_NEAR(got.points()[k], ev[k], 1e-12);
      EXPECT_NEAR(got.weights()[k], w[k], 1e-10);
    }
  }
}

TEST(SpectralDistribution, RejectsSplitMatrix) {
  EXPECT_THROW(spectral_distribution(TridiagonalMatrix({0.0, 1.0}, {0.0})), InvalidInput);
}

TEST(Eigenvalues, IncludeSplitMatrices) {
  const auto ev = eigenvalues(TridiagonalMatrix({2.0, -1.0, 0.5}, {0.0, 0.0}));
  ASSERT_EQ(ev.size(), 3u);
  EXPECT_DOUBLE_EQ(ev[0], -1.0);
  EXPECT_DOUBLE_EQ(ev[1], 0.5);
  EXPECT_DOUBLE_EQ(ev[2], 2.0);
}

TEST(Flip, WeightsAgainstDirectFormula) {
  const Spectrum spec({0.0, 1.0, 3.0});
  const Distribution w = Distribution::full(spec, {0.2, 0.3, 0.5});
  // p'(lambda)^2 at 0, 1, 3 is 9, 4, 36.
  const std::vector<double> raw{1.0 / (9.0 * 0.2), 1.0 / (4.0 * 0.3), 1.0 / (36.0 * 0.5)};
  const double sum = raw[0] + raw[1] + raw[2];
  const auto f = flip_weights(w);
  for (std::size_t k = 0; k < 3; ++k) EXPECT_NEAR(f.weights()[k], raw[k] / sum, 1e-15);
  EXPECT_DOUBLE_EQ(c_bar(spec, 0), 9.0);
  EXPECT_DOUBLE_EQ(c_bar(spec, 2), 36.0);
}

TEST(Flip, ReversesEntries) {
  std::mt19937_64 rng(9);
  for (std::size_t d = 2; d <= 8; ++d) {
    const Distribution w = random_distribution(rng, d);
    const auto a = reconstruct(w).entries();
    const auto b = reconstruct(flip_weights(w)).entries();
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a[i], b[a.size() - 1 - i], 1e-9);
  }
}

TEST(Flip, NeedsFullSupport) {
  EXPECT_THROW(flip_weights(Distribution(Spectrum({0.0, 1.0}), {0}, {1.0})), InvalidInput);
}

TEST(DirectSum, SplitAndJoin) {
  const auto t = TridiagonalMatrix::from_entries(std::vector<double>{0.0, 0.0, 1.8, 0.4, 1.2});
  const auto blocks = split_blocks(t);
  ASSERT_EQ(blocks.size(), 2u);
  EXPECT_EQ(blocks[0].dimension(), 1u);
  EXPECT_EQ(blocks[1].dimension(), 2u);
  EXPECT_EQ(direct_sum(blocks), t);
  EXPECT_THROW(split_blocks(TridiagonalMatrix({0.0, 0.0}, {-1.0})), InvalidInput);
}

TEST(SignConjugate, FlipsCouplings) {
  const TridiagonalMatrix t({1.0, 2.0, 3.0}, {0.5, 0.25});
  const std::vector<int> eps{1, -1, -1};
  EXPECT_EQ(sign_conjugate(t, eps), TridiagonalMatrix({1.0, 2.0, 3.0}, {-0.5, 0.25}));
  const std::vector<int> bad{1, 0, 1};
  EXPECT_THROW(sign_conjugate(t, bad), InvalidInput);
}

TEST(Types, RejectInvalidInput) {
  EXPECT_THROW(Spectrum({1.0, 1.0}), InvalidInput);
  EXPECT_THROW(Spectrum({2.0, 1.0}), InvalidInput);
  EXPECT_THROW(Spectrum(std::vector<double>{}), InvalidInput);
  const Spectrum spec({0.0, 1.0});
  EXPECT_THROW(Distribution::full(spec, {1.0, -1.0}), InvalidInput);
  EXPECT_THROW(Distribution::full(spec, {1.0, 0.0}), InvalidInput);
  EXPECT_THROW(Distribution(spec, {0, 0}, {1.0, 1.0}), InvalidInput);
  EXPECT_THROW(Distribution(spec, {2}, {1.0}), InvalidInput);
  EXPECT_THROW(TridiagonalMatrix({0.0, 1.0}, {}), InvalidInput);
  EXPECT_THROW(DistributionSequence({Distribution(spec, {0}, {1.0})}), InvalidInput);
}

TEST(Types, DistributionEqualityIsProjective) {
  const Spectrum spec({0.0, 1.0});
  EXPECT_EQ(Distribution::full(spec, {1.0, 3.0}), Distribution::full(spec, {0.25, 0.75}));
  EXPECT_EQ(Distribution::full(spec, {-2.0, -6.0}), Distribution::full(spec, {0.25, 0.75}));
}
