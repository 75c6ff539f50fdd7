#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "isospec/limits.hpp"

using namespace isospec;

namespace {

MomentCurve splitting_curve() {
  const Spectrum spec({0.0, 1.0, 2.0});
  return MomentCurve(DistributionSequence({Distribution(spec, {0}, {1.0}), Distribution(spec, {1, 2}, {1.0, 1.0})}));
}

}  // namespace

TEST(MomentCurve, Evaluation) {
  const auto w = moment_curve_eval(splitting_curve(), 0.25);
  EXPECT_DOUBLE_EQ(w.weights()[0], 1.0);
  EXPECT_DOUBLE_EQ(w.weights()[1], 0.25);
  EXPECT_DOUBLE_EQ(w.weights()[2], 0.25);
  EXPECT_THROW(moment_curve_eval(splitting_curve(), 0.0), InvalidInput);
  EXPECT_THROW(moment_curve_eval(splitting_curve(), 1.0), InvalidInput);
}

TEST(MomentCurve, DeepTailsDoNotUnderflow) {
  std::vector<double> x(6);
  std::vector<Distribution> parts;
  for (std::size_t k = 0; k < 6; ++k) x[k] = static_cast<double>(k);
  const Spectrum spec(x);
  for (std::size_t k = 0; k < 6; ++k) parts.emplace_back(spec, std::vector<std::size_t>{k}, std::vector<double>{1.0});
  const auto w = moment_curve_eval(MomentCurve(DistributionSequence(parts)), 1e-50);
  EXPECT_GT(w.weights()[5], 0.0);
}

TEST(MomentCurve, RejectsMixedSigns) {
  const Spectrum spec({0.0, 1.0});
  EXPECT_THROW(MomentCurve(DistributionSequence({Distribution(spec, {0}, {1.0}), Distribution(spec, {1}, {-1.0})})),
               InvalidInput);
}

TEST(Limit, SplittingExampleExact) {
  const Spectrum spec({0.0, 1.0, 2.0});
  const DistributionSequence want({Distribution(spec, {0}, {1.0}), Distribution(spec, {1, 2}, {1.0, 4.0})});
  EXPECT_EQ(limit_of_moment_curve(splitting_curve()), want);
}

TEST(Limit, TwoPointClosedForm) {
  const Spectrum spec({0.0, 1.0});
  const MomentCurve curve(DistributionSequence({Distribution(spec, {0}, {1.0}), Distribution(spec, {1}, {1.0})}));
  for (double t : {1e-2, 1e-4, 1e-6}) {
    const auto j = reconstruct(moment_curve_eval(curve, t));
    EXPECT_NEAR(j.diag()[0], t / (1 + t), 1e-15);
    EXPECT_NEAR(j.offdiag()[0], std::sqrt(t) / (1 + t), 1e-15);
    EXPECT_NEAR(j.diag()[1], 1.0 / (1 + t), 1e-15);
  }
  const auto rep = numeric_limit_report(curve, default_t_grid());
  EXPECT_EQ(rep.limit_matrix, TridiagonalMatrix({0.0, 1.0}, {0.0}));
  EXPECT_TRUE(rep.error_strictly_decreasing());
}

TEST(Limit, SingleBlockCurveIsConstant) {
  const Spectrum spec({0.0, 1.0, 3.0});
  const MomentCurve curve(DistributionSequence({Distribution::full(spec, {0.2, 0.3, 0.5})}));
  const auto rep = numeric_limit_report(curve, default_t_grid());
  EXPECT_EQ(rep.first_label, 0u);
  for (const auto& row : rep.rows) {
    EXPECT_LT(row.error, 1e-14);
    EXPECT_FALSE(row.first_coupling.has_value());
  }
}

TEST(Limit, ReportOnSplittingExample) {
  const auto rep = numeric_limit_report(splitting_curve(), {1e-2, 1e-4, 1e-6, 1e-8, 1e-10});
  EXPECT_TRUE(rep.error_strictly_decreasing());
  EXPECT_LT(rep.rows.back().error, 1e-3);
  EXPECT_EQ(rep.first_label, 2u);
  EXPECT_EQ(rep.last_label, 2u);
  EXPECT_NEAR(rep.limit_matrix.diag()[1], 1.8, 1e-15);
  EXPECT_NEAR(rep.limit_matrix.offdiag()[1], 0.4, 1e-15);
  EXPECT_NEAR(rep.limit_matrix.diag()[2], 1.2, 1e-15);
  // Couplings decay like sqrt(t): two decades of t give one decade of E.
  for (std::size_t k = 1; k < rep.rows.size(); ++k) {
    EXPECT_NEAR(rep.rows[k - 1].error / rep.rows[k].error, 10.0, 0.5);
  }
  const auto plot = rep.plot_data();
  ASSERT_EQ(plot.size(), 5u);
  EXPECT_DOUBLE_EQ(plot[0].first, -2.0);
}

TEST(Limit, GridValidation) {
  EXPECT_THROW(check_t_grid({}), InvalidInput);
  EXPECT_THROW(check_t_grid({1e-2, 1e-2}), InvalidInput);
  EXPECT_THROW(check_t_grid({1e-4, 1e-2}), InvalidInput);
  EXPECT_THROW(check_t_grid({1.5}), InvalidInput);
}

TEST(Limit, TowardsInvertsLimit) {
  const Spectrum spec({-1.0, 0.0, 2.0, 3.5});
  const DistributionSequence seq({Distribution(spec, {2}, {1.0}), Distribution(spec, {0, 3}, {0.3, 0.7}),
                                  Distribution(spec, {1}, {1.0})});
  EXPECT_LT(sequence_distance(limit_of_moment_curve(moment_curve_towards(seq)), seq), 1e-14);
}

TEST(Limit, AgreesWithBlowupLimit) {
  const MomentCurve curve = splitting_curve();
  const auto lim = limit_of_moment_curve(curve);
  EXPECT_LT(point_distance(blowup_along_curve(curve, 1e-8), normalize_affine(rho(lim))), 1e-6);
  EXPECT_LT(sequence_distance(pi(blowup_along_curve(curve, 1e-14)), lim), 1e-12);
}

TEST(Stable, ClassifyAndFlip) {
  const ExponentWeights ew({1.0, 2.0, 3.0, 4.0}, {1.0, 0.0, 2.0, 0.0});
  const OrderedPartition p = classify_stable(ew);
  EXPECT_EQ(p, OrderedPartition(4, {0b1010, 0b0001, 0b0100}));
  const Spectrum spec({0.0, 1.0, 2.0, 3.0});
  EXPECT_EQ(classify_stable(flip_exponents(ew, spec)), OrderedPartition(4, {0b0100, 0b0001, 0b1010}));
  EXPECT_EQ(classify_stable(ExponentWeights({1.0, 1.0}, {0.0, 0.05}), 0.1), OrderedPartition::trivial(2));
  EXPECT_THROW(ExponentWeights({1.0}, {-1.0}), InvalidInput);
}

TEST(Stable, ExponentsOfCurve) {
  EXPECT_EQ(classify_stable(exponents_of(splitting_curve())), splitting_curve().partition());
}

TEST(Fit, RecoversPowerLaws) {
  std::vector<double> ts;
  std::vector<std::vector<double>> samples;
  for (double t = 1e-2; t > 1e-9; t /= 10.0) {
    ts.push_back(t);
    samples.push_back({2.0, 3.0 * t, 0.5 * t * t});
  }
  const auto ew = fit_exponents(ts, samples);
  EXPECT_NEAR(ew.e[0], 0.0, 1e-12);
  EXPECT_NEAR(ew.e[1], 1.0, 1e-12);
  EXPECT_NEAR(ew.e[2], 2.0, 1e-12);
  EXPECT_NEAR(ew.c[1], 3.0, 1e-9);
}

TEST(Fit, RefusesNonPowerLaw) {
  std::vector<double> ts;
  std::vector<std::vector<double>> samples;
  for (double t = 1e-1; t > 1e-9; t /= 10.0) {
    ts.push_back(t);
    samples.push_back({1.0, t + std::pow(t, 3.0) * 1e12});
  }
  EXPECT_THROW(fit_exponents(ts, samples), NumericFailure);
}
