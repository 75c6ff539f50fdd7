#pragma once

// Moment curves d alpha(t) = d alpha_1 + t d alpha_2 + ... + t^{r-1} d alpha_r,
// their limits as t -> 0+, and a numeric harness that checks the closed form
// against reconstruct() along a grid of t values.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "isospec/blowup.hpp"
#include "isospec/errors.hpp"
#include "isospec/partitions.hpp"
#include "isospec/spectral_core.hpp"
#include "isospec/types.hpp"

namespace isospec {

/// Parts of a moment curve; supports partition the spectrum and all weights share one sign.
class MomentCurve {
 public:
  explicit MomentCurve(DistributionSequence parts) : parts_(std::move(parts)) {
    const bool positive = parts_[0].weights()[0] > 0.0;
    for (const Distribution& part : parts_.parts()) {
      if ((part.weights()[0] > 0.0) != positive) throw InvalidInput("moment curve parts must share one weight sign");
    }
  }

  const DistributionSequence& parts() const { return parts_; }
  std::size_t size() const { return parts_.size(); }
  const Spectrum& spectrum() const { return parts_.spectrum(); }

  OrderedPartition partition() const {
    std::vector<IndexSet> blocks;
    for (const Distribution& part : parts_.parts()) {
      blocks.push_back(make_set(std::vector<std::size_t>(part.support().begin(), part.support().end())));
    }
    return OrderedPartition(spectrum().size(), std::move(blocks));
  }

 private:
  DistributionSequence parts_;
};

/// d alpha(t) with full support, rescaled to sup-norm 1 (done in log space so
/// t^{r-1} cannot underflow before the rescale).
inline Distribution moment_curve_eval(const MomentCurve& curve, double t) {
  if (!(t > 0.0 && t < 1.0)) throw InvalidInput("moment curve parameter must lie in (0, 1)");
  const std::size_t d = curve.spectrum().size();
  std::vector<double> logw(d, 0.0);
  const double sign = curve.parts()[0].weights()[0] > 0.0 ? 1.0 : -1.0;
  const double lt = std::log(t);
  for (std::size_t j = 0; j < curve.size(); ++j) {
    const Distribution& part = curve.parts()[j];
    for (std::size_t k = 0; k < part.size(); ++k) {
      logw[part.support()[k]] = std::log(std::abs(part.weights()[k])) + static_cast<double>(j) * lt;
    }
  }
  const double top = *std::max_element(logw.begin(), logw.end());
  std::vector<double> w(d);
  for (std::size_t n = 0; n < d; ++n) {
    w[n] = sign * std::exp(logw[n] - top);
    if (w[n] == 0.0) throw NumericFailure("moment curve weight underflows at t = " + std::to_string(t));
  }
  return Distribution::full(curve.spectrum(), std::move(w));
}

/// w_i(t) = c_i t^{e_i} with c_i > 0, e_i >= 0.
struct ExponentWeights {
  std::vector<double> c;
  std::vector<double> e;

  ExponentWeights(std::vector<double> coeffs, std::vector<double> exponents)
      : c(std::move(coeffs)), e(std::move(exponents)) {
    if (c.empty() || c.size() != e.size()) throw InvalidInput("exponent data needs matching nonempty vectors");
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (!(c[i] > 0.0) || !std::isfinite(c[i])) throw InvalidInput("coefficients must be positive and finite");
      if (!(e[i] >= 0.0) || !std::isfinite(e[i])) throw InvalidInput("exponents must be nonnegative and finite");
    }
  }

  std::size_t size() const { return c.size(); }

  std::vector<double> evaluate(double t) const {
    std::vector<double> w(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) w[i] = c[i] * std::pow(t, e[i]);
    return w;
  }
};

/// Exponent data implied by a moment curve: e_i = (block index of i), c_i = |w_i|.
inline ExponentWeights exponents_of(const MomentCurve& curve) {
  const std::size_t d = curve.spectrum().size();
  std::vector<double> c(d), e(d);
  for (std::size_t j = 0; j < curve.size(); ++j) {
    const Distribution& part = curve.parts()[j];
    for (std::size_t k = 0; k < part.size(); ++k) {
      c[part.support()[k]] = std::abs(part.weights()[k]);
      e[part.support()[k]] = static_cast<double>(j);
    }
  }
  return ExponentWeights(std::move(c), std::move(e));
}

/// Exponent data of the flipped weights: w^F_i proportional to 1 / (C-bar_i w_i),
/// exponents shifted so the smallest is 0.
inline ExponentWeights flip_exponents(const ExponentWeights& ew, const Spectrum& spectrum) {
  if (ew.size() != spectrum.size()) throw InvalidInput("exponent data and spectrum sizes differ");
  const double top = *std::max_element(ew.e.begin(), ew.e.end());
  std::vector<double> c(ew.size()), e(ew.size());
  for (std::size_t i = 0; i < ew.size(); ++i) {
    c[i] = 1.0 / (c_bar(spectrum, i) * ew.c[i]);
    e[i] = top - ew.e[i];
  }
  return ExponentWeights(std::move(c), std::move(e));
}

/// Limiting partition of c_i t^{e_i} as t -> 0+: indices grouped by equal
/// exponent (within tol), smaller exponents first.
inline OrderedPartition classify_stable(const ExponentWeights& ew, double tol = 0.0) {
  if (!(tol >= 0.0)) throw InvalidInput("grouping tolerance must be nonnegative");
  std::vector<std::size_t> order(ew.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return ew.e[a] < ew.e[b]; });
  std::vector<IndexSet> blocks;
  double anchor = 0.0;
  for (std::size_t k = 0; k < order.size(); ++k) {
    const std::size_t i = order[k];
    if (k == 0 || ew.e[i] - anchor > tol) {
      blocks.push_back(0);
      anchor = ew.e[i];
    }
    blocks.back() |= singleton(i);
  }
  return OrderedPartition(ew.size(), std::move(blocks));
}

/// d alpha_1 (+) p^2_{d alpha_1} d alpha_2 (+) ... where p_{d beta} is the
/// monic polynomial vanishing on supp d beta; each part normalized.
inline DistributionSequence limit_of_moment_curve(const MomentCurve& curve) {
  const Spectrum& spec = curve.spectrum();
  std::vector<Distribution> parts;
  IndexSet earlier = 0;
  for (const Distribution& part : curve.parts().parts()) {
    std::vector<double> w(part.size());
    IndexSet here = 0;
    for (std::size_t k = 0; k < part.size(); ++k) {
      const std::size_t n = part.support()[k];
      w[k] = c_constant(spec, earlier, n) * part.weights()[k];
      here |= singleton(n);
    }
    parts.push_back(Distribution(spec, std::vector<std::size_t>(part.support().begin(), part.support().end()),
                                 std::move(w))
                        .normalized());
    earlier |= here;
  }
  return DistributionSequence(std::move(parts));
}

/// A moment curve whose limit is seq: each later part divided by the same
/// squared polynomial that limit_of_moment_curve multiplies in.
inline MomentCurve moment_curve_towards(const DistributionSequence& seq) {
  const Spectrum& spec = seq.spectrum();
  std::vector<Distribution> parts;
  IndexSet earlier = 0;
  for (const Distribution& part : seq.parts()) {
    const auto nw = part.normalized_weights();
    std::vector<double> w(part.size());
    IndexSet here = 0;
    for (std::size_t k = 0; k < part.size(); ++k) {
      const std::size_t n = part.support()[k];
      w[k] = nw[k] / c_constant(spec, earlier, n);
      here |= singleton(n);
    }
    parts.emplace_back(spec, std::vector<std::size_t>(part.support().begin(), part.support().end()), std::move(w));
    earlier |= here;
  }
  return MomentCurve(DistributionSequence(std::move(parts)));
}

/// Default grid 10^-2, 10^-3, ..., 10^-10.
inline std::vector<double> default_t_grid() {
  std::vector<double> grid;
  for (int k = 2; k <= 10; ++k) grid.push_back(std::pow(10.0, -k));
  return grid;
}

struct LimitReportRow {
  double t = 0.0;
  /// sup-norm distance between reconstruct(d alpha(t)) and the limit matrix.
  double error = 0.0;
  /// Entry f_{2|S_1|}; absent when r = 1.
  std::optional<double> first_coupling;
  /// Entry f_{2d - 2|S_r|}; absent when r = 1.
  std::optional<double> last_coupling;
};

struct LimitReport {
  DistributionSequence limit;
  TridiagonalMatrix limit_matrix;
  /// 1-based entry labels of the tracked couplings (0 when r = 1).
  std::size_t first_label = 0;
  std::size_t last_label = 0;
  std::vector<LimitReportRow> rows;

  bool error_strictly_decreasing() const {
    for (std::size_t k = 1; k < rows.size(); ++k) {
      if (!(rows[k].error < rows[k - 1].error)) return false;
    }
    return true;
  }

  /// (log10 t, log10 E) pairs; rows with E = 0 are skipped.
  std::vector<std::pair<double, double>> plot_data() const {
    std::vector<std::pair<double, double>> out;
    for (const auto& row : rows) {
      if (row.error > 0.0) out.emplace_back(std::log10(row.t), std::log10(row.error));
    }
    return out;
  }
};

inline void check_t_grid(const std::vector<double>& grid) {
  if (grid.empty()) throw InvalidInput("t grid is empty");
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (!(grid[k] > 0.0 && grid[k] < 1.0)) throw InvalidInput("t grid values must lie in (0, 1)");
    if (k > 0 && !(grid[k] < grid[k - 1])) throw InvalidInput("t grid must be strictly decreasing");
  }
}

/// Evaluates reconstruct along the grid and compares with the closed-form limit.
inline LimitReport numeric_limit_report(const MomentCurve& curve, const std::vector<double>& t_grid) {
  check_t_grid(t_grid);
  const std::size_t d = curve.spectrum().size();
  const std::size_t r = curve.size();
  DistributionSequence limit = limit_of_moment_curve(curve);
  TridiagonalMatrix limit_matrix = direct_sum_reconstruct(limit);
  LimitReport report{std::move(limit), std::move(limit_matrix), 0, 0, {}};
  if (r > 1) {
    report.first_label = 2 * curve.parts()[0].size();
    report.last_label = 2 * d - 2 * curve.parts()[r - 1].size();
  }
  for (double t : t_grid) {
    const TridiagonalMatrix j = reconstruct(moment_curve_eval(curve, t));
    LimitReportRow row;
    row.t = t;
    row.error = max_abs_difference(j, report.limit_matrix);
    if (r > 1) {
      row.first_coupling = j.entry(report.first_label);
      row.last_coupling = j.entry(report.last_label);
    }
    report.rows.push_back(row);
  }
  return report;
}

/// Log-log fit of sampled weights w_i(t_k) ~ c_i t_k^{e_i}. Refuses (throws
/// NumericFailure) when any coordinate's fit has R^2 < min_r2. A coordinate
/// whose log spans less than flat_slope times the log span of t has exponent 0
/// and skips the gate, since R^2 is meaningless on flat data. Exponents are
/// shifted so the smallest is 0.
inline ExponentWeights fit_exponents(const std::vector<double>& ts, const std::vector<std::vector<double>>& samples,
                                     double min_r2 = 0.999, double flat_slope = 1e-2) {
  if (ts.size() < 3 || samples.size() != ts.size()) throw InvalidInput("need at least three samples, one per t");
  const std::size_t d = samples[0].size();
  std::vector<double> x(ts.size());
  for (std::size_t k = 0; k < ts.size(); ++k) {
    if (!(ts[k] > 0.0)) throw InvalidInput("sample parameters must be positive");
    if (samples[k].size() != d) throw InvalidInput("samples differ in length");
    x[k] = std::log(ts[k]);
  }
  const double n = static_cast<double>(ts.size());
  const double xm = std::accumulate(x.begin(), x.end(), 0.0) / n;
  double sxx = 0.0;
  for (double v : x) sxx += (v - xm) * (v - xm);
  if (!(sxx > 0.0)) throw InvalidInput("sample parameters must not all coincide");
  const double span_x = *std::max_element(x.begin(), x.end()) - *std::min_element(x.begin(), x.end());

  std::vector<double> c(d), e(d);
  for (std::size_t i = 0; i < d; ++i) {
    std::vector<double> y(ts.size());
    for (std::size_t k = 0; k < ts.size(); ++k) {
      const double w = std::abs(samples[k][i]);
      if (!(w > 0.0) || !std::isfinite(w)) throw NumericFailure("sampled weight is zero or non-finite");
      y[k] = std::log(w);
    }
    const double ym = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxy = 0.0, syy = 0.0;
    for (std::size_t k = 0; k < y.size(); ++k) {
      sxy += (x[k] - xm) * (y[k] - ym);
      syy += (y[k] - ym) * (y[k] - ym);
    }
    const double slope = sxy / sxx;
    const double intercept = ym - slope * xm;
    double ssr = 0.0;
    for (std::size_t k = 0; k < y.size(); ++k) {
      const double res = y[k] - (intercept + slope * x[k]);
      ssr += res * res;
    }
    const double span_y = *std::max_element(y.begin(), y.end()) - *std::min_element(y.begin(), y.end());
    const bool flat = span_y <= flat_slope * span_x;
    const double r2 = flat ? 1.0 : 1.0 - ssr / syy;
    if (r2 < min_r2) {
      throw NumericFailure("coordinate " + std::to_string(i + 1) + " does not follow a power law (R^2 = " +
                           std::to_string(r2) + ")");
    }
    c[i] = std::exp(flat ? ym : intercept);
    e[i] = flat ? 0.0 : slope;
  }
  const double low = *std::min_element(e.begin(), e.end());
  for (double& v : e) v = std::max(0.0, v - low);
  return ExponentWeights(std::move(c), std::move(e));
}

/// Affine-normalized rho image of d alpha(t), as a one-part sequence.
inline BlowupPoint blowup_along_curve(const MomentCurve& curve, double t) {
  return normalize_affine(rho(DistributionSequence({moment_curve_eval(curve, t)})));
}

}  // namespace isospec
