#pragma once

// Value types shared by every module: the fixed spectrum, finitely supported
// distributions on it, ordered sequences of such distributions, and symmetric
// tridiagonal matrices.
//
// Indices into a spectrum are 0-based in the API. Serialized files use 1-based
// indices; the conversion happens in io.hpp only.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "isospec/errors.hpp"

namespace isospec {

/// Strictly increasing finite set of reals (lambda_1 < ... < lambda_d), d >= 1.
class Spectrum {
 public:
  Spectrum() = default;

  explicit Spectrum(std::vector<double> lambdas) : lambdas_(std::move(lambdas)) {
    if (lambdas_.empty()) throw InvalidInput("spectrum must contain at least one point");
    for (std::size_t i = 0; i < lambdas_.size(); ++i) {
      if (!std::isfinite(lambdas_[i])) throw InvalidInput("spectrum contains a non-finite value");
      if (i > 0 && !(lambdas_[i - 1] < lambdas_[i])) {
        throw InvalidInput("spectrum must be strictly increasing (repeated or unsorted point at index " +
                           std::to_string(i) + ")");
      }
    }
  }

  std::size_t size() const { return lambdas_.size(); }
  double operator[](std::size_t i) const { return lambdas_[i]; }
  std::span<const double> values() const { return lambdas_; }
  double diameter() const { return lambdas_.back() - lambdas_.front(); }

  friend bool operator==(const Spectrum&, const Spectrum&) = default;

 private:
  std::vector<double> lambdas_;
};

/// Finitely supported distribution sum_{n in S} w_n delta(lambda - lambda_n).
///
/// Weights are homogeneous coordinates: any nonzero multiple names the same
/// distribution, so equality compares normalized representatives (positive,
/// summing to 1). All weights must be nonzero and share one sign.
class Distribution {
 public:
  Distribution(Spectrum spectrum, std::vector<std::size_t> support, std::vector<double> weights)
      : spectrum_(std::move(spectrum)) {
    if (support.empty()) throw InvalidInput("distribution support must be nonempty");
    if (support.size() != weights.size()) {
      throw InvalidInput("support and weights differ in length (" + std::to_string(support.size()) + " vs " +
                         std::to_string(weights.size()) + ")");
    }
    std::vector<std::size_t> order(support.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return support[a] < support[b]; });
    support_.reserve(support.size());
    weights_.reserve(weights.size());
    for (std::size_t k : order) {
      if (support[k] >= spectrum_.size()) {
        throw InvalidInput("support index " + std::to_string(support[k]) + " outside spectrum of size " +
                           std::to_string(spectrum_.size()));
      }
      if (!support_.empty() && support_.back() == support[k]) {
        throw InvalidInput("repeated support point at index " + std::to_string(support[k]));
      }
      support_.push_back(support[k]);
      weights_.push_back(weights[k]);
    }
    const bool positive = weights_.front() > 0.0;
    for (double w : weights_) {
      if (!std::isfinite(w) || w == 0.0 || (w > 0.0) != positive) {
        throw InvalidInput("distribution weights must be finite, nonzero and of one sign");
      }
    }
  }

  /// Distribution supported on the whole spectrum.
  static Distribution full(Spectrum spectrum, std::vector<double> weights) {
    std::vector<std::size_t> support(spectrum.size());
    std::iota(support.begin(), support.end(), std::size_t{0});
    return Distribution(std::move(spectrum), std::move(support), std::move(weights));
  }

  const Spectrum& spectrum() const { return spectrum_; }
  std::span<const std::size_t> support() const { return support_; }
  std::span<const double> weights() const { return weights_; }
  std::size_t size() const { return support_.size(); }
  bool has_full_support() const { return support_.size() == spectrum_.size(); }

  std::vector<double> points() const {
    std::vector<double> out;
    out.reserve(support_.size());
    for (std::size_t i : support_) out.push_back(spectrum_[i]);
    return out;
  }

  /// Positive representative summing to 1.
  std::vector<double> normalized_weights() const {
    double sum = 0.0;
    for (double w : weights_) sum += w;
    std::vector<double> out(weights_.size());
    for (std::size_t k = 0; k < weights_.size(); ++k) out[k] = weights_[k] / sum;
    return out;
  }

  Distribution normalized() const { return Distribution(spectrum_, support_, normalized_weights()); }

  Distribution scaled(double c) const {
    std::vector<double> w(weights_);
    for (double& x : w) x *= c;
    return Distribution(spectrum_, support_, std::move(w));
  }

  /// Weight attached to spectrum index i; throws if i is not in the support.
  double weight_at(std::size_t i) const {
    auto it = std::lower_bound(support_.begin(), support_.end(), i);
    if (it == support_.end() || *it != i) throw InvalidInput("index " + std::to_string(i) + " not in support");
    return weights_[static_cast<std::size_t>(it - support_.begin())];
  }

  friend bool operator==(const Distribution& a, const Distribution& b) {
    return a.spectrum_ == b.spectrum_ && a.support_ == b.support_ && a.normalized_weights() == b.normalized_weights();
  }

 private:
  Spectrum spectrum_;
  std::vector<std::size_t> support_;
  std::vector<double> weights_;
};

/// Sup-norm distance between normalized weight vectors; infinity when supports differ.
inline double weight_distance(const Distribution& a, const Distribution& b) {
  if (!(a.spectrum() == b.spectrum()) || !std::ranges::equal(a.support(), b.support())) {
    return std::numeric_limits<double>::infinity();
  }
  const auto wa = a.normalized_weights();
  const auto wb = b.normalized_weights();
  double err = 0.0;
  for (std::size_t k = 0; k < wa.size(); ++k) err = std::max(err, std::abs(wa[k] - wb[k]));
  return err;
}

/// Ordered direct sum d alpha_1 (+) ... (+) d alpha_r whose supports partition the spectrum.
class DistributionSequence {
 public:
  explicit DistributionSequence(std::vector<Distribution> parts) : parts_(std::move(parts)) {
    if (parts_.empty()) throw InvalidInput("distribution sequence must have at least one part");
    const Spectrum& spec = parts_.front().spectrum();
    std::vector<bool> seen(spec.size(), false);
    std::size_t covered = 0;
    for (const Distribution& part : parts_) {
      if (!(part.spectrum() == spec)) throw InvalidInput("sequence parts must share one spectrum");
      for (std::size_t i : part.support()) {
        if (seen[i]) throw InvalidInput("sequence supports overlap at index " + std::to_string(i));
        seen[i] = true;
        ++covered;
      }
    }
    if (covered != spec.size()) throw InvalidInput("sequence supports do not cover the spectrum");
  }

  std::span<const Distribution> parts() const { return parts_; }
  const Distribution& operator[](std::size_t j) const { return parts_[j]; }
  std::size_t size() const { return parts_.size(); }
  const Spectrum& spectrum() const { return parts_.front().spectrum(); }

  friend bool operator==(const DistributionSequence&, const DistributionSequence&) = default;

 private:
  std::vector<Distribution> parts_;
};

/// Largest normalized-weight discrepancy over all parts; infinity on shape mismatch.
inline double sequence_distance(const DistributionSequence& a, const DistributionSequence& b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  double err = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) err = std::max(err, weight_distance(a[j], b[j]));
  return err;
}

/// Real symmetric tridiagonal matrix. Entry a_{2k-1} is the k-th diagonal
/// element and a_{2k} the k-th off-diagonal element (1-based labels).
class TridiagonalMatrix {
 public:
  TridiagonalMatrix() = default;

  TridiagonalMatrix(std::vector<double> diag, std::vector<double> offdiag)
      : diag_(std::move(diag)), offdiag_(std::move(offdiag)) {
    if (diag_.empty()) throw InvalidInput("matrix dimension must be at least 1");
    if (offdiag_.size() + 1 != diag_.size()) {
      throw InvalidInput("off-diagonal length must be one less than diagonal length");
    }
    for (double v : diag_) {
      if (!std::isfinite(v)) throw InvalidInput("matrix has a non-finite diagonal entry");
    }
    for (double v : offdiag_) {
      if (!std::isfinite(v)) throw InvalidInput("matrix has a non-finite off-diagonal entry");
    }
  }

  /// From the interleaved sequence (a_1, ..., a_{2d-1}).
  static TridiagonalMatrix from_entries(std::span<const double> entries) {
    if (entries.size() % 2 == 0) throw InvalidInput("entry sequence must have odd length 2d-1");
    std::vector<double> diag, off;
    for (std::size_t k = 0; k < entries.size(); ++k) (k % 2 == 0 ? diag : off).push_back(entries[k]);
    return TridiagonalMatrix(std::move(diag), std::move(off));
  }

  std::size_t dimension() const { return diag_.size(); }
  std::span<const double> diag() const { return diag_; }
  std::span<const double> offdiag() const { return offdiag_; }

  std::vector<double> entries() const {
    std::vector<double> out;
    out.reserve(2 * diag_.size() - 1);
    for (std::size_t k = 0; k < diag_.size(); ++k) {
      out.push_back(diag_[k]);
      if (k < offdiag_.size()) out.push_back(offdiag_[k]);
    }
    return out;
  }

  /// a_i with 1 <= i <= 2d-1.
  double entry(std::size_t i) const {
    if (i < 1 || i > 2 * diag_.size() - 1) throw InvalidInput("entry label out of range");
    return (i % 2 == 1) ? diag_[(i - 1) / 2] : offdiag_[i / 2 - 1];
  }

  bool is_jacobi() const {
    return std::ranges::all_of(offdiag_, [](double b) { return b > 0.0; });
  }
  bool is_closure_member() const {
    return std::ranges::all_of(offdiag_, [](double b) { return b >= 0.0; });
  }

  /// Maximum absolute row sum.
  double inf_norm() const {
    double best = 0.0;
    for (std::size_t k = 0; k < diag_.size(); ++k) {
      double row = std::abs(diag_[k]);
      if (k > 0) row += std::abs(offdiag_[k - 1]);
      if (k < offdiag_.size()) row += std::abs(offdiag_[k]);
      best = std::max(best, row);
    }
    return best;
  }

  friend bool operator==(const TridiagonalMatrix&, const TridiagonalMatrix&) = default;

 private:
  std::vector<double> diag_;
  std::vector<double> offdiag_;
};

/// Entrywise sup-norm distance in the (a_1, ..., a_{2d-1}) coordinates.
inline double max_abs_difference(const TridiagonalMatrix& a, const TridiagonalMatrix& b) {
  if (a.dimension() != b.dimension()) throw InvalidInput("matrix dimensions differ");
  double err = 0.0;
  for (std::size_t k = 0; k < a.dimension(); ++k) err = std::max(err, std::abs(a.diag()[k] - b.diag()[k]));
  for (std::size_t k = 0; k + 1 < a.dimension(); ++k) {
    err = std::max(err, std::abs(a.offdiag()[k] - b.offdiag()[k]));
  }
  return err;
}

}  // namespace isospec
