#pragma once

// The blow-up B^Lambda of the weight simplex. A point carries one homogeneous
// block w^S for every nonempty S in [d], tied together by
//
//   C_i^{S-R} w_j^R w_i^S = C_j^{S-R} w_i^R w_j^S     (R in S; i, j in R)
//
// plus a sign condition inside each block. rho maps a distribution sequence
// to such a point and pi maps it back.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "isospec/errors.hpp"
#include "isospec/partitions.hpp"
#include "isospec/types.hpp"

namespace isospec {

/// BlowupPoint stores 2^d - 1 blocks; keep that bounded.
inline constexpr std::size_t kMaxBlowupDimension = 16;
/// Exhaustive membership checking up to this d; sampled above.
inline constexpr std::size_t kExhaustiveMemberDimension = 8;
/// An entry is zero when |w_n^S| < kZeroThreshold * max |w^S|.
inline constexpr double kZeroThreshold = 1e-9;

/// C_i^S = prod_{n in S} (lambda_n - lambda_i)^2, C_i^{empty} = 1. Requires i not in S.
inline double c_constant(const Spectrum& spectrum, IndexSet s, std::size_t i) {
  if (i >= spectrum.size()) throw InvalidInput("index out of range");
  if (contains(s, i)) throw InvalidInput("c_constant needs i outside S");
  if (!is_subset(s, full_set(spectrum.size()))) throw InvalidInput("set leaves the spectrum");
  double c = 1.0;
  for (std::size_t n : members(s)) {
    const double diff = spectrum[n] - spectrum[i];
    c *= diff * diff;
  }
  return c;
}

/// Total homogeneous coordinates d * 2^{d-1}.
inline std::int64_t coordinate_count(std::size_t d) {
  if (d < 1 || d > 40) throw InvalidInput("d out of range");
  return static_cast<std::int64_t>(d) << (d - 1);
}

/// Projective dimension (d - 2) 2^{d-1} + 1 of the product of the block spaces.
inline std::int64_t ambient_dimension(std::size_t d) {
  if (d < 1 || d > 40) throw InvalidInput("d out of range");
  return (static_cast<std::int64_t>(d) - 2) * (std::int64_t{1} << (d - 1)) + 1;
}

/// One homogeneous block per nonempty subset of [d]. Block w^S lists values
/// for the members of S in increasing index order.
class BlowupPoint {
 public:
  BlowupPoint() = default;

  /// blocks[S] for every mask 1 <= S < 2^d; blocks[0] must be empty.
  BlowupPoint(Spectrum spectrum, std::vector<std::vector<double>> blocks)
      : spectrum_(std::move(spectrum)), blocks_(std::move(blocks)) {
    const std::size_t d = spectrum_.size();
    if (d > kMaxBlowupDimension) throw InvalidInput("blow-up points limited to d <= 16");
    if (blocks_.size() != (std::size_t{1} << d)) throw InvalidInput("expected one block per subset of [d]");
    if (!blocks_[0].empty()) throw InvalidInput("the empty set carries no block");
    for (IndexSet s = 1; s < blocks_.size(); ++s) {
      const auto& b = blocks_[s];
      if (b.size() != set_size(s)) throw InvalidInput("block " + set_to_string(s) + " has the wrong length");
      bool nonzero = false;
      for (double v : b) {
        if (!std::isfinite(v)) throw InvalidInput("block " + set_to_string(s) + " has a non-finite entry");
        nonzero = nonzero || v != 0.0;
      }
      if (!nonzero) throw InvalidInput("block " + set_to_string(s) + " is identically zero");
    }
  }

  const Spectrum& spectrum() const { return spectrum_; }
  std::size_t dimension() const { return spectrum_.size(); }
  std::span<const double> block(IndexSet s) const { return blocks_.at(s); }
  const std::vector<std::vector<double>>& blocks() const { return blocks_; }

  /// w_n^S; throws if n is not in S.
  double value(IndexSet s, std::size_t n) const {
    if (!contains(s, n)) throw InvalidInput("index not in subset");
    return blocks_.at(s)[set_size(s & (singleton(n) - 1))];
  }

  std::size_t entry_count() const {
    std::size_t total = 0;
    for (const auto& b : blocks_) total += b.size();
    return total;
  }

  friend bool operator==(const BlowupPoint&, const BlowupPoint&) = default;

 private:
  Spectrum spectrum_;
  std::vector<std::vector<double>> blocks_;
};

/// Largest coordinate-wise difference between two points.
inline double point_distance(const BlowupPoint& a, const BlowupPoint& b) {
  if (!(a.spectrum() == b.spectrum())) return std::numeric_limits<double>::infinity();
  double err = 0.0;
  for (std::size_t s = 1; s < a.blocks().size(); ++s) {
    for (std::size_t k = 0; k < a.blocks()[s].size(); ++k) {
      err = std::max(err, std::abs(a.blocks()[s][k] - b.blocks()[s][k]));
    }
  }
  return err;
}

/// rho(d alpha_1 (+) ... (+) d alpha_r): with K the chain of the supports and
/// K_i the smallest member containing S, block S has C_n^{K_i - S} w_n^{S_i}
/// at n in S_i and zero elsewhere. Raw part weights are used, so pi(rho(x))
/// reproduces x bit for bit.
inline BlowupPoint rho(const DistributionSequence& seq) {
  const Spectrum& spec = seq.spectrum();
  const std::size_t d = spec.size();
  if (d > kMaxBlowupDimension) throw InvalidInput("rho limited to d <= 16");
  std::vector<IndexSet> supports;
  for (const Distribution& part : seq.parts()) {
    std::vector<std::size_t> idx(part.support().begin(), part.support().end());
    supports.push_back(make_set(idx));
  }
  const Chain chain = to_chain(OrderedPartition(d, supports));

  std::vector<std::vector<double>> blocks(std::size_t{1} << d);
  for (IndexSet s = 1; s < blocks.size(); ++s) {
    const std::size_t i = chain.smallest_containing(s);
    const IndexSet rest = chain[i] & ~s;
    auto& b = blocks[s];
    b.reserve(set_size(s));
    for (std::size_t n : members(s)) {
      b.push_back(contains(supports[i], n) ? c_constant(spec, rest, n) * seq[i].weight_at(n) : 0.0);
    }
  }
  return BlowupPoint(spec, std::move(blocks));
}

struct PhiChain {
  /// phi[n]: the largest S with w_n^S nonzero.
  std::vector<IndexSet> phi;
  Chain chain;
  OrderedPartition partition;
};

namespace detail {

inline bool numerically_nonzero(std::span<const double> block, std::size_t k) {
  double top = 0.0;
  for (double v : block) top = std::max(top, std::abs(v));
  return std::abs(block[k]) >= kZeroThreshold * top;
}

}  // namespace detail

/// phi_w(n) for every n, its range as a chain, and the induced ordered partition.
inline PhiChain phi_chain(const BlowupPoint& pt) {
  const std::size_t d = pt.dimension();
  const IndexSet top = full_set(d);
  PhiChain out;
  out.phi.assign(d, 0);
  for (std::size_t n = 0; n < d; ++n) {
    std::size_t best_size = 0;
    IndexSet best = 0, rival = 0;
    for (IndexSet s = 1; s <= top; ++s) {
      if (!contains(s, n)) continue;
      const std::size_t k = set_size(s & (singleton(n) - 1));
      if (!detail::numerically_nonzero(pt.block(s), k)) continue;
      const std::size_t sz = set_size(s);
      if (sz > best_size) {
        best_size = sz;
        best = s;
        rival = 0;
      } else if (sz == best_size) {
        rival = s;
      }
    }
    if (rival != 0) {
      throw NumericFailure("incomparable maximal sets " + set_to_string(best) + " and " + set_to_string(rival) +
                           " for index " + std::to_string(n + 1));
    }
    out.phi[n] = best;
  }

  std::vector<IndexSet> range(out.phi);
  std::sort(range.begin(), range.end(), [](IndexSet a, IndexSet b) {
    return set_size(a) != set_size(b) ? set_size(a) > set_size(b) : a < b;
  });
  range.erase(std::unique(range.begin(), range.end()), range.end());
  for (std::size_t k = 1; k < range.size(); ++k) {
    if (!is_subset(range[k], range[k - 1]) || range[k] == range[k - 1]) {
      throw NumericFailure("maximal sets " + set_to_string(range[k - 1]) + " and " + set_to_string(range[k]) +
                           " are not nested");
    }
  }
  if (range.front() != top) throw NumericFailure("no index has a nonzero entry in the top block");
  out.chain = Chain(d, range);
  out.partition = to_partition(out.chain);
  for (std::size_t n = 0; n < d; ++n) {
    if (out.phi[n] != out.chain[out.partition.block_of(n)]) {
      throw NumericFailure("preimage of the chain does not match its partition at index " + std::to_string(n + 1));
    }
  }
  return out;
}

/// pi(w) = (w_n^{K_1})_{n in S_1} (+) ... (+) (w_n^{K_r})_{n in S_r}.
inline DistributionSequence pi(const BlowupPoint& pt) {
  const PhiChain pc = phi_chain(pt);
  std::vector<Distribution> parts;
  for (std::size_t j = 0; j < pc.partition.size(); ++j) {
    const IndexSet k = pc.chain[j];
    std::vector<std::size_t> support = members(pc.partition[j]);
    std::vector<double> weights;
    for (std::size_t n : support) weights.push_back(pt.value(k, n));
    parts.emplace_back(pt.spectrum(), std::move(support), std::move(weights));
  }
  return DistributionSequence(std::move(parts));
}

struct MembershipReport {
  bool member = true;
  /// Cross-equation instances evaluated (sampled above kExhaustiveMemberDimension).
  std::size_t instances_checked = 0;
  bool sampled = false;
  double max_residual = 0.0;
  /// First violation found, empty when member.
  std::string violation;

  explicit operator bool() const { return member; }
};

namespace detail {

struct CrossCheck {
  const BlowupPoint& pt;
  const std::vector<std::vector<double>>& normalized;
  const std::vector<std::vector<double>>& sq;
  double tol;
  MembershipReport& report;

  double c_of(IndexSet diff, std::size_t i) const {
    double c = 1.0;
    for (IndexSet m = diff; m != 0; m &= m - 1) c *= sq[min_index(m)][i];
    return c;
  }
  double val(IndexSet s, std::size_t n) const { return normalized[s][set_size(s & (singleton(n) - 1))]; }

  /// Returns false (and records) on violation.
  bool operator()(IndexSet r, IndexSet s, std::size_t i, std::size_t j) {
    ++report.instances_checked;
    const IndexSet diff = s & ~r;
    const double lhs = c_of(diff, i) * val(r, j) * val(s, i);
    const double rhs = c_of(diff, j) * val(r, i) * val(s, j);
    const double scale = std::max(std::abs(lhs), std::abs(rhs));
    const double res = scale > 0.0 ? std::abs(lhs - rhs) / scale : 0.0;
    report.max_residual = std::max(report.max_residual, res);
    if (!(res <= tol)) {
      report.member = false;
      report.violation = "cross equation R=" + set_to_string(r) + " S=" + set_to_string(s) +
                         " i=" + std::to_string(i + 1) + " j=" + std::to_string(j + 1) +
                         " relative residual " + std::to_string(res);
      return false;
    }
    return true;
  }
};

}  // namespace detail

/// Checks the sign condition exactly and the cross equations with relative
/// tolerance tol (residual over the larger product, blocks sup-normalized).
/// All instances are checked for d <= 8; above that a fixed-seed sample of
/// `samples` instances.
inline MembershipReport is_member(const BlowupPoint& pt, double tol, std::size_t samples = 200000) {
  MembershipReport report;
  if (!(tol > 0.0)) throw InvalidInput("tolerance must be positive");
  const std::size_t d = pt.dimension();
  const IndexSet top = full_set(d);

  std::vector<std::vector<double>> normalized(pt.blocks().size());
  for (IndexSet s = 1; s <= top; ++s) {
    const auto b = pt.block(s);
    bool pos = false, neg = false;
    double m = 0.0;
    for (double v : b) {
      pos = pos || v > 0.0;
      neg = neg || v < 0.0;
      m = std::max(m, std::abs(v));
    }
    if (pos && neg) {
      report.member = false;
      report.violation = "block " + set_to_string(s) + " mixes signs";
      return report;
    }
    normalized[s].resize(b.size());
    for (std::size_t k = 0; k < b.size(); ++k) normalized[s][k] = b[k] / m;
  }

  std::vector<std::vector<double>> sq(d, std::vector<double>(d, 0.0));
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = 0; b < d; ++b) {
      const double diff = pt.spectrum()[a] - pt.spectrum()[b];
      sq[a][b] = diff * diff;
    }
  }
  detail::CrossCheck check{pt, normalized, sq, tol, report};

  if (d <= kExhaustiveMemberDimension) {
    for (IndexSet s = 1; s <= top; ++s) {
      // Proper subsets R of S with |R| >= 2.
      for (IndexSet r = (s - 1) & s; r != 0; r = (r - 1) & s) {
        if (set_size(r) < 2) continue;
        const auto idx = members(r);
        for (std::size_t a = 0; a < idx.size(); ++a) {
          for (std::size_t b = a + 1; b < idx.size(); ++b) {
            if (!check(r, s, idx[a], idx[b])) return report;
          }
        }
      }
    }
    return report;
  }

  report.sampled = true;
  std::mt19937_64 rng(0x5eedULL);
  std::uniform_int_distribution<IndexSet> pick_s(1, top);
  // Draws that give no valid (R, S, i, j) are redrawn, so exactly `samples`
  // instances are checked.
  while (report.instances_checked < samples) {
    const IndexSet s = pick_s(rng);
    if (set_size(s) < 2) continue;
    IndexSet r = static_cast<IndexSet>(rng()) & s;
    if (r == s) r &= r - 1;
    if (set_size(r) < 2) continue;
    const auto idx = members(r);
    std::uniform_int_distribution<std::size_t> pick(0, idx.size() - 1);
    const std::size_t a = pick(rng);
    std::size_t b = pick(rng);
    if (a == b) b = (b + 1) % idx.size();
    if (!check(r, s, idx[a], idx[b])) return report;
  }
  return report;
}

/// Each block scaled to nonnegative entries summing to 1. A block already in
/// that form (up to a few ulps in the sum) is left untouched, which makes the
/// map idempotent.
inline BlowupPoint normalize_affine(const BlowupPoint& pt) {
  std::vector<std::vector<double>> blocks(pt.blocks());
  for (std::size_t s = 1; s < blocks.size(); ++s) {
    auto& b = blocks[s];
    double sum = 0.0;
    bool pos = false, neg = false;
    for (double v : b) {
      sum += v;
      pos = pos || v > 0.0;
      neg = neg || v < 0.0;
    }
    if (pos && neg) throw InvalidInput("block " + set_to_string(static_cast<IndexSet>(s)) + " mixes signs");
    const double slack = 4.0 * std::numeric_limits<double>::epsilon() * static_cast<double>(b.size());
    if (pos && std::abs(sum - 1.0) <= slack) continue;
    for (double& v : b) v /= sum;
  }
  return BlowupPoint(pt.spectrum(), std::move(blocks));
}

/// Normalized rho image of the sequence with all weights 1 on the parts of p.
inline BlowupPoint barycentre(const OrderedPartition& p, const Spectrum& spectrum) {
  if (p.dimension() != spectrum.size()) throw InvalidInput("partition and spectrum sizes differ");
  std::vector<Distribution> parts;
  for (IndexSet block : p.blocks()) {
    parts.emplace_back(spectrum, members(block), std::vector<double>(set_size(block), 1.0));
  }
  return normalize_affine(rho(DistributionSequence(std::move(parts))));
}

/// Ordered partition naming the face whose relative interior contains pt.
inline OrderedPartition face_of(const BlowupPoint& pt) { return phi_chain(pt).partition; }

}  // namespace isospec
