#pragma once

// Index sets, ordered partitions of [d] and the chains they correspond to.
// Sets are bitmasks: bit i stands for index i (0-based).

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "isospec/errors.hpp"

namespace isospec {

using IndexSet = std::uint32_t;

/// Upper bound on d for anything stored as an IndexSet.
inline constexpr std::size_t kMaxIndexSetDimension = 24;

inline IndexSet full_set(std::size_t d) {
  if (d > kMaxIndexSetDimension) throw InvalidInput("dimension " + std::to_string(d) + " too large");
  return d == 0 ? 0u : static_cast<IndexSet>((std::uint64_t{1} << d) - 1);
}

inline std::size_t set_size(IndexSet s) { return static_cast<std::size_t>(std::popcount(s)); }
inline bool contains(IndexSet s, std::size_t i) { return (s >> i) & 1u; }
inline bool is_subset(IndexSet a, IndexSet b) { return (a & ~b) == 0; }
inline IndexSet singleton(std::size_t i) { return IndexSet{1} << i; }
inline std::size_t min_index(IndexSet s) { return static_cast<std::size_t>(std::countr_zero(s)); }

inline std::vector<std::size_t> members(IndexSet s) {
  std::vector<std::size_t> out;
  out.reserve(set_size(s));
  for (; s != 0; s &= s - 1) out.push_back(min_index(s));
  return out;
}

inline IndexSet make_set(const std::vector<std::size_t>& indices) {
  IndexSet s = 0;
  for (std::size_t i : indices) {
    if (i >= kMaxIndexSetDimension) throw InvalidInput("index " + std::to_string(i) + " too large");
    s |= singleton(i);
  }
  return s;
}

/// "{1,3}" in 1-based labels.
inline std::string set_to_string(IndexSet s) {
  std::string out = "{";
  bool first = true;
  for (std::size_t i : members(s)) {
    if (!first) out += ',';
    out += std::to_string(i + 1);
    first = false;
  }
  return out + "}";
}

/// Nonempty subsets of [d] ordered by cardinality, then lexicographically by sorted members.
inline std::vector<IndexSet> canonical_subsets(std::size_t d) {
  const IndexSet top = full_set(d);
  std::vector<IndexSet> out;
  out.reserve(top);
  for (std::size_t k = 1; k <= d; ++k) {
    std::vector<std::size_t> pick(k);
    for (std::size_t j = 0; j < k; ++j) pick[j] = j;
    while (true) {
      out.push_back(make_set(pick));
      std::size_t j = k;
      while (j > 0 && pick[j - 1] == d - k + (j - 1)) --j;
      if (j == 0) break;
      ++pick[j - 1];
      for (std::size_t m = j; m < k; ++m) pick[m] = pick[m - 1] + 1;
    }
  }
  return out;
}

/// Sequence (S_1, ..., S_r) of disjoint nonempty blocks whose union is [d].
class OrderedPartition {
 public:
  OrderedPartition() = default;

  OrderedPartition(std::size_t d, std::vector<IndexSet> blocks) : d_(d), blocks_(std::move(blocks)) {
    if (d_ == 0) throw InvalidInput("ordered partition needs d >= 1");
    const IndexSet top = full_set(d_);
    IndexSet seen = 0;
    for (IndexSet b : blocks_) {
      if (b == 0) throw InvalidInput("ordered partition has an empty block");
      if (!is_subset(b, top)) throw InvalidInput("block " + set_to_string(b) + " leaves [" + std::to_string(d_) + "]");
      if (b & seen) throw InvalidInput("ordered partition blocks overlap");
      seen |= b;
    }
    if (seen != top) throw InvalidInput("ordered partition blocks do not cover [" + std::to_string(d_) + "]");
  }

  /// Single block [d].
  static OrderedPartition trivial(std::size_t d) { return OrderedPartition(d, {full_set(d)}); }

  std::size_t dimension() const { return d_; }
  std::size_t size() const { return blocks_.size(); }
  IndexSet operator[](std::size_t j) const { return blocks_[j]; }
  const std::vector<IndexSet>& blocks() const { return blocks_; }

  /// Dimension of the associated face: d - r.
  std::size_t face_dimension() const { return d_ - blocks_.size(); }

  std::size_t block_of(std::size_t i) const {
    for (std::size_t j = 0; j < blocks_.size(); ++j) {
      if (contains(blocks_[j], i)) return j;
    }
    throw InvalidInput("index " + std::to_string(i) + " not covered");
  }

  std::string to_string() const {
    std::string out = "(";
    for (std::size_t j = 0; j < blocks_.size(); ++j) {
      if (j > 0) out += ',';
      out += set_to_string(blocks_[j]);
    }
    return out + ")";
  }

  friend bool operator==(const OrderedPartition&, const OrderedPartition&) = default;
  friend auto operator<=>(const OrderedPartition&, const OrderedPartition&) = default;

 private:
  std::size_t d_ = 0;
  std::vector<IndexSet> blocks_;
};

/// Strictly decreasing sets [d] = K_1 > K_2 > ... > K_r, K_r nonempty.
class Chain {
 public:
  Chain() = default;

  Chain(std::size_t d, std::vector<IndexSet> sets) : d_(d), sets_(std::move(sets)) {
    if (sets_.empty() || sets_.front() != full_set(d_)) throw InvalidInput("chain must start at [d]");
    for (std::size_t n = 1; n < sets_.size(); ++n) {
      if (sets_[n] == 0) throw InvalidInput("chain members must be nonempty");
      if (!is_subset(sets_[n], sets_[n - 1]) || sets_[n] == sets_[n - 1]) {
        throw InvalidInput("chain inclusions must be strict");
      }
    }
  }

  std::size_t dimension() const { return d_; }
  std::size_t size() const { return sets_.size(); }
  IndexSet operator[](std::size_t n) const { return sets_[n]; }
  const std::vector<IndexSet>& sets() const { return sets_; }

  /// Position of the smallest member containing s.
  std::size_t smallest_containing(IndexSet s) const {
    std::size_t n = 0;
    while (n + 1 < sets_.size() && is_subset(s, sets_[n + 1])) ++n;
    return n;
  }

  friend bool operator==(const Chain&, const Chain&) = default;

 private:
  std::size_t d_ = 0;
  std::vector<IndexSet> sets_;
};

/// K_n = S_n u S_{n+1} u ... u S_r.
inline Chain to_chain(const OrderedPartition& p) {
  std::vector<IndexSet> sets(p.size());
  IndexSet acc = 0;
  for (std::size_t n = p.size(); n-- > 0;) {
    acc |= p[n];
    sets[n] = acc;
  }
  return Chain(p.dimension(), std::move(sets));
}

/// S_n = K_n - K_{n+1}, S_r = K_r.
inline OrderedPartition to_partition(const Chain& c) {
  std::vector<IndexSet> blocks(c.size());
  for (std::size_t n = 0; n < c.size(); ++n) blocks[n] = c[n] & ~(n + 1 < c.size() ? c[n + 1] : 0u);
  return OrderedPartition(c.dimension(), std::move(blocks));
}

/// finer <= coarser: finer is a concatenation of ordered partitions of the
/// blocks of coarser, taken in block order.
inline bool is_refinement(const OrderedPartition& finer, const OrderedPartition& coarser) {
  if (finer.dimension() != coarser.dimension()) throw InvalidInput("partitions of different sets");
  std::size_t idx = 0;
  for (IndexSet block : coarser.blocks()) {
    IndexSet acc = 0;
    while (acc != block) {
      if (idx == finer.size() || !is_subset(finer[idx], block)) return false;
      acc |= finer[idx++];
    }
  }
  return idx == finer.size();
}

/// Calls visit(blocks) once per ordered partition of the set `rest`, in a
/// fixed order (first block runs over nonempty subsets in increasing mask order).
inline void for_each_ordered_partition_of(IndexSet rest, std::vector<IndexSet>& prefix,
                                          const std::function<void(const std::vector<IndexSet>&)>& visit) {
  if (rest == 0) {
    visit(prefix);
    return;
  }
  for (IndexSet sub = rest & (~rest + 1);; sub = (sub - rest) & rest) {
    prefix.push_back(sub);
    for_each_ordered_partition_of(rest & ~sub, prefix, visit);
    prefix.pop_back();
    if (sub == rest) break;
  }
}

inline void for_each_ordered_partition(std::size_t d, const std::function<void(const OrderedPartition&)>& visit) {
  if (d < 1 || d > kMaxIndexSetDimension) throw InvalidInput("d out of range");
  std::vector<IndexSet> prefix;
  for_each_ordered_partition_of(full_set(d), prefix,
                                [&](const std::vector<IndexSet>& blocks) { visit(OrderedPartition(d, blocks)); });
}

/// Every ordered partition of [d] once; 1 <= d <= 10. The count is the
/// ordered Bell number, about 1.0e8 at d = 10, so prefer the visitor there.
inline std::vector<OrderedPartition> enumerate_ordered_partitions(std::size_t d) {
  if (d < 1 || d > 10) throw InvalidInput("enumerate_ordered_partitions needs 1 <= d <= 10, got " + std::to_string(d));
  std::vector<OrderedPartition> out;
  for_each_ordered_partition(d, [&](const OrderedPartition& p) { out.push_back(p); });
  return out;
}

}  // namespace isospec
