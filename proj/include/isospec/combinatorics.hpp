#pragma once

// Exact integer combinatorics: factorials, Stirling numbers of the second
// kind, ordered Bell numbers, Eulerian numbers and tangent numbers. All
// arithmetic is int64 with overflow checks.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "isospec/errors.hpp"

namespace isospec {

namespace detail {

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_add_overflow(a, b, &out)) throw NumericFailure("int64 overflow in addition");
  return out;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) throw NumericFailure("int64 overflow in multiplication");
  return out;
}

}  // namespace detail

inline std::int64_t factorial(std::size_t n) {
  std::int64_t out = 1;
  for (std::size_t k = 2; k <= n; ++k) out = detail::checked_mul(out, static_cast<std::int64_t>(k));
  return out;
}

inline std::int64_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  std::int64_t out = 1;
  for (std::size_t j = 1; j <= k; ++j) {
    // out * (n - k + j) is divisible by j at every step.
    out = detail::checked_mul(out, static_cast<std::int64_t>(n - k + j)) / static_cast<std::int64_t>(j);
  }
  return out;
}

/// S(n, k) via S(n, k) = k S(n-1, k) + S(n-1, k-1).
inline std::int64_t stirling2(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::vector<std::int64_t> row(k + 1, 0);
  row[0] = 1;
  for (std::size_t m = 1; m <= n; ++m) {
    for (std::size_t j = std::min(m, k); j >= 1; --j) {
      row[j] = detail::checked_add(detail::checked_mul(static_cast<std::int64_t>(j), row[j]), row[j - 1]);
    }
    row[0] = 0;
  }
  return row[k];
}

/// Number of ordered partitions of an n-set: sum_q q! S(n, q).
inline std::int64_t ordered_bell(std::size_t n) {
  if (n == 0) return 1;
  std::int64_t total = 0;
  for (std::size_t q = 1; q <= n; ++q) total = detail::checked_add(total, detail::checked_mul(factorial(q), stirling2(n, q)));
  return total;
}

/// A(n, k): permutations of [n] with k descents, 0 <= k < n.
inline std::int64_t eulerian(std::size_t n, std::size_t k) {
  if (n == 0) return k == 0 ? 1 : 0;
  if (k >= n) return 0;
  std::vector<std::int64_t> row{1};
  for (std::size_t m = 2; m <= n; ++m) {
    std::vector<std::int64_t> next(m, 0);
    for (std::size_t j = 0; j < m; ++j) {
      std::int64_t v = 0;
      if (j < row.size()) v = detail::checked_mul(static_cast<std::int64_t>(j + 1), row[j]);
      if (j >= 1 && j - 1 < row.size()) {
        v = detail::checked_add(v, detail::checked_mul(static_cast<std::int64_t>(m - j), row[j - 1]));
      }
      next[j] = v;
    }
    row = std::move(next);
  }
  return row[k];
}

/// sum_k A(n, k) x^k.
inline std::int64_t eulerian_polynomial_at(std::size_t n, std::int64_t x) {
  std::int64_t total = 0, power = 1;
  for (std::size_t k = 0; k < std::max<std::size_t>(n, 1); ++k) {
    total = detail::checked_add(total, detail::checked_mul(eulerian(n, k), power));
    power = detail::checked_mul(power, x);
  }
  return total;
}

/// Zigzag numbers E_0, ..., E_n (alternating permutations) by the boustrophedon transform.
inline std::vector<std::int64_t> zigzag_numbers(std::size_t n) {
  std::vector<std::int64_t> out{1};
  std::vector<std::int64_t> row{1};
  for (std::size_t m = 1; m <= n; ++m) {
    std::vector<std::int64_t> next(m + 1, 0);
    for (std::size_t k = 1; k <= m; ++k) next[k] = detail::checked_add(next[k - 1], row[m - k]);
    out.push_back(next[m]);
    row = std::move(next);
  }
  return out;
}

/// Tangent number T_n = n! [x^n] tan x (zero for even n).
inline std::int64_t tangent_number(std::size_t n) {
  if (n % 2 == 0) return 0;
  return zigzag_numbers(n)[n];
}

/// n! [x^n] tanh x = (-1)^k T_n for n = 2k + 1, zero for even n.
inline std::int64_t tanh_coefficient(std::size_t n) {
  if (n % 2 == 0) return 0;
  const std::int64_t t = tangent_number(n);
  return ((n - 1) / 2) % 2 == 0 ? t : -t;
}

}  // namespace isospec
