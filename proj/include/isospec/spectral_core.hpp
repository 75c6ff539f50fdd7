#pragma once

// Distribution <-> Jacobi matrix correspondence.
//
// reconstruct() builds the Jacobi matrix whose spectral distribution is the
// given one, through the three-term recurrence for monic orthogonal
// polynomials. spectral_distribution() goes the other way: Sturm-sequence
// bisection for the eigenvalues and the determinant-ratio formula
// w_n = det(lambda_n I - J^{11}) / p_d'(lambda_n) for the weights.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "isospec/errors.hpp"
#include "isospec/types.hpp"

namespace isospec {

/// Monic orthogonal polynomials p_0, ..., p_m of a distribution with m support
/// points, held as value tables at the support points.
struct PolynomialSequence {
  std::vector<double> points;
  /// Recurrence coefficients: p_{n+1} = (x - diag[n]) p_n - offdiag[n-1]^2 p_{n-1}.
  std::vector<double> diag;
  std::vector<double> offdiag;
  /// values[n][k] = p_n(points[k]) for 0 <= n <= m.
  std::vector<std::vector<double>> values;

  std::size_t degree() const { return points.size(); }

  double evaluate(std::size_t n, double x) const {
    double prev = 0.0;
    double cur = 1.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double b2 = j > 0 ? offdiag[j - 1] * offdiag[j - 1] : 0.0;
      const double next = (x - diag[j]) * cur - b2 * prev;
      prev = cur;
      cur = next;
    }
    return cur;
  }

  /// Monic coefficient vector of p_n, ascending powers (size n + 1).
  std::vector<double> coefficients(std::size_t n) const {
    std::vector<double> prev;
    std::vector<double> cur{1.0};
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<double> next(cur.size() + 1, 0.0);
      for (std::size_t k = 0; k < cur.size(); ++k) {
        next[k + 1] += cur[k];
        next[k] -= diag[j] * cur[k];
      }
      if (j > 0) {
        const double b2 = offdiag[j - 1] * offdiag[j - 1];
        for (std::size_t k = 0; k < prev.size(); ++k) next[k] -= b2 * prev[k];
      }
      prev = std::move(cur);
      cur = std::move(next);
    }
    return cur;
  }
};

namespace detail {

/// Three-term recurrence coefficients for points x_k with positive
/// weights w_k, computed on orthonormalized value tables
/// q_n = sqrt(w) p_n / ||p_n|| with full reorthogonalization. In exact
/// arithmetic this is the plain recurrence; the reorthogonalization only
/// suppresses rounding drift.
template <class Real>
void recurrence_coefficients(std::span<const Real> points, std::span<const Real> weights, std::vector<Real>& diag,
                             std::vector<Real>& offdiag) {
  using std::sqrt;
  const std::size_t m = points.size();
  diag.assign(m, Real(0));
  offdiag.assign(m > 0 ? m - 1 : 0, Real(0));
  if (m == 0) return;

  Real total(0);
  for (const Real& w : weights) total += w;

  std::vector<std::vector<Real>> basis;
  basis.reserve(m);
  std::vector<Real> q(m);
  for (std::size_t k = 0; k < m; ++k) q[k] = sqrt(weights[k] / total);
  Real beta_prev(0);

  auto dot = [m](const std::vector<Real>& a, const std::vector<Real>& b) {
    Real s(0);
    for (std::size_t k = 0; k < m; ++k) s += a[k] * b[k];
    return s;
  };

  for (std::size_t n = 0; n < m; ++n) {
    std::vector<Real> z(m);
    for (std::size_t k = 0; k < m; ++k) z[k] = points[k] * q[k];
    const Real alpha = dot(q, z);
    diag[n] = alpha;
    basis.push_back(q);
    if (n + 1 == m) break;

    for (std::size_t k = 0; k < m; ++k) z[k] -= alpha * q[k];
    if (n > 0) {
      const std::vector<Real>& qp = basis[n - 1];
      for (std::size_t k = 0; k < m; ++k) z[k] -= beta_prev * qp[k];
    }
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& v : basis) {
        const Real c = dot(v, z);
        for (std::size_t k = 0; k < m; ++k) z[k] -= c * v[k];
      }
    }
    const Real beta = sqrt(dot(z, z));
    if (!(beta > Real(0))) throw NumericFailure("recurrence broke down: vanishing off-diagonal at step " +
                                                std::to_string(n + 1));
    offdiag[n] = beta;
    beta_prev = beta;
    for (std::size_t k = 0; k < m; ++k) q[k] = z[k] / beta;
  }
}

/// p(x) and p'(x) of the characteristic polynomial of the tridiagonal matrix
/// (diag, off), both multiplied by 2^{-exponent} to stay in range.
template <class Real>
struct ScaledCharPoly {
  Real value = Real(1);
  Real derivative = Real(0);
  int exponent = 0;
};

template <class Real>
ScaledCharPoly<Real> char_poly(std::span<const Real> diag, std::span<const Real> off, const Real& x) {
  using std::abs, std::frexp, std::ldexp;
  ScaledCharPoly<Real> out;
  Real p_prev(0), p(1);
  Real dp_prev(0), dp(0);
  const Real big = ldexp(Real(1), 200);
  const Real small = ldexp(Real(1), -200);
  for (std::size_t j = 0; j < diag.size(); ++j) {
    const Real b2 = j > 0 ? Real(off[j - 1] * off[j - 1]) : Real(0);
    const Real p_next = (x - diag[j]) * p - b2 * p_prev;
    const Real dp_next = p + (x - diag[j]) * dp - b2 * dp_prev;
    p_prev = p;
    p = p_next;
    dp_prev = dp;
    dp = dp_next;
    const Real mag = abs(p) > abs(dp) ? Real(abs(p)) : Real(abs(dp));
    if (mag > big || (mag < small && mag > Real(0))) {
      int e = 0;
      frexp(mag, &e);
      p = ldexp(p, -e);
      p_prev = ldexp(p_prev, -e);
      dp = ldexp(dp, -e);
      dp_prev = ldexp(dp_prev, -e);
      out.exponent += e;
    }
  }
  out.value = p;
  out.derivative = dp;
  return out;
}

/// Number of eigenvalues strictly below x (Sturm count via LDL^T pivots).
template <class Real>
std::size_t count_below(std::span<const Real> diag, std::span<const Real> off, const Real& x, const Real& pivmin) {
  using std::abs;
  std::size_t count = 0;
  Real q = diag[0] - x;
  if (abs(q) < pivmin) q = -pivmin;
  if (q < Real(0)) ++count;
  for (std::size_t j = 1; j < diag.size(); ++j) {
    q = (diag[j] - x) - off[j - 1] * off[j - 1] / q;
    if (abs(q) < pivmin) q = -pivmin;
    if (q < Real(0)) ++count;
  }
  return count;
}

}  // namespace detail

/// Relative (to spectral diameter) bisection tolerance for eigenvalues.
inline constexpr double kEigenTolerance = 1e-13;
/// Off-diagonal entries at or below this multiple of the matrix inf-norm are zeros for split_blocks.
inline constexpr double kSplitThreshold = 1e-12;

/// f(d alpha) evaluated in arithmetic type Real and rounded to double.
template <class Real>
TridiagonalMatrix reconstruct_with(const Distribution& dist) {
  const auto x = dist.points();
  const auto w = dist.normalized_weights();
  std::vector<Real> xr(x.begin(), x.end());
  std::vector<Real> wr(w.begin(), w.end());
  std::vector<Real> diag, off;
  detail::recurrence_coefficients<Real>(xr, wr, diag, off);
  std::vector<double> dd, od;
  for (const Real& v : diag) dd.push_back(static_cast<double>(v));
  for (const Real& v : off) od.push_back(static_cast<double>(v));
  return TridiagonalMatrix(std::move(dd), std::move(od));
}

/// The |S| x |S| Jacobi matrix f(d alpha); invariant under rescaling the weights.
inline TridiagonalMatrix reconstruct(const Distribution& dist) { return reconstruct_with<double>(dist); }

/// Monic orthogonal polynomials (p_0, ..., p_m) attached to dist.
inline PolynomialSequence mop(const Distribution& dist) {
  const TridiagonalMatrix j = reconstruct(dist);
  PolynomialSequence ps;
  ps.points = dist.points();
  ps.diag.assign(j.diag().begin(), j.diag().end());
  ps.offdiag.assign(j.offdiag().begin(), j.offdiag().end());
  const std::size_t m = ps.points.size();
  ps.values.assign(m + 1, std::vector<double>(m, 0.0));
  for (std::size_t k = 0; k < m; ++k) ps.values[0][k] = 1.0;
  for (std::size_t n = 0; n < m; ++n) {
    const double b2 = n > 0 ? ps.offdiag[n - 1] * ps.offdiag[n - 1] : 0.0;
    for (std::size_t k = 0; k < m; ++k) {
      const double prev = n > 0 ? ps.values[n - 1][k] : 0.0;
      ps.values[n + 1][k] = (ps.points[k] - ps.diag[n]) * ps.values[n][k] - b2 * prev;
    }
  }
  return ps;
}

namespace detail {

/// Bisection brackets [a_k, b_k] (width <= kEigenTolerance * Gershgorin span)
/// around each eigenvalue of the symmetric tridiagonal matrix (diag, off), ascending.
template <class Real>
std::vector<std::pair<Real, Real>> bisection_brackets(std::span<const Real> diag, std::span<const Real> off) {
  using std::abs;
  const std::size_t d = diag.size();
  Real lo = diag[0], hi = diag[0];
  Real max_b2(0);
  for (std::size_t k = 0; k < d; ++k) {
    Real radius(0);
    if (k > 0) radius += abs(off[k - 1]);
    if (k + 1 < d) radius += abs(off[k]);
    if (diag[k] - radius < lo) lo = diag[k] - radius;
    if (diag[k] + radius > hi) hi = diag[k] + radius;
  }
  for (const Real& b : off) {
    if (b * b > max_b2) max_b2 = b * b;
  }
  Real span = hi - lo;
  if (span < std::numeric_limits<Real>::min()) span = std::numeric_limits<Real>::min();
  const Real tol = Real(kEigenTolerance) * span;
  const Real pivmin = std::numeric_limits<Real>::min() * (max_b2 > Real(1) ? max_b2 : Real(1));
  lo -= tol;
  hi += tol;

  std::vector<std::pair<Real, Real>> brackets(d);
  for (std::size_t k = 0; k < d; ++k) {
    // Every eigenvalue below index k lies left of the previous bracket's right end.
    Real a = k > 0 ? brackets[k - 1].first : lo;
    Real b = hi;
    while (b - a > tol) {
      const Real mid = (a + b) / 2;
      if (mid <= a || mid >= b) break;
      if (count_below<Real>(diag, off, mid, pivmin) > k) {
        b = mid;
      } else {
        a = mid;
      }
    }
    brackets[k] = {a, b};
  }
  return brackets;
}

/// Newton iteration on the characteristic polynomial, confined to [a, b].
template <class Real>
Real newton_polish(std::span<const Real> diag, std::span<const Real> off, Real x, const Real& a, const Real& b) {
  using std::abs;
  const Real eps = std::numeric_limits<Real>::epsilon();
  const Real scale = abs(a) > abs(b) ? Real(abs(a)) : Real(abs(b));
  for (int it = 0; it < 12; ++it) {
    const auto cp = char_poly<Real>(diag, off, x);
    if (cp.derivative == Real(0)) break;
    const Real step = cp.value / cp.derivative;
    const Real next = x - step;
    if (!(next >= a && next <= b)) break;
    x = next;
    if (abs(step) <= 4 * eps * (scale > Real(1) ? scale : Real(1))) break;
  }
  return x;
}

}  // namespace detail

/// Eigenvalues in ascending order (with multiplicity) of any symmetric
/// tridiagonal matrix. The matrix is cut at zero off-diagonals; each unreduced
/// block gets Sturm-count bisection and Newton polishing, and a 1 x 1 block is
/// its own eigenvalue.
inline std::vector<double> eigenvalues(const TridiagonalMatrix& t) {
  const auto diag = t.diag();
  const auto off = t.offdiag();
  std::vector<double> out;
  out.reserve(diag.size());
  std::size_t begin = 0;
  for (std::size_t end = 1; end <= diag.size(); ++end) {
    if (end < diag.size() && off[end - 1] != 0.0) continue;
    const auto bd = diag.subspan(begin, end - begin);
    const auto bo = off.subspan(begin, end - begin - 1);
    if (bd.size() == 1) {
      out.push_back(bd[0]);
    } else {
      for (const auto& [a, b] : detail::bisection_brackets<double>(bd, bo)) {
        out.push_back(detail::newton_polish<double>(bd, bo, 0.5 * (a + b), a, b));
      }
    }
    begin = end;
  }
  std::ranges::sort(out);
  return out;
}

/// Arithmetic used to polish eigenvalues and evaluate the weight formula.
using ExtendedReal = boost::multiprecision::cpp_bin_float_quad;

/// Normalized spectral distribution of a Jacobi matrix: atoms at the
/// eigenvalues, weights the squared first eigenvector components.
///
/// Brackets come from double-precision bisection; Newton polishing and
/// w_n = det(lambda_n I - J^{11}) / p_d'(lambda_n) run in Real. The weight
/// formula is sensitive to eigenvalue rounding when w_n is tiny, so the
/// default uses ExtendedReal.
template <class Real>
Distribution spectral_distribution_with(const TridiagonalMatrix& j) {
  using std::ldexp;
  if (!j.is_jacobi()) {
    throw InvalidInput("spectral_distribution needs strictly positive off-diagonals; split blocks first");
  }
  const std::size_t d = j.dimension();
  const auto brackets = detail::bisection_brackets<double>(j.diag(), j.offdiag());
  const std::vector<Real> diag(j.diag().begin(), j.diag().end());
  const std::vector<Real> off(j.offdiag().begin(), j.offdiag().end());

  std::vector<Real> lambdas(d);
  std::vector<double> points(d);
  for (std::size_t k = 0; k < d; ++k) {
    const Real a(brackets[k].first), b(brackets[k].second);
    lambdas[k] = detail::newton_polish<Real>(diag, off, (a + b) / 2, a, b);
    points[k] = static_cast<double>(lambdas[k]);
  }
  for (std::size_t k = 1; k < d; ++k) {
    if (!(points[k - 1] < points[k])) throw NumericFailure("eigenvalues not resolved as distinct");
  }

  std::vector<Real> weights(d, Real(1));
  if (d > 1) {
    const std::span<const Real> tail_diag = std::span<const Real>(diag).subspan(1);
    const std::span<const Real> tail_off = std::span<const Real>(off).subspan(1);
    for (std::size_t k = 0; k < d; ++k) {
      const auto numer = detail::char_poly<Real>(tail_diag, tail_off, lambdas[k]);
      const auto denom = detail::char_poly<Real>(diag, off, lambdas[k]);
      const Real w = ldexp(Real(numer.value / denom.derivative), numer.exponent - denom.exponent);
      if (!(w > Real(0))) {
        throw NumericFailure("weight formula produced a non-positive value at eigenvalue " + std::to_string(k));
      }
      weights[k] = w;
    }
  }
  Real sum(0);
  for (const Real& w : weights) sum += w;
  std::vector<double> out(d);
  for (std::size_t k = 0; k < d; ++k) {
    out[k] = static_cast<double>(weights[k] / sum);
    if (!(out[k] > 0.0) || !std::isfinite(out[k])) throw NumericFailure("weight underflow or overflow");
  }
  return Distribution::full(Spectrum(std::move(points)), std::move(out));
}

inline Distribution spectral_distribution(const TridiagonalMatrix& j) {
  return spectral_distribution_with<ExtendedReal>(j);
}

/// Cuts a member of the closure of the Jacobi matrices at its (numerically) zero
/// off-diagonals. Each block is Jacobi or 1 x 1.
inline std::vector<TridiagonalMatrix> split_blocks(const TridiagonalMatrix& t) {
  const double threshold = kSplitThreshold * t.inf_norm();
  std::vector<TridiagonalMatrix> blocks;
  std::vector<double> diag{t.diag()[0]};
  std::vector<double> off;
  for (std::size_t k = 0; k + 1 < t.dimension(); ++k) {
    const double b = t.offdiag()[k];
    if (b < -threshold) throw InvalidInput("split_blocks needs nonnegative off-diagonals");
    if (b <= threshold) {
      blocks.emplace_back(std::move(diag), std::move(off));
      diag.clear();
      off.clear();
    } else {
      off.push_back(b);
    }
    diag.push_back(t.diag()[k + 1]);
  }
  blocks.emplace_back(std::move(diag), std::move(off));
  return blocks;
}

/// Block-diagonal matrix with the given blocks in order (zero couplings between them).
inline TridiagonalMatrix direct_sum(std::span<const TridiagonalMatrix> blocks) {
  std::vector<double> diag, off;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (b > 0) off.push_back(0.0);
    diag.insert(diag.end(), blocks[b].diag().begin(), blocks[b].diag().end());
    off.insert(off.end(), blocks[b].offdiag().begin(), blocks[b].offdiag().end());
  }
  return TridiagonalMatrix(std::move(diag), std::move(off));
}

/// f(d alpha_1) (+) ... (+) f(d alpha_r).
inline TridiagonalMatrix direct_sum_reconstruct(const DistributionSequence& seq) {
  std::vector<TridiagonalMatrix> blocks;
  blocks.reserve(seq.size());
  for (const Distribution& part : seq.parts()) blocks.push_back(reconstruct(part));
  return direct_sum(blocks);
}

/// Reflection across the anti-diagonal: entries (a_{2d-1}, ..., a_1).
inline TridiagonalMatrix flip_matrix(const TridiagonalMatrix& t) {
  std::vector<double> diag(t.diag().rbegin(), t.diag().rend());
  std::vector<double> off(t.offdiag().rbegin(), t.offdiag().rend());
  return TridiagonalMatrix(std::move(diag), std::move(off));
}

/// prod_{k != n} (lambda_n - lambda_k)^2, i.e. p'(lambda_n)^2 for p(x) = prod (x - lambda_k).
inline double c_bar(const Spectrum& spectrum, std::size_t n) {
  double c = 1.0;
  for (std::size_t k = 0; k < spectrum.size(); ++k) {
    if (k == n) continue;
    const double diff = spectrum[n] - spectrum[k];
    c *= diff * diff;
  }
  return c;
}

/// Weights of the spectral distribution of flip_matrix(reconstruct(w)):
/// w^F_n proportional to 1 / (c_bar(n) w_n). Full support only.
inline Distribution flip_weights(const Distribution& dist) {
  if (!dist.has_full_support()) throw InvalidInput("flip_weights needs support equal to the whole spectrum");
  const auto w = dist.normalized_weights();
  std::vector<double> out(w.size());
  for (std::size_t n = 0; n < w.size(); ++n) out[n] = 1.0 / (c_bar(dist.spectrum(), n) * w[n]);
  return Distribution::full(dist.spectrum(), std::move(out)).normalized();
}

/// diag(eps) T diag(eps) for eps in {+1, -1}^d.
inline TridiagonalMatrix sign_conjugate(const TridiagonalMatrix& t, std::span<const int> eps) {
  if (eps.size() != t.dimension()) {
    throw InvalidInput("sign vector length " + std::to_string(eps.size()) + " does not match dimension " +
                       std::to_string(t.dimension()));
  }
  for (int e : eps) {
    if (e != 1 && e != -1) throw InvalidInput("sign vector entries must be +1 or -1");
  }
  std::vector<double> diag(t.diag().begin(), t.diag().end());
  std::vector<double> off(t.offdiag().begin(), t.offdiag().end());
  for (std::size_t k = 0; k < off.size(); ++k) off[k] *= static_cast<double>(eps[k] * eps[k + 1]);
  return TridiagonalMatrix(std::move(diag), std::move(off));
}

}  // namespace isospec
