#pragma once

// Property suite behind `isospec verify`. Every invariant listed for the
// modules is checked here on seeded random data; the output order is fixed.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "isospec/blowup.hpp"
#include "isospec/combinatorics.hpp"
#include "isospec/limits.hpp"
#include "isospec/partitions.hpp"
#include "isospec/permutacomplex.hpp"
#include "isospec/spectral_core.hpp"
#include "isospec/types.hpp"

namespace isospec {

struct PropertyResult {
  std::string module;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

struct VerifyOptions {
  std::uint64_t seed = 20240611;
  /// Random cases per dimension for the spectral round trips and flips.
  std::size_t count = 100;
};

/// Seeded generators for spectra, weights, Jacobi matrices, partitions and curves.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  /// Independent stream for the stream-th property under one suite seed.
  static Sampler substream(std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream)};
    std::mt19937_64 rng(seq);
    return Sampler(rng());
  }

  double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng_); }
  std::size_t index(std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_); }

  /// d sorted points in [-2, 2] with gaps of at least 0.05.
  Spectrum spectrum(std::size_t d) {
    while (true) {
      std::vector<double> x(d);
      for (double& v : x) v = uniform(-2.0, 2.0);
      std::sort(x.begin(), x.end());
      bool ok = true;
      for (std::size_t k = 1; k < d; ++k) ok = ok && x[k] - x[k - 1] >= 0.05;
      if (ok) return Spectrum(std::move(x));
    }
  }

  /// d points starting in [-2, -1] with consecutive gaps in [0.5, 1]. Moment
  /// curves converge at a rate set by products of squared gaps, so the limit
  /// checks use these well-separated spectra.
  Spectrum separated_spectrum(std::size_t d) {
    std::vector<double> x(d);
    double v = uniform(-2.0, -1.0);
    for (double& p : x) {
      p = v;
      v += uniform(0.5, 1.0);
    }
    return Spectrum(std::move(x));
  }

  std::vector<double> weights(std::size_t n) {
    std::vector<double> w(n);
    for (double& v : w) v = uniform(0.05, 1.0);
    return w;
  }

  Distribution distribution(std::size_t d) { return Distribution::full(spectrum(d), weights(d)); }

  TridiagonalMatrix jacobi(std::size_t d) {
    std::vector<double> diag(d), off(d - 1);
    for (double& v : diag) v = uniform(-1.0, 1.0);
    for (double& v : off) v = uniform(0.1, 1.0);
    return TridiagonalMatrix(std::move(diag), std::move(off));
  }

  /// Uniformly shuffled indices cut into r nonempty consecutive pieces.
  OrderedPartition partition(std::size_t d, std::size_t r) {
    std::vector<std::size_t> perm(d);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::shuffle(perm.begin(), perm.end(), rng_);
    std::vector<std::size_t> cuts(d - 1);
    std::iota(cuts.begin(), cuts.end(), std::size_t{1});
    std::shuffle(cuts.begin(), cuts.end(), rng_);
    cuts.resize(r - 1);
    std::sort(cuts.begin(), cuts.end());
    cuts.push_back(d);
    std::vector<IndexSet> blocks;
    std::size_t start = 0;
    for (std::size_t c : cuts) {
      IndexSet b = 0;
      for (std::size_t k = start; k < c; ++k) b |= singleton(perm[k]);
      blocks.push_back(b);
      start = c;
    }
    return OrderedPartition(d, std::move(blocks));
  }

  DistributionSequence sequence(const Spectrum& spec, const OrderedPartition& p) {
    std::vector<Distribution> parts;
    for (IndexSet b : p.blocks()) parts.emplace_back(spec, members(b), weights(set_size(b)));
    return DistributionSequence(std::move(parts));
  }

  MomentCurve curve(std::size_t d, std::size_t r) {
    const Spectrum spec = separated_spectrum(d);
    return MomentCurve(sequence(spec, partition(d, r)));
  }

 private:
  std::mt19937_64 rng_;
};

namespace detail {

inline std::string fmt(double x) {
  std::ostringstream os;
  os.precision(3);
  os << x;
  return os.str();
}

inline double relative_entry_gap(const TridiagonalMatrix& a, const TridiagonalMatrix& b) {
  const double scale = std::max({1.0, a.inf_norm(), b.inf_norm()});
  return max_abs_difference(a, b) / scale;
}

}  // namespace detail

/// Every module property, in a fixed order.
inline std::vector<PropertyResult> run_property_suite(const VerifyOptions& opt = {}) {
  std::vector<PropertyResult> out;
  Sampler rs(opt.seed);

  auto run = [&](const char* module, const char* name, const std::function<std::string(bool&)>& body) {
    PropertyResult r{module, name, true, "", 0.0};
    rs = Sampler::substream(opt.seed, out.size());
    const auto t0 = std::chrono::steady_clock::now();
    try {
      r.detail = body(r.passed);
    } catch (const std::exception& e) {
      r.passed = false;
      r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    out.push_back(std::move(r));
  };

  // spectral-core

  run("spectral-core", "two-point reconstruction in closed form", [&](bool& ok) {
    const auto t = reconstruct(Distribution::full(Spectrum({0.0, 1.0}), {0.25, 0.75}));
    const std::vector<double> want{0.75, std::sqrt(0.1875), 0.25};
    double err = 0.0;
    for (std::size_t k = 0; k < 3; ++k) err = std::max(err, std::abs(t.entries()[k] - want[k]));
    ok = err < 1e-15;
    return "max error " + detail::fmt(err);
  });

  run("spectral-core", "distribution -> matrix -> distribution, d = 2..8", [&](bool& ok) {
    double worst = 0.0;
    for (std::size_t d = 2; d <= 8; ++d) {
      for (std::size_t c = 0; c < opt.count; ++c) {
        const Distribution w = rs.distribution(d);
        const Distribution back = spectral_distribution(reconstruct(w));
        const auto wb = back.normalized_weights();
        const auto wn = w.normalized_weights();
        double err = 0.0;
        for (std::size_t k = 0; k < d; ++k) {
          err = std::max({err, std::abs(back.points()[k] - w.points()[k]), std::abs(wb[k] - wn[k])});
        }
        worst = std::max(worst, err);
      }
    }
    ok = worst < 1e-8;
    return "worst " + detail::fmt(worst);
  });

  run("spectral-core", "matrix -> distribution -> matrix, d = 2..8", [&](bool& ok) {
    double worst = 0.0;
    for (std::size_t d = 2; d <= 8; ++d) {
      for (std::size_t c = 0; c < opt.count; ++c) {
        const TridiagonalMatrix j = rs.jacobi(d);
        worst = std::max(worst, max_abs_difference(reconstruct(spectral_distribution(j)), j));
      }
    }
    ok = worst < 1e-8;
    return "worst " + detail::fmt(worst);
  });

  run("spectral-core", "reconstruct is homogeneous of degree 0", [&](bool& ok) {
    double worst = 0.0;
    for (std::size_t d = 1; d <= 8; ++d) {
      const Distribution w = rs.distribution(d);
      const TridiagonalMatrix t = reconstruct(w);
      for (double c : {2.0, 0.5, 1024.0, -4.0}) ok = ok && reconstruct(w.scaled(c)) == t;
      for (double c : {3.0, 0.7, 1e6, -1e-3}) worst = std::max(worst, detail::relative_entry_gap(reconstruct(w.scaled(c)), t));
    }
    ok = ok && worst < 1e-14;
    return "power-of-two scalars exact; others within " + detail::fmt(worst);
  });

  run("spectral-core", "orthogonality of the monic polynomials; p_d vanishes on the support and in norm", [&](bool& ok) {
    double worst_orth = 0.0, worst_zero = 0.0;
    for (std::size_t d = 1; d <= 8; ++d) {
      const Distribution w = rs.distribution(d).normalized();
      const PolynomialSequence ps = mop(w);
      const auto wt = w.weights();
      auto ip = [&](std::size_t m, std::size_t n) {
        double s = 0.0;
        for (std::size_t k = 0; k < d; ++k) s += wt[k] * ps.values[m][k] * ps.values[n][k];
        return s;
      };
      for (std::size_t m = 0; m < d; ++m) {
        for (std::size_t n = 0; n < m; ++n) {
          worst_orth = std::max(worst_orth, std::abs(ip(m, n)) / std::sqrt(ip(m, m) * ip(n, n)));
        }
      }
      // Leading scale: size of the monic p_d across the spectral hull.
      const double scale = std::pow(std::max(w.spectrum().diameter(), 1e-300), static_cast<double>(d));
      for (std::size_t k = 0; k < d; ++k) worst_zero = std::max(worst_zero, std::abs(ps.values[d][k]) / scale);
      worst_zero = std::max(worst_zero, std::sqrt(std::abs(ip(d, d))) / scale);
    }
    ok = worst_orth < 1e-10 && worst_zero < 1e-10;
    return "orthogonality " + detail::fmt(worst_orth) + ", p_d at support " + detail::fmt(worst_zero);
  });

  run("spectral-core", "flip identity f_i(w) = f_{2d-i}(w^F)", [&](bool& ok) {
    double worst = 0.0;
    for (std::size_t d = 2; d <= 8; ++d) {
      for (std::size_t c = 0; c < opt.count; ++c) {
        const Distribution w = rs.distribution(d);
        const auto a = reconstruct(w).entries();
        const auto b = reconstruct(flip_weights(w)).entries();
        for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[a.size() - 1 - i]));
      }
    }
    ok = worst < 1e-9;
    return "worst " + detail::fmt(worst);
  });

  run("spectral-core", "flip_weights agrees with the spectral distribution of the flipped matrix", [&](bool& ok) {
    double worst = 0.0;
    for (std::size_t d = 2; d <= 8; ++d) {
      for (std::size_t c = 0; c < opt.count; ++c) {
        const Distribution w = rs.distribution(d);
        const Distribution via_matrix = spectral_distribution(flip_matrix(reconstruct(w)));
        const Distribution direct = flip_weights(w);
        double err = weight_distance(Distribution::full(direct.spectrum(), via_matrix.normalized_weights()), direct);
        for (std::size_t k = 0; k < d; ++k) err = std::max(err, std::abs(via_matrix.points()[k] - w.points()[k]));
        worst = std::max(worst, err);
      }
    }
    ok = worst < 1e-8;
    return "worst " + detail::fmt(worst);
  });

  run("spectral-core", "flip_weights is an involution up to scale", [&](bool& ok) {
    double worst = 0.0;
    for (std::size_t d = 1; d <= 8; ++d) {
      const Distribution w = rs.distribution(d);
      worst = std::max(worst, weight_distance(flip_weights(flip_weights(w)), w.normalized()));
    }
    ok = worst < 1e-12;
    return "worst " + detail::fmt(worst);
  });

  run("spectral-core", "restriction identity ((w^F)|_R)^F = (C_i^{[d]-R} w_i)", [&](bool& ok) {
    double worst = 0.0;
    for (std::size_t d = 2; d <= 6; ++d) {
      const Distribution w = rs.distribution(d);
      const Distribution wf = flip_weights(w);
      for (IndexSet r = 1; r < full_set(d); ++r) {
        const auto idx = members(r);
        std::vector<double> pts, wr, expect;
        for (std::size_t i : idx) {
          pts.push_back(w.spectrum()[i]);
          wr.push_back(wf.weights()[i]);
          expect.push_back(c_constant(w.spectrum(), full_set(d) & ~r, i) * w.weights()[i]);
        }
        const Spectrum sub(pts);
        const Distribution got = flip_weights(Distribution::full(sub, wr));
        worst = std::max(worst, weight_distance(got, Distribution::full(sub, expect)));
      }
    }
    ok = worst < 1e-9;
    return "worst " + detail::fmt(worst);
  });

  run("spectral-core", "sign_conjugate preserves eigenvalues", [&](bool& ok) {
    double worst = 0.0;
    for (std::size_t d = 1; d <= 8; ++d) {
      const TridiagonalMatrix j = rs.jacobi(d);
      const auto ref = eigenvalues(j);
      for (std::uint32_t m = 0; m < (1u << d); ++m) {
        std::vector<int> eps(d);
        for (std::size_t k = 0; k < d; ++k) eps[k] = ((m >> k) & 1u) ? -1 : 1;
        const auto ev = eigenvalues(sign_conjugate(j, eps));
        for (std::size_t k = 0; k < d; ++k) worst = std::max(worst, std::abs(ev[k] - ref[k]));
      }
    }
    ok = worst < 1e-9;
    return "worst " + detail::fmt(worst);
  });

  run("spectral-core", "split_blocks and direct sums", [&](bool& ok) {
    const std::vector<double> entries{0.0, 0.0, 9.0 / 5.0, 2.0 / 5.0, 6.0 / 5.0};
    const auto t = TridiagonalMatrix::from_entries(entries);
    const auto blocks = split_blocks(t);
    ok = blocks.size() == 2 && blocks[0] == TridiagonalMatrix({0.0}, {}) &&
         blocks[1] == TridiagonalMatrix({9.0 / 5.0, 6.0 / 5.0}, {2.0 / 5.0}) && direct_sum(blocks) == t;
    const Spectrum spec({0.0, 1.0, 2.0});
    const DistributionSequence seq({Distribution(spec, {0}, {1.0}), Distribution(spec, {1, 2}, {1.0, 4.0})});
    const double err = max_abs_difference(direct_sum_reconstruct(seq), t);
    ok = ok && err < 1e-15;
    return "direct sum error " + detail::fmt(err);
  });

  // blowup

  run("blowup", "c_constant values", [&](bool& ok) {
    const Spectrum spec({0.0, 1.0, 3.0});
    ok = c_constant(spec, 0, 0) == 1.0 && c_constant(spec, make_set({1}), 0) == 1.0 &&
         c_constant(spec, make_set({1, 2}), 0) == 9.0;
    return "";
  });

  run("blowup", "ordered partition counts equal ordered Bell numbers, d = 1..8", [&](bool& ok) {
    std::string detail;
    for (std::size_t d = 1; d <= 8; ++d) {
      std::int64_t n = 0;
      for_each_ordered_partition(d, [&](const OrderedPartition&) { ++n; });
      ok = ok && n == ordered_bell(d);
      detail += std::to_string(n) + (d < 8 ? " " : "");
    }
    return detail;
  });

  run("blowup", "refinement is a ranked partial order, d <= 4", [&](bool& ok) {
    for (std::size_t d = 1; d <= 4; ++d) {
      const auto all = enumerate_ordered_partitions(d);
      const std::size_t n = all.size();
      std::vector<std::vector<char>> le(n, std::vector<char>(n));
      for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) le[a][b] = is_refinement(all[a], all[b]);
      }
      for (std::size_t a = 0; a < n; ++a) {
        ok = ok && le[a][a];
        for (std::size_t b = 0; b < n; ++b) {
          if (a != b && le[a][b] && le[b][a]) ok = false;
          for (std::size_t c = 0; c < n; ++c) {
            if (le[a][b] && le[b][c] && !le[a][c]) ok = false;
          }
          if (a != b && le[a][b]) {
            bool covers = true;
            for (std::size_t c = 0; c < n && covers; ++c) {
              if (c != a && c != b && le[a][c] && le[c][b]) covers = false;
            }
            if (covers && all[a].size() != all[b].size() + 1) ok = false;
            if (all[a].face_dimension() > all[b].face_dimension()) ok = false;
          }
        }
      }
    }
    return "";
  });

  run("blowup", "chain <-> partition round trip, d <= 5", [&](bool& ok) {
    for (std::size_t d = 1; d <= 5; ++d) {
      for_each_ordered_partition(d, [&](const OrderedPartition& p) { ok = ok && to_partition(to_chain(p)) == p; });
    }
    return "";
  });

  run("blowup", "pi o rho = id exactly, rho o pi = id, members at 1e-12, all partitions d <= 4", [&](bool& ok) {
    double worst_rho = 0.0, worst_member = 0.0;
    std::size_t cases = 0;
    for (std::size_t d = 1; d <= 4; ++d) {
      const Spectrum spec = rs.spectrum(d);
      for_each_ordered_partition(d, [&](const OrderedPartition& p) {
        const DistributionSequence seq = rs.sequence(spec, p);
        const BlowupPoint pt = rho(seq);
        const MembershipReport m = is_member(pt, 1e-12);
        worst_member = std::max(worst_member, m.max_residual);
        ok = ok && m.member && pi(pt) == seq && face_of(pt) == p;
        const BlowupPoint a = normalize_affine(rho(pi(pt)));
        worst_rho = std::max(worst_rho, point_distance(a, normalize_affine(pt)));
        ++cases;
      });
    }
    ok = ok && worst_rho < 1e-12;
    return std::to_string(cases) + " partitions; rho o pi " + detail::fmt(worst_rho) + "; residual " +
           detail::fmt(worst_member);
  });

  run("blowup", "membership rejects perturbed and mixed-sign points", [&](bool& ok) {
    const Spectrum spec({-1.0, 0.5, 2.0});
    const BlowupPoint pt = rho(DistributionSequence({Distribution::full(spec, {0.2, 0.3, 0.5})}));
    auto blocks = pt.blocks();
    blocks[full_set(3)][0] *= 1.0 + 1e-3;
    ok = !is_member(BlowupPoint(spec, blocks), 1e-6).member;
    blocks = pt.blocks();
    blocks[make_set({0, 1})][1] = -blocks[make_set({0, 1})][1];
    ok = ok && !is_member(BlowupPoint(spec, blocks), 1e-6).member;
    return "";
  });

  run("blowup", "coordinate count and ambient dimension, d <= 12", [&](bool& ok) {
    for (std::size_t d = 1; d <= 12; ++d) {
      std::int64_t entries = 0, dim = 0;
      for (IndexSet s = 1; s <= full_set(d); ++s) {
        entries += static_cast<std::int64_t>(set_size(s));
        dim += static_cast<std::int64_t>(set_size(s)) - 1;
      }
      ok = ok && entries == coordinate_count(d) && dim == ambient_dimension(d);
    }
    for (std::size_t d = 1; d <= 6; ++d) {
      ok = ok && barycentre(OrderedPartition::trivial(d), rs.spectrum(d)).entry_count() ==
                     static_cast<std::size_t>(coordinate_count(d));
    }
    return "";
  });

  run("blowup", "barycentres lie on their own faces; normalize_affine idempotent", [&](bool& ok) {
    for (std::size_t d = 1; d <= 4; ++d) {
      const Spectrum spec = rs.spectrum(d);
      for_each_ordered_partition(d, [&](const OrderedPartition& p) {
        const BlowupPoint b = barycentre(p, spec);
        ok = ok && face_of(b) == p && normalize_affine(b) == b;
      });
    }
    return "";
  });

  // limits

  run("limits", "three-point splitting example", [&](bool& ok) {
    const Spectrum spec({0.0, 1.0, 2.0});
    const MomentCurve curve(DistributionSequence({Distribution(spec, {0}, {1.0}), Distribution(spec, {1, 2}, {1.0, 1.0})}));
    const DistributionSequence want({Distribution(spec, {0}, {1.0}), Distribution(spec, {1, 2}, {1.0, 4.0})});
    const auto rep = numeric_limit_report(curve, {1e-2, 1e-4, 1e-6, 1e-8, 1e-10});
    const TridiagonalMatrix hand({0.0, 9.0 / 5.0, 6.0 / 5.0}, {0.0, 2.0 / 5.0});
    ok = limit_of_moment_curve(curve) == want && rep.error_strictly_decreasing() && rep.rows.back().error < 1e-3 &&
         max_abs_difference(rep.limit_matrix, hand) < 1e-15;
    return "E(1e-10) = " + detail::fmt(rep.rows.back().error);
  });

  run("limits", "random curves: E(t) and tracked couplings decay, d <= 5, r >= 2", [&](bool& ok) {
    double worst_e = 0.0, worst_c = 0.0;
    std::string first_bad;
    for (std::size_t c = 0; c < 20; ++c) {
      const std::size_t d = rs.index(2, 5);
      const MomentCurve curve = rs.curve(d, rs.index(2, d));
      const auto rep = numeric_limit_report(curve, default_t_grid());
      bool mono = rep.error_strictly_decreasing();
      for (std::size_t k = 1; k < rep.rows.size(); ++k) {
        mono = mono && *rep.rows[k].first_coupling < *rep.rows[k - 1].first_coupling &&
               *rep.rows[k].last_coupling < *rep.rows[k - 1].last_coupling;
      }
      if (!mono && first_bad.empty()) first_bad = "; not monotone on curve " + std::to_string(c + 1) + " " + curve.partition().to_string();
      ok = ok && mono;
      worst_e = std::max(worst_e, rep.rows.back().error);
      worst_c = std::max({worst_c, *rep.rows.back().first_coupling, *rep.rows.back().last_coupling});
    }
    ok = ok && worst_e < 1e-3 && worst_c < 1e-3;
    return "E(1e-10) <= " + detail::fmt(worst_e) + ", couplings <= " + detail::fmt(worst_c) + first_bad;
  });

  run("limits", "closed-form limit equals pi of the limit of rho along the curve", [&](bool& ok) {
    double worst_pt = 0.0, worst_seq = 0.0;
    for (std::size_t c = 0; c < 20; ++c) {
      const std::size_t d = rs.index(2, 4);
      const MomentCurve curve = rs.curve(d, rs.index(1, d));
      const DistributionSequence lim = limit_of_moment_curve(curve);
      worst_pt = std::max(worst_pt, point_distance(blowup_along_curve(curve, 1e-8), normalize_affine(rho(lim))));
      worst_seq = std::max(worst_seq, sequence_distance(pi(blowup_along_curve(curve, 1e-14)), lim));
    }
    ok = worst_pt < 1e-6 && worst_seq < 1e-6;
    return "coordinates " + detail::fmt(worst_pt) + ", sequences " + detail::fmt(worst_seq);
  });

  run("limits", "classify_stable: curve exponents and flipped exponents", [&](bool& ok) {
    for (std::size_t c = 0; c < 20; ++c) {
      const std::size_t d = rs.index(1, 6);
      const MomentCurve curve = rs.curve(d, rs.index(1, d));
      const OrderedPartition p = curve.partition();
      const ExponentWeights ew = exponents_of(curve);
      std::vector<IndexSet> rev(p.blocks().rbegin(), p.blocks().rend());
      ok = ok && classify_stable(ew) == p &&
           classify_stable(flip_exponents(ew, curve.spectrum())) == OrderedPartition(d, rev);
    }
    return "";
  });

  run("limits", "moment_curve_towards inverts the limit", [&](bool& ok) {
    double worst = 0.0;
    for (std::size_t c = 0; c < 20; ++c) {
      const std::size_t d = rs.index(1, 6);
      const Spectrum spec = rs.spectrum(d);
      const DistributionSequence seq = rs.sequence(spec, rs.partition(d, rs.index(1, d)));
      worst = std::max(worst, sequence_distance(limit_of_moment_curve(moment_curve_towards(seq)), seq));
    }
    ok = worst < 1e-12;
    return "worst " + detail::fmt(worst);
  });

  run("limits", "exponent fit recovers a moment curve's partition", [&](bool& ok) {
    for (std::size_t c = 0; c < 10; ++c) {
      const std::size_t d = rs.index(2, 5);
      const MomentCurve curve = rs.curve(d, rs.index(1, d));
      std::vector<double> ts;
      std::vector<std::vector<double>> samples;
      for (double t = 1e-3; t > 1e-9; t /= 10.0) {
        ts.push_back(t);
        const Distribution w = moment_curve_eval(curve, t);
        samples.emplace_back(w.weights().begin(), w.weights().end());
      }
      ok = ok && classify_stable(fit_exponents(ts, samples), 0.1) == curve.partition();
    }
    return "";
  });

  // permutacomplex

  run("permutacomplex", "vertex sets: d! vertices on the plane sum = d(d+1)/2; vertex faces", [&](bool& ok) {
    for (std::size_t d = 1; d <= 6; ++d) {
      const auto verts = permutahedron_vertices(d);
      ok = ok && static_cast<std::int64_t>(verts.size()) == factorial(d);
      for (const auto& v : verts) {
        ok = ok && std::accumulate(v.begin(), v.end(), 0) == static_cast<int>(d * (d + 1) / 2);
        ok = ok && face_vertices(vertex_face(v)) == std::vector<Permutation>{v};
      }
    }
    return "";
  });

  run("permutacomplex", "vertex-set containment matches refinement, d <= 4", [&](bool& ok) {
    std::size_t pairs = 0;
    for (std::size_t d = 1; d <= 4; ++d) {
      const auto faces = faces_of_permutahedron(d);
      std::set<std::vector<Permutation>> distinct;
      for (const auto& f : faces) distinct.insert(*f.vertices);
      ok = ok && distinct.size() == faces.size();
      for (const auto& a : faces) {
        for (const auto& b : faces) {
          const bool sub = std::includes(b.vertices->begin(), b.vertices->end(), a.vertices->begin(), a.vertices->end());
          ok = ok && sub == is_refinement(a.partition, b.partition);
          ++pairs;
        }
      }
    }
    return std::to_string(pairs) + " pairs";
  });

  run("permutacomplex", "face counts of P_d and P-bar_d, d <= 6", [&](bool& ok) {
    for (std::size_t d = 1; d <= 6; ++d) {
      std::vector<std::int64_t> pd(d, 0);
      for (const auto& f : faces_of_permutahedron(d, false)) ++pd[f.dimension()];
      const PolyhedralComplex cx = build_complex(d);
      const auto fv = cx.face_vector();
      std::int64_t total = 0;
      for (std::size_t n = 0; n < d; ++n) {
        ok = ok && pd[n] == face_count(d, n) && fv[n] == complex_face_count(d, n);
        total += fv[n];
      }
      std::int64_t formula = 0;
      for (std::size_t q = 1; q <= d; ++q) formula += (std::int64_t{1} << (d - q)) * factorial(q) * stirling2(d, q);
      ok = ok && total == formula && fv[0] == factorial(d) && fv[d - 1] == (std::int64_t{1} << (d - 1));
      for (std::size_t id = 0; id < cx.size(); ++id) {
        for (std::size_t sub : cx.facets(id)) ok = ok && cx[sub].dimension() + 1 == cx[id].dimension();
      }
    }
    return "";
  });

  run("permutacomplex", "Euler characteristic: formula, enumeration, tanh, Eulerian polynomial", [&](bool& ok) {
    const std::vector<std::int64_t> expect{1, 0, -2, 0, 16, 0, -272, 0, 7936, 0};
    std::string row;
    for (std::size_t d = 1; d <= 10; ++d) {
      const std::int64_t chi = euler_characteristic(d);
      ok = ok && chi == expect[d - 1] && chi == euler_characteristic_tanh(d) && chi == euler_characteristic_eulerian(d);
      if (d <= 6) ok = ok && build_complex(d).euler_characteristic() == chi;
      row += std::to_string(chi) + (d < 10 ? " " : "");
    }
    return row;
  });

  run("permutacomplex", "surface diagnostics d = 1, 2, 3", [&](bool& ok) {
    std::string detail;
    for (std::size_t d = 1; d <= 3; ++d) {
      const SurfaceReport rep = surface_report(build_complex(d));
      ok = ok && rep.passed();
      if (d == 3) {
        ok = ok && rep.face_vector == std::vector<std::int64_t>{6, 12, 4} &&
             std::all_of(rep.vertex_degrees.begin(), rep.vertex_degrees.end(), [](std::size_t k) { return k == 4; });
        detail = "chi " + std::to_string(rep.euler);
      }
    }
    return detail;
  });

  run("permutacomplex", "Petrie polygon of P-bar_3 covers every edge", [&](bool& ok) {
    const PolyhedralComplex cx = build_complex(3);
    const PetriePolygon pp = petrie_polygon(cx);
    const std::set<std::size_t> covered(pp.edges.begin(), pp.edges.end());
    ok = covered.size() == cx.faces_of_dimension(1).size();
    const std::size_t n = pp.edges.size();
    for (std::size_t k = 0; k < n; ++k) {
      const auto& f1 = cx.cofacets(pp.edges[k]);
      const auto& f2 = cx.cofacets(pp.edges[(k + 1) % n]);
      const auto& f3 = cx.cofacets(pp.edges[(k + 2) % n]);
      std::vector<std::size_t> two, three;
      std::set_intersection(f1.begin(), f1.end(), f2.begin(), f2.end(), std::back_inserter(two));
      std::set_intersection(two.begin(), two.end(), f3.begin(), f3.end(), std::back_inserter(three));
      ok = ok && two.size() == 1 && three.empty();
    }
    return "length " + std::to_string(n) + ", " + std::to_string(covered.size()) + " distinct edges";
  });

  return out;
}

}  // namespace isospec
