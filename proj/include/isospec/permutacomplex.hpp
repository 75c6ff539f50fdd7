#pragma once

// Faces of the permutahedron P_d named by ordered partitions, and the complex
// P-bar_d obtained by gluing 2^d sign-labelled copies of P_d. A face of
// P-bar_d is an ordered partition together with a sign class.
//
// On a face named (S_1, ..., S_q) the matrix is a direct sum J_1 (+) ... (+) J_q
// with J_j occupying the consecutive rows R_j of size |S_j|. Conjugating by
// diag(eps) sees eps only up to a sign on each R_j, so classes are taken
// modulo flips of those row ranges, not of the sets S_j themselves.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "isospec/combinatorics.hpp"
#include "isospec/errors.hpp"
#include "isospec/partitions.hpp"

namespace isospec {

/// One-line notation (sigma(1), ..., sigma(d)), values 1..d.
using Permutation = std::vector<int>;

/// All d! points (sigma(1), ..., sigma(d)) in lexicographic order; 1 <= d <= 9.
inline std::vector<Permutation> permutahedron_vertices(std::size_t d) {
  if (d < 1 || d > 9) throw InvalidInput("permutahedron_vertices needs 1 <= d <= 9");
  Permutation sigma(d);
  std::iota(sigma.begin(), sigma.end(), 1);
  std::vector<Permutation> out;
  do {
    out.push_back(sigma);
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return out;
}

/// Vertices of the face named (T_1, ..., T_r): sigma maps T_1 onto {1..|T_1|},
/// T_2 onto the next |T_2| values, and so on. Sorted lexicographically.
inline std::vector<Permutation> face_vertices(const OrderedPartition& p) {
  const std::size_t d = p.dimension();
  std::vector<Permutation> out{Permutation(d, 0)};
  int next_value = 1;
  for (IndexSet block : p.blocks()) {
    const auto idx = members(block);
    std::vector<int> values(idx.size());
    std::iota(values.begin(), values.end(), next_value);
    next_value += static_cast<int>(idx.size());
    std::vector<Permutation> grown;
    for (const Permutation& partial : out) {
      std::vector<int> v(values);
      do {
        Permutation s(partial);
        for (std::size_t k = 0; k < idx.size(); ++k) s[idx[k]] = v[k];
        grown.push_back(std::move(s));
      } while (std::next_permutation(v.begin(), v.end()));
    }
    out = std::move(grown);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// The vertex face of sigma: ({sigma^{-1}(1)}, ..., {sigma^{-1}(d)}).
inline OrderedPartition vertex_face(const Permutation& sigma) {
  const std::size_t d = sigma.size();
  std::vector<IndexSet> blocks(d, 0);
  for (std::size_t i = 0; i < d; ++i) {
    if (sigma[i] < 1 || static_cast<std::size_t>(sigma[i]) > d || blocks[sigma[i] - 1] != 0) {
      throw InvalidInput("not a permutation");
    }
    blocks[sigma[i] - 1] = singleton(i);
  }
  return OrderedPartition(d, std::move(blocks));
}

/// The permutation at a vertex face (inverse of vertex_face).
inline Permutation vertex_permutation(const OrderedPartition& p) {
  if (p.size() != p.dimension()) throw InvalidInput("not a vertex: some block has more than one element");
  Permutation sigma(p.dimension());
  for (std::size_t k = 0; k < p.size(); ++k) sigma[min_index(p[k])] = static_cast<int>(k + 1);
  return sigma;
}

struct PermutahedronFace {
  OrderedPartition partition;
  std::optional<std::vector<Permutation>> vertices;

  std::size_t dimension() const { return partition.face_dimension(); }
};

/// One face per ordered partition of [d] (d <= 8), in enumeration order.
inline std::vector<PermutahedronFace> faces_of_permutahedron(std::size_t d, bool with_vertices = true) {
  if (d < 1 || d > 8) throw InvalidInput("faces_of_permutahedron needs 1 <= d <= 8");
  std::vector<PermutahedronFace> out;
  for_each_ordered_partition(d, [&](const OrderedPartition& p) {
    PermutahedronFace f{p, std::nullopt};
    if (with_vertices) f.vertices = face_vertices(p);
    out.push_back(std::move(f));
  });
  return out;
}

/// Number of n-dimensional faces of P_d: (d - n)! S(d, d - n).
inline std::int64_t face_count(std::size_t d, std::size_t n) {
  if (d < 1 || n >= d) throw InvalidInput("face_count needs 0 <= n <= d - 1");
  return detail::checked_mul(factorial(d - n), stirling2(d, d - n));
}

/// Number of n-dimensional faces of P-bar_d: 2^n (d - n)! S(d, d - n).
inline std::int64_t complex_face_count(std::size_t d, std::size_t n) {
  return detail::checked_mul(std::int64_t{1} << n, face_count(d, n));
}

/// sum_q (-2)^{d-q} q! S(d, q).
inline std::int64_t euler_characteristic(std::size_t d) {
  if (d < 1) throw InvalidInput("d must be at least 1");
  std::int64_t total = 0;
  for (std::size_t q = 1; q <= d; ++q) {
    std::int64_t term = detail::checked_mul(factorial(q), stirling2(d, q));
    for (std::size_t k = q; k < d; ++k) term = detail::checked_mul(term, -2);
    total = detail::checked_add(total, term);
  }
  return total;
}

/// d! [x^d] tanh x.
inline std::int64_t euler_characteristic_tanh(std::size_t d) { return tanh_coefficient(d); }

/// -p_d(-1) for p_d(x) = sum_k A(d, k) x^{k+1}, i.e. the Eulerian polynomial at -1.
inline std::int64_t euler_characteristic_eulerian(std::size_t d) { return eulerian_polynomial_at(d, -1); }

/// Sign vector as a bitmask: bit i set means eps_i = -1.
using SignMask = std::uint32_t;

/// Row ranges R_1, ..., R_q: consecutive positions of sizes |S_1|, ..., |S_q|.
inline std::vector<IndexSet> row_ranges(const OrderedPartition& p) {
  std::vector<IndexSet> out;
  std::size_t start = 0;
  for (IndexSet block : p.blocks()) {
    const std::size_t len = set_size(block);
    out.push_back(static_cast<IndexSet>(((std::uint64_t{1} << len) - 1) << start));
    start += len;
  }
  return out;
}

/// Canonical representative of the class of eps: +1 at the first row of every range.
inline SignMask canonical_signs(const OrderedPartition& p, SignMask eps) {
  for (IndexSet range : row_ranges(p)) {
    if (contains(eps, min_index(range))) eps ^= range;
  }
  return eps;
}

inline std::vector<int> sign_vector(SignMask eps, std::size_t d) {
  std::vector<int> out(d);
  for (std::size_t i = 0; i < d; ++i) out[i] = contains(eps, i) ? -1 : 1;
  return out;
}

/// Canonical masks for p, ascending; 2^{d - q} of them for q blocks.
inline std::vector<SignMask> sign_classes(const OrderedPartition& p) {
  IndexSet free = full_set(p.dimension());
  for (IndexSet range : row_ranges(p)) free &= ~singleton(min_index(range));
  std::vector<SignMask> out;
  for (SignMask m = 0;; m = (m - free) & free) {
    out.push_back(m);
    if (m == free) break;
  }
  return out;
}

struct ComplexFace {
  OrderedPartition partition;
  SignMask signs = 0;

  std::size_t dimension() const { return partition.face_dimension(); }

  friend bool operator==(const ComplexFace&, const ComplexFace&) = default;
  friend auto operator<=>(const ComplexFace&, const ComplexFace&) = default;
};

/// big contains small iff small's partition refines big's and big's class
/// lies inside small's class.
inline bool complex_contains(const ComplexFace& big, const ComplexFace& small) {
  return is_refinement(small.partition, big.partition) && canonical_signs(small.partition, big.signs) == small.signs;
}

/// P-bar_d with codimension-one incidence.
class PolyhedralComplex {
 public:
  std::size_t dimension() const { return d_; }
  std::size_t size() const { return faces_.size(); }
  const ComplexFace& operator[](std::size_t id) const { return faces_[id]; }
  const std::vector<ComplexFace>& faces() const { return faces_; }
  /// Ids of codimension-one faces of face id.
  const std::vector<std::size_t>& facets(std::size_t id) const { return facets_[id]; }
  /// Ids of faces having face id as a codimension-one face.
  const std::vector<std::size_t>& cofacets(std::size_t id) const { return cofacets_[id]; }

  std::optional<std::size_t> find(const ComplexFace& f) const {
    auto it = index_.find(f);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  bool contains(std::size_t big, std::size_t small) const { return complex_contains(faces_[big], faces_[small]); }

  /// Number of faces in each dimension 0..d-1.
  std::vector<std::int64_t> face_vector() const {
    std::vector<std::int64_t> out(d_, 0);
    for (const auto& f : faces_) ++out[f.dimension()];
    return out;
  }

  std::vector<std::size_t> faces_of_dimension(std::size_t n) const {
    std::vector<std::size_t> out;
    for (std::size_t id = 0; id < faces_.size(); ++id) {
      if (faces_[id].dimension() == n) out.push_back(id);
    }
    return out;
  }

  /// Alternating sum of the face vector.
  std::int64_t euler_characteristic() const {
    std::int64_t chi = 0;
    const auto fv = face_vector();
    for (std::size_t n = 0; n < fv.size(); ++n) chi += (n % 2 == 0 ? 1 : -1) * fv[n];
    return chi;
  }

 private:
  friend PolyhedralComplex build_complex(std::size_t d);

  std::size_t d_ = 0;
  std::vector<ComplexFace> faces_;
  std::vector<std::vector<std::size_t>> facets_;
  std::vector<std::vector<std::size_t>> cofacets_;
  std::map<ComplexFace, std::size_t> index_;
};

/// Faces in partition enumeration order, then ascending sign representative; d <= 6.
inline PolyhedralComplex build_complex(std::size_t d) {
  if (d < 1 || d > 6) throw InvalidInput("build_complex needs 1 <= d <= 6");
  PolyhedralComplex cx;
  cx.d_ = d;
  for_each_ordered_partition(d, [&](const OrderedPartition& p) {
    for (SignMask m : sign_classes(p)) {
      cx.index_.emplace(ComplexFace{p, m}, cx.faces_.size());
      cx.faces_.push_back(ComplexFace{p, m});
    }
  });
  cx.facets_.assign(cx.faces_.size(), {});
  cx.cofacets_.assign(cx.faces_.size(), {});
  for (std::size_t id = 0; id < cx.faces_.size(); ++id) {
    const ComplexFace& f = cx.faces_[id];
    const auto& blocks = f.partition.blocks();
    for (std::size_t j = 0; j < blocks.size(); ++j) {
      const IndexSet b = blocks[j];
      for (IndexSet a = (b - 1) & b; a != 0; a = (a - 1) & b) {
        std::vector<IndexSet> split(blocks.begin(), blocks.begin() + static_cast<std::ptrdiff_t>(j));
        split.push_back(a);
        split.push_back(b & ~a);
        split.insert(split.end(), blocks.begin() + static_cast<std::ptrdiff_t>(j + 1), blocks.end());
        OrderedPartition finer(d, std::move(split));
        const SignMask m = canonical_signs(finer, f.signs);
        const std::size_t sub = cx.index_.at(ComplexFace{std::move(finer), m});
        cx.facets_[id].push_back(sub);
        cx.cofacets_[sub].push_back(id);
      }
    }
    std::sort(cx.facets_[id].begin(), cx.facets_[id].end());
  }
  for (auto& c : cx.cofacets_) std::sort(c.begin(), c.end());
  return cx;
}

struct SurfaceCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct SurfaceReport {
  std::size_t d = 0;
  std::vector<std::int64_t> face_vector;
  std::int64_t euler = 0;
  /// Number of edges at each vertex.
  std::vector<std::size_t> vertex_degrees;
  std::vector<SurfaceCheck> checks;

  bool passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const SurfaceCheck& c) { return c.passed; });
  }
  /// Genus of a closed orientable surface with this Euler characteristic. The
  /// checks here do not certify orientability; that identification is cited.
  std::optional<std::int64_t> genus() const {
    if (d != 3 || !passed()) return std::nullopt;
    return (2 - euler) / 2;
  }
};

namespace detail {

inline bool connected_by_edges(const PolyhedralComplex& cx) {
  const auto verts = cx.faces_of_dimension(0);
  if (verts.empty()) return false;
  std::map<std::size_t, std::size_t> pos;
  for (std::size_t k = 0; k < verts.size(); ++k) pos[verts[k]] = k;
  std::vector<std::size_t> parent(verts.size());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto root = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t e : cx.faces_of_dimension(1)) {
    const auto& ends = cx.facets(e);
    if (ends.size() != 2) return false;
    parent[root(pos.at(ends[0]))] = root(pos.at(ends[1]));
  }
  const std::size_t r = root(0);
  for (std::size_t k = 0; k < verts.size(); ++k) {
    if (root(k) != r) return false;
  }
  return true;
}

}  // namespace detail

/// Closed-surface diagnostics for d = 3, circle diagnostics for d = 2, and the
/// single point for d = 1.
inline SurfaceReport surface_report(const PolyhedralComplex& cx) {
  const std::size_t d = cx.dimension();
  if (d < 1 || d > 3) throw InvalidInput("surface_report handles d = 1, 2, 3");
  SurfaceReport rep;
  rep.d = d;
  rep.face_vector = cx.face_vector();
  rep.euler = cx.euler_characteristic();
  for (std::size_t v : cx.faces_of_dimension(0)) rep.vertex_degrees.push_back(cx.cofacets(v).size());

  if (d == 1) {
    rep.checks.push_back({"single point", rep.face_vector == std::vector<std::int64_t>{1}, ""});
    return rep;
  }

  rep.checks.push_back({"connected", detail::connected_by_edges(cx), ""});

  if (d == 2) {
    bool two = std::all_of(rep.vertex_degrees.begin(), rep.vertex_degrees.end(), [](std::size_t k) { return k == 2; });
    rep.checks.push_back({"every vertex in exactly two edges", two, ""});
    rep.checks.push_back({"euler characteristic 0", rep.euler == 0, std::to_string(rep.euler)});
    return rep;
  }

  std::string bad_edge;
  for (std::size_t e : cx.faces_of_dimension(1)) {
    if (cx.cofacets(e).size() != 2 && bad_edge.empty()) {
      bad_edge = "edge " + std::to_string(e) + " lies in " + std::to_string(cx.cofacets(e).size()) + " faces";
    }
  }
  rep.checks.push_back({"every edge in exactly two 2-faces", bad_edge.empty(), bad_edge});

  // Link of v: nodes are the edges at v, one link edge per 2-face at v
  // joining its two edges through v. A single cycle means every node has
  // degree 2 and the link graph is connected.
  std::string bad_link;
  std::size_t link_length = 0;
  for (std::size_t v : cx.faces_of_dimension(0)) {
    const auto& edges = cx.cofacets(v);
    std::map<std::size_t, std::vector<std::size_t>> adj;
    for (std::size_t e : edges) adj[e];
    std::set<std::size_t> faces_at_v;
    for (std::size_t e : edges) {
      for (std::size_t f : cx.cofacets(e)) faces_at_v.insert(f);
    }
    for (std::size_t f : faces_at_v) {
      std::vector<std::size_t> ends;
      for (std::size_t e : cx.facets(f)) {
        if (adj.count(e)) ends.push_back(e);
      }
      if (ends.size() != 2) {
        bad_link = "face " + std::to_string(f) + " meets vertex " + std::to_string(v) + " in " +
                   std::to_string(ends.size()) + " edges";
        break;
      }
      adj[ends[0]].push_back(ends[1]);
      adj[ends[1]].push_back(ends[0]);
    }
    if (!bad_link.empty()) break;
    bool cycle = std::all_of(adj.begin(), adj.end(), [](const auto& kv) { return kv.second.size() == 2; });
    if (cycle) {
      std::set<std::size_t> seen{adj.begin()->first};
      std::vector<std::size_t> stack{adj.begin()->first};
      while (!stack.empty()) {
        const std::size_t x = stack.back();
        stack.pop_back();
        for (std::size_t y : adj[x]) {
          if (seen.insert(y).second) stack.push_back(y);
        }
      }
      cycle = seen.size() == adj.size();
    }
    if (!cycle) {
      bad_link = "link of vertex " + std::to_string(v) + " is not a single cycle";
      break;
    }
    if (link_length == 0) link_length = adj.size();
    if (adj.size() != link_length) {
      bad_link = "vertex links differ in length";
      break;
    }
  }
  rep.checks.push_back({"every vertex link is one cycle", bad_link.empty(),
                        bad_link.empty() ? "cycle length " + std::to_string(link_length) : bad_link});
  rep.checks.push_back({"euler characteristic -2", rep.euler == -2, std::to_string(rep.euler)});
  return rep;
}

/// (vertex, edge, 2-face) with vertex in edge in face.
struct Flag {
  std::size_t vertex = 0;
  std::size_t edge = 0;
  std::size_t face = 0;

  friend bool operator==(const Flag&, const Flag&) = default;
};

struct PetriePolygon {
  /// Closed edge sequence: edges[k] and edges[k+1] (cyclically) share faces[k].
  std::vector<std::size_t> edges;
  std::vector<std::size_t> faces;
  Flag start;

  std::size_t length() const { return edges.size(); }
};

namespace detail {

inline std::size_t other_of(const std::vector<std::size_t>& pair, std::size_t x, const char* what) {
  std::size_t hits = 0, out = 0;
  for (std::size_t y : pair) {
    if (y == x) {
      ++hits;
    } else {
      out = y;
    }
  }
  if (pair.size() != 2 || hits != 1) throw InvalidInput(std::string("not a closed surface: ") + what);
  return out;
}

}  // namespace detail

/// Zig-zag walk on the d = 3 surface: from flag (v, e, f) move to the other
/// end of e, turn to the other edge of f at that vertex, then cross that edge
/// into the neighbouring face. Stops when the start flag recurs.
inline PetriePolygon petrie_polygon(const PolyhedralComplex& cx, std::optional<Flag> start = std::nullopt) {
  if (cx.dimension() != 3) throw InvalidInput("petrie_polygon needs the d = 3 complex");
  Flag flag;
  if (start) {
    flag = *start;
    auto has = [&](std::size_t big, std::size_t small) {
      return big < cx.size() && std::ranges::binary_search(cx.facets(big), small);
    };
    if (!has(flag.edge, flag.vertex) || !has(flag.face, flag.edge) || cx[flag.vertex].dimension() != 0) {
      throw InvalidInput("start is not a flag");
    }
  } else {
    flag.vertex = cx.faces_of_dimension(0).front();
    flag.edge = cx.cofacets(flag.vertex).front();
    flag.face = cx.cofacets(flag.edge).front();
  }

  auto edges_at = [&](std::size_t face, std::size_t vertex) {
    std::vector<std::size_t> out;
    for (std::size_t e : cx.facets(face)) {
      if (std::ranges::binary_search(cx.facets(e), vertex)) out.push_back(e);
    }
    return out;
  };

  PetriePolygon poly;
  poly.start = flag;
  const std::size_t limit = 4 * cx.size();
  do {
    poly.edges.push_back(flag.edge);
    flag.vertex = detail::other_of(cx.facets(flag.edge), flag.vertex, "edge without two ends");
    flag.edge = detail::other_of(edges_at(flag.face, flag.vertex), flag.edge, "face corner without two edges");
    poly.faces.push_back(flag.face);
    flag.face = detail::other_of(cx.cofacets(flag.edge), flag.face, "edge not in exactly two faces");
    if (poly.edges.size() > limit) throw NumericFailure("petrie walk did not close");
  } while (!(flag == poly.start));
  return poly;
}

/// Cyclic vertex order around a 2-face.
inline std::vector<std::size_t> face_cycle(const PolyhedralComplex& cx, std::size_t face) {
  if (cx[face].dimension() != 2) throw InvalidInput("face_cycle needs a 2-face");
  const auto& edges = cx.facets(face);
  std::vector<std::size_t> cycle{cx.facets(edges.front())[0]};
  std::size_t edge = edges.front();
  while (true) {
    const std::size_t next = detail::other_of(cx.facets(edge), cycle.back(), "edge without two ends");
    if (next == cycle.front()) break;
    cycle.push_back(next);
    std::size_t follow = edge;
    for (std::size_t e : edges) {
      if (e != edge && std::ranges::binary_search(cx.facets(e), next)) follow = e;
    }
    if (follow == edge || cycle.size() > edges.size()) throw InvalidInput("face boundary is not a cycle");
    edge = follow;
  }
  return cycle;
}

/// OFF file for the d = 3 surface: the six permutahedron vertices and one
/// hexagon per 2-face. Distinct faces share vertex lists (their edges differ
/// only by sign class), so a comment line names each face.
inline std::string write_off(const PolyhedralComplex& cx) {
  if (cx.dimension() != 3) throw InvalidInput("OFF export is for the d = 3 surface");
  const auto verts = cx.faces_of_dimension(0);
  const auto faces = cx.faces_of_dimension(2);
  std::map<std::size_t, std::size_t> pos;
  std::ostringstream os;
  os << "OFF\n" << verts.size() << ' ' << faces.size() << ' ' << cx.faces_of_dimension(1).size() << '\n';
  for (std::size_t k = 0; k < verts.size(); ++k) {
    pos[verts[k]] = k;
    const Permutation sigma = vertex_permutation(cx[verts[k]].partition);
    for (std::size_t i = 0; i < sigma.size(); ++i) os << (i ? " " : "") << sigma[i];
    os << '\n';
  }
  for (std::size_t f : faces) {
    os << "# " << cx[f].partition.to_string() << " signs";
    for (int s : sign_vector(cx[f].signs, 3)) os << ' ' << (s > 0 ? '+' : '-');
    os << '\n';
    const auto cycle = face_cycle(cx, f);
    os << cycle.size();
    for (std::size_t v : cycle) os << ' ' << pos.at(v);
    os << '\n';
  }
  return os.str();
}

}  // namespace isospec
