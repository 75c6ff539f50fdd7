#pragma once

// JSON records for every value type. Indices in files are 1-based; everything
// is converted to 0-based here and nowhere else.
//
//   distribution  {"lambda": [...], "support": [...], "weights": [...]}   (support optional = all)
//   matrix        {"diag": [...], "offdiag": [...]}
//   sequence      {"lambda": [...], "parts": [{"support": [...], "weights": [...]}, ...]}
//   blow-up point {"lambda": [...], "blocks": [{"subset": [...], "values": [...]}, ...]}
//
// Doubles are written in shortest round-trip form, so reading back is exact.

#include <cstddef>
#include <fstream>
#include <iterator>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "isospec/blowup.hpp"
#include "isospec/errors.hpp"
#include "isospec/limits.hpp"
#include "isospec/partitions.hpp"
#include "isospec/permutacomplex.hpp"
#include "isospec/types.hpp"

namespace isospec::io {

using Json = nlohmann::ordered_json;

inline Json parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InvalidInput(std::string("malformed JSON: ") + e.what());
  }
}

inline Json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path);
  return parse(std::string(std::istreambuf_iterator<char>(in), {}));
}

namespace detail {

inline const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InvalidInput(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

inline std::vector<double> reals(const Json& j, const char* what) {
  if (!j.is_array()) throw InvalidInput(std::string(what) + " must be an array of numbers");
  std::vector<double> out;
  for (const auto& v : j) {
    if (!v.is_number()) throw InvalidInput(std::string(what) + " must contain only numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

inline std::vector<std::size_t> indices(const Json& j, const char* what) {
  if (!j.is_array()) throw InvalidInput(std::string(what) + " must be an array of indices");
  std::vector<std::size_t> out;
  for (const auto& v : j) {
    if (!v.is_number_integer() || v.get<long long>() < 1) {
      throw InvalidInput(std::string(what) + " must contain 1-based positive integers");
    }
    out.push_back(static_cast<std::size_t>(v.get<long long>() - 1));
  }
  return out;
}

inline Json one_based(std::span<const std::size_t> idx) {
  Json out = Json::array();
  for (std::size_t i : idx) out.push_back(i + 1);
  return out;
}

inline Json one_based(IndexSet s) {
  const auto m = members(s);
  return one_based(std::span<const std::size_t>(m));
}

inline Json array_of(std::span<const double> v) {
  Json out = Json::array();
  for (double x : v) out.push_back(x);
  return out;
}

}  // namespace detail

inline Spectrum spectrum_from_json(const Json& j) { return Spectrum(detail::reals(detail::field(j, "lambda"), "lambda")); }

inline Json to_json(const Spectrum& s) { return detail::array_of(s.values()); }

inline Distribution distribution_from_json(const Json& j) {
  Spectrum spec = spectrum_from_json(j);
  auto w = detail::reals(detail::field(j, "weights"), "weights");
  if (!j.contains("support")) return Distribution::full(std::move(spec), std::move(w));
  return Distribution(std::move(spec), detail::indices(j.at("support"), "support"), std::move(w));
}

inline Json to_json(const Distribution& d) {
  Json out;
  out["lambda"] = to_json(d.spectrum());
  out["support"] = detail::one_based(d.support());
  out["weights"] = detail::array_of(d.weights());
  return out;
}

inline TridiagonalMatrix matrix_from_json(const Json& j) {
  return TridiagonalMatrix(detail::reals(detail::field(j, "diag"), "diag"),
                           detail::reals(detail::field(j, "offdiag"), "offdiag"));
}

inline Json to_json(const TridiagonalMatrix& t) {
  Json out;
  out["diag"] = detail::array_of(t.diag());
  out["offdiag"] = detail::array_of(t.offdiag());
  return out;
}

inline DistributionSequence sequence_from_json(const Json& j) {
  const Spectrum spec = spectrum_from_json(j);
  const Json& parts = detail::field(j, "parts");
  if (!parts.is_array() || parts.empty()) throw InvalidInput("parts must be a nonempty array");
  std::vector<Distribution> out;
  for (const auto& p : parts) {
    out.emplace_back(spec, detail::indices(detail::field(p, "support"), "support"),
                     detail::reals(detail::field(p, "weights"), "weights"));
  }
  return DistributionSequence(std::move(out));
}

inline Json to_json(const DistributionSequence& seq) {
  Json out;
  out["lambda"] = to_json(seq.spectrum());
  Json parts = Json::array();
  for (const Distribution& d : seq.parts()) {
    Json p;
    p["support"] = detail::one_based(d.support());
    p["weights"] = detail::array_of(d.weights());
    parts.push_back(std::move(p));
  }
  out["parts"] = std::move(parts);
  return out;
}

inline MomentCurve curve_from_json(const Json& j) { return MomentCurve(sequence_from_json(j)); }

/// Reads a blow-up point without checking membership.
inline BlowupPoint blowup_point_from_json(const Json& j) {
  Spectrum spec = spectrum_from_json(j);
  const std::size_t d = spec.size();
  if (d > kMaxBlowupDimension) throw InvalidInput("blow-up points limited to d <= 16");
  const Json& blocks = detail::field(j, "blocks");
  if (!blocks.is_array()) throw InvalidInput("blocks must be an array");
  std::vector<std::vector<double>> out(std::size_t{1} << d);
  std::vector<bool> seen(out.size(), false);
  for (const auto& b : blocks) {
    const auto idx = detail::indices(detail::field(b, "subset"), "subset");
    for (std::size_t k = 1; k < idx.size(); ++k) {
      if (!(idx[k - 1] < idx[k])) throw InvalidInput("subset indices must be strictly increasing");
    }
    for (std::size_t i : idx) {
      if (i >= d) throw InvalidInput("subset index outside the spectrum");
    }
    const IndexSet s = make_set(idx);
    if (s == 0 || seen[s]) throw InvalidInput("subset " + set_to_string(s) + " empty or repeated");
    seen[s] = true;
    out[s] = detail::reals(detail::field(b, "values"), "values");
  }
  for (std::size_t s = 1; s < out.size(); ++s) {
    if (!seen[s]) throw InvalidInput("missing block for subset " + set_to_string(static_cast<IndexSet>(s)));
  }
  return BlowupPoint(std::move(spec), std::move(out));
}

/// Reads a blow-up point and re-validates membership at tolerance tol.
inline BlowupPoint blowup_from_json(const Json& j, double tol = 1e-9) {
  BlowupPoint pt = blowup_point_from_json(j);
  const MembershipReport rep = is_member(pt, tol);
  if (!rep.member) throw InvalidInput("not a point of the blow-up: " + rep.violation);
  return pt;
}

inline Json to_json(const BlowupPoint& pt) {
  Json out;
  out["lambda"] = to_json(pt.spectrum());
  Json blocks = Json::array();
  for (IndexSet s : canonical_subsets(pt.dimension())) {
    Json b;
    b["subset"] = detail::one_based(s);
    b["values"] = detail::array_of(pt.block(s));
    blocks.push_back(std::move(b));
  }
  out["blocks"] = std::move(blocks);
  return out;
}

inline Json to_json(const OrderedPartition& p) {
  Json out = Json::array();
  for (IndexSet b : p.blocks()) out.push_back(detail::one_based(b));
  return out;
}

inline Json to_json(const MembershipReport& r) {
  Json out;
  out["member"] = r.member;
  out["instances_checked"] = r.instances_checked;
  out["sampled"] = r.sampled;
  out["max_residual"] = r.max_residual;
  if (!r.member) out["violation"] = r.violation;
  return out;
}

inline Json to_json(const LimitReport& r) {
  Json out;
  out["limit"] = to_json(r.limit);
  out["limit_matrix"] = to_json(r.limit_matrix);
  if (r.first_label != 0) out["tracked_entries"] = Json::array({r.first_label, r.last_label});
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    Json x;
    x["t"] = row.t;
    x["error"] = row.error;
    if (row.first_coupling) x["first_coupling"] = *row.first_coupling;
    if (row.last_coupling) x["last_coupling"] = *row.last_coupling;
    rows.push_back(std::move(x));
  }
  out["rows"] = std::move(rows);
  return out;
}

/// Face list with ids, dimensions, partitions, sign representatives and
/// codimension-one incidence pairs [face, facet].
inline Json to_json(const PolyhedralComplex& cx) {
  Json out;
  out["d"] = cx.dimension();
  Json faces = Json::array();
  Json incidence = Json::array();
  for (std::size_t id = 0; id < cx.size(); ++id) {
    Json f;
    f["id"] = id;
    f["dim"] = cx[id].dimension();
    f["partition"] = to_json(cx[id].partition);
    f["signs"] = sign_vector(cx[id].signs, cx.dimension());
    faces.push_back(std::move(f));
    for (std::size_t sub : cx.facets(id)) incidence.push_back(Json::array({id, sub}));
  }
  out["faces"] = std::move(faces);
  out["incidence"] = std::move(incidence);
  return out;
}

inline Json to_json(const SurfaceReport& r) {
  Json out;
  out["d"] = r.d;
  out["face_vector"] = r.face_vector;
  out["euler_characteristic"] = r.euler;
  out["vertex_degrees"] = r.vertex_degrees;
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    Json x;
    x["name"] = c.name;
    x["passed"] = c.passed;
    if (!c.detail.empty()) x["detail"] = c.detail;
    checks.push_back(std::move(x));
  }
  out["checks"] = std::move(checks);
  out["passed"] = r.passed();
  return out;
}

/// Pretty-printed with a trailing newline.
inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace isospec::io
