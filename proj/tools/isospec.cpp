// isospec command-line front end.
//
// Exit status: 0 ok, 2 bad input, 3 numeric failure, 4 property-suite failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "isospec/blowup.hpp"
#include "isospec/errors.hpp"
#include "isospec/io.hpp"
#include "isospec/limits.hpp"
#include "isospec/permutacomplex.hpp"
#include "isospec/spectral_core.hpp"
#include "isospec/verify.hpp"

namespace {

using isospec::io::Json;

struct Globals {
  std::string format = "human";
  std::string out;
  double tol = 1e-9;
  bool json() const { return format == "json"; }
};

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string row(const std::vector<std::string>& cells, const std::vector<int>& widths) {
  std::string out;
  for (std::size_t k = 0; k < cells.size(); ++k) {
    std::string c = cells[k];
    if (static_cast<int>(c.size()) < widths[k]) c.insert(0, static_cast<std::size_t>(widths[k]) - c.size(), ' ');
    out += (k ? "  " : "") + c;
  }
  return out + "\n";
}

std::string join(std::span<const double> v) {
  std::string out;
  for (std::size_t k = 0; k < v.size(); ++k) out += (k ? " " : "") + num(v[k]);
  return out;
}

Json read_input(const std::string& path) {
  if (path == "-") return isospec::io::parse(std::string(std::istreambuf_iterator<char>(std::cin), {}));
  return isospec::io::read_file(path);
}

void emit(const Globals& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(g.out);
  if (!f) throw isospec::InvalidInput("cannot write " + g.out);
  f << text;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw isospec::InvalidInput("cannot write " + path);
  f << text;
}

std::string human(const isospec::TridiagonalMatrix& t) {
  return "diag    " + join(t.diag()) + "\noffdiag " + join(t.offdiag()) + "\n";
}

std::string human(const isospec::Distribution& d) {
  std::string out = row({"index", "lambda", "weight"}, {5, 24, 24});
  const auto w = d.normalized_weights();
  for (std::size_t k = 0; k < d.size(); ++k) {
    out += row({std::to_string(d.support()[k] + 1), num(d.spectrum()[d.support()[k]]), num(w[k])}, {5, 24, 24});
  }
  return out;
}

std::string human(const isospec::DistributionSequence& seq) {
  std::string out;
  for (std::size_t j = 0; j < seq.size(); ++j) {
    out += "part " + std::to_string(j + 1) + "\n" + human(seq.parts()[j]);
  }
  return out;
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw isospec::InvalidInput("bad t-grid value \"" + item + "\"");
    }
  }
  isospec::check_t_grid(out);
  return out;
}

/// "5", "1..10" or "1-10".
std::pair<std::size_t, std::size_t> parse_range(const std::string& text) {
  auto to_size = [&](const std::string& s) -> std::size_t {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
      throw isospec::InvalidInput("bad dimension range \"" + text + "\"");
    }
    return std::stoul(s);
  };
  std::size_t lo = 0, hi = 0;
  if (auto p = text.find(".."); p != std::string::npos) {
    lo = to_size(text.substr(0, p));
    hi = to_size(text.substr(p + 2));
  } else if (auto q = text.find('-'); q != std::string::npos) {
    lo = to_size(text.substr(0, q));
    hi = to_size(text.substr(q + 1));
  } else {
    lo = hi = to_size(text);
  }
  if (lo < 1 || hi < lo) throw isospec::InvalidInput("bad dimension range \"" + text + "\"");
  return {lo, hi};
}

int cmd_reconstruct(const Globals& g, const std::string& path) {
  const auto t = isospec::reconstruct(isospec::io::distribution_from_json(read_input(path)));
  emit(g, g.json() ? isospec::io::dump(isospec::io::to_json(t)) : human(t));
  return 0;
}

int cmd_spectrum(const Globals& g, const std::string& path) {
  const auto d = isospec::spectral_distribution(isospec::io::matrix_from_json(read_input(path)));
  emit(g, g.json() ? isospec::io::dump(isospec::io::to_json(d)) : human(d));
  return 0;
}

int cmd_limit(const Globals& g, const std::string& path, bool report, const std::string& grid_text,
              const std::string& plot_path) {
  const auto curve = isospec::io::curve_from_json(read_input(path));
  const bool want_report = report || !grid_text.empty() || !plot_path.empty();
  const auto grid = grid_text.empty() ? isospec::default_t_grid() : parse_grid(grid_text);
  const auto rep = isospec::numeric_limit_report(curve, want_report ? grid : std::vector<double>{0.5});
  if (!plot_path.empty()) {
    std::string text = "# log10_t log10_error\n";
    for (const auto& [x, y] : rep.plot_data()) text += num(x) + " " + num(y) + "\n";
    write_file(plot_path, text);
  }
  if (g.json()) {
    Json out = isospec::io::to_json(rep);
    if (!want_report) out.erase("rows");
    if (!want_report) out.erase("tracked_entries");
    if (want_report) out["error_strictly_decreasing"] = rep.error_strictly_decreasing();
    emit(g, isospec::io::dump(out));
    return 0;
  }
  std::string text = "limit sequence\n" + human(rep.limit) + "limit matrix\n" + human(rep.limit_matrix);
  if (want_report) {
    const bool tracked = rep.first_label != 0;
    std::vector<std::string> head{"t", "E(t)"};
    if (tracked) {
      head.push_back("f_" + std::to_string(rep.first_label));
      head.push_back("f_" + std::to_string(rep.last_label));
    }
    const std::vector<int> widths{8, 24, 24, 24};
    text += "numeric report\n" + row(head, widths);
    for (const auto& r : rep.rows) {
      std::vector<std::string> cells{num(r.t), num(r.error)};
      if (tracked) {
        cells.push_back(num(*r.first_coupling));
        cells.push_back(num(*r.last_coupling));
      }
      text += row(cells, widths);
    }
    text += std::string("E(t) strictly decreasing: ") + (rep.error_strictly_decreasing() ? "yes" : "no") + "\n";
  }
  emit(g, text);
  return 0;
}

int cmd_blowup(const Globals& g, const std::string& path, bool check) {
  const Json in = read_input(path);
  if (check) {
    // A point that fails membership is reported, not rejected.
    const isospec::BlowupPoint pt = isospec::io::blowup_point_from_json(in);
    const auto rep = isospec::is_member(pt, g.tol);
    Json out;
    out["membership"] = isospec::io::to_json(rep);
    if (rep.member) {
      out["face"] = isospec::io::to_json(isospec::face_of(pt));
      out["sequence"] = isospec::io::to_json(isospec::pi(pt));
    }
    if (g.json()) {
      emit(g, isospec::io::dump(out));
    } else {
      std::string text = std::string("member: ") + (rep.member ? "yes" : "no") + "\n";
      text += "instances checked: " + std::to_string(rep.instances_checked) + (rep.sampled ? " (sampled)" : "") + "\n";
      text += "max residual: " + num(rep.max_residual) + "\n";
      if (!rep.member) text += "violation: " + rep.violation + "\n";
      if (rep.member) {
        text += "face: " + isospec::face_of(pt).to_string() + "\n" + human(isospec::pi(pt));
      }
      emit(g, text);
    }
    return rep.member ? 0 : 4;
  }
  const auto seq = isospec::io::sequence_from_json(in);
  const auto pt = isospec::rho(seq);
  if (g.json()) {
    emit(g, isospec::io::dump(isospec::io::to_json(pt)));
    return 0;
  }
  std::string text = row({"subset", "values"}, {12, 0});
  for (isospec::IndexSet s : isospec::canonical_subsets(pt.dimension())) {
    text += row({isospec::set_to_string(s), join(pt.block(s))}, {12, 0});
  }
  emit(g, text);
  return 0;
}

int cmd_faces(const Globals& g, std::size_t d) {
  if (d < 1 || d > 12) throw isospec::InvalidInput("faces: d must lie in 1..12");
  std::vector<std::int64_t> enumerated;
  if (d <= 6) enumerated = isospec::build_complex(d).face_vector();
  Json rows = Json::array();
  std::string text = row({"n", "P_d", "Pbar_d"}, {3, 16, 16});
  for (std::size_t n = 0; n < d; ++n) {
    const auto a = isospec::face_count(d, n);
    const auto b = isospec::complex_face_count(d, n);
    if (!enumerated.empty() && enumerated[n] != b) throw isospec::NumericFailure("face enumeration disagrees with count");
    rows.push_back({{"n", n}, {"P_d", a}, {"Pbar_d", b}});
    text += row({std::to_string(n), std::to_string(a), std::to_string(b)}, {3, 16, 16});
  }
  emit(g, g.json() ? isospec::io::dump(Json{{"d", d}, {"rows", rows}, {"enumerated", !enumerated.empty()}}) : text);
  return 0;
}

int cmd_euler(const Globals& g, const std::string& range) {
  const auto [lo, hi] = parse_range(range);
  if (hi > 20) throw isospec::InvalidInput("euler: d must be at most 20");
  Json rows = Json::array();
  const std::vector<int> widths{3, 22, 22, 10};
  std::string text = row({"d", "chi", "tanh", "complex"}, widths);
  bool agree = true;
  for (std::size_t d = lo; d <= hi; ++d) {
    const auto chi = isospec::euler_characteristic(d);
    const auto th = isospec::euler_characteristic_tanh(d);
    agree = agree && chi == th;
    Json r{{"d", d}, {"chi", chi}, {"tanh", th}};
    std::string enumerated = "-";
    if (d <= 6) {
      const auto e = isospec::build_complex(d).euler_characteristic();
      agree = agree && e == chi;
      r["complex"] = e;
      enumerated = std::to_string(e);
    }
    rows.push_back(r);
    text += row({std::to_string(d), std::to_string(chi), std::to_string(th), enumerated}, widths);
  }
  emit(g, g.json() ? isospec::io::dump(Json{{"rows", rows}, {"agree", agree}}) : text);
  return agree ? 0 : 4;
}

int cmd_surface(const Globals& g, std::size_t d, const std::string& off_path) {
  if (d < 1 || d > 3) throw isospec::InvalidInput("surface: d must lie in 1..3");
  const auto cx = isospec::build_complex(d);
  const auto rep = isospec::surface_report(cx);
  if (!off_path.empty()) {
    if (d != 3) throw isospec::InvalidInput("--off needs d = 3");
    write_file(off_path, isospec::write_off(cx));
  }
  Json out = isospec::io::to_json(rep);
  std::optional<isospec::PetriePolygon> petrie;
  if (d == 3) {
    petrie = isospec::petrie_polygon(cx);
    const std::set<std::size_t> covered(petrie->edges.begin(), petrie->edges.end());
    out["petrie"] = {{"length", petrie->length()}, {"edges", petrie->edges}, {"distinct_edges", covered.size()}};
  }
  if (g.json()) {
    emit(g, isospec::io::dump(out));
  } else {
    std::string text = "d = " + std::to_string(d) + "\nface vector:";
    for (auto f : rep.face_vector) text += " " + std::to_string(f);
    text += "\neuler characteristic: " + std::to_string(rep.euler) + "\n";
    for (const auto& c : rep.checks) {
      text += std::string(c.passed ? "  ok    " : "  FAIL  ") + c.name + (c.detail.empty() ? "" : ": " + c.detail) + "\n";
    }
    if (petrie) {
      const std::set<std::size_t> covered(petrie->edges.begin(), petrie->edges.end());
      text += "petrie polygon: length " + std::to_string(petrie->length()) + ", covers " +
              std::to_string(covered.size()) + " of " + std::to_string(cx.faces_of_dimension(1).size()) + " edges\n";
    }
    emit(g, text);
  }
  return rep.passed() ? 0 : 4;
}

int cmd_verify(const Globals& g, const isospec::VerifyOptions& opt) {
  const auto results = isospec::run_property_suite(opt);
  bool all = true;
  Json arr = Json::array();
  std::string text;
  for (const auto& r : results) {
    all = all && r.passed;
    arr.push_back({{"module", r.module}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
    text += std::string(r.passed ? "PASS  " : "FAIL  ") + "[" + r.module + "] " + r.name +
            (r.detail.empty() ? "" : "  (" + r.detail + ")") + "\n";
  }
  text += std::to_string(results.size()) + " properties, " + (all ? "all passed" : "FAILURES") + "\n";
  emit(g, g.json() ? isospec::io::dump(Json{{"seed", opt.seed}, {"count", opt.count}, {"results", arr}, {"passed", all}})
                   : text);
  return all ? 0 : 4;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral reconstruction, blow-up coordinates, moment-curve limits and the isospectral complex."};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"human", "json"}));
  app.add_option("--out", g.out, "Write output to this path instead of stdout");
  app.add_option("--tol", g.tol, "Membership tolerance")->check(CLI::PositiveNumber);

  std::string input;
  auto* reconstruct = app.add_subcommand("reconstruct", "Distribution file -> Jacobi matrix");
  reconstruct->add_option("input", input, "Distribution JSON ('-' for stdin)")->required();

  auto* spectrum = app.add_subcommand("spectrum", "Matrix file -> spectral distribution");
  spectrum->add_option("input", input, "Matrix JSON ('-' for stdin)")->required();

  bool report = false;
  std::string grid, plot;
  auto* limit = app.add_subcommand("limit", "Moment-curve file -> limit sequence and matrix");
  limit->add_option("input", input, "Moment-curve JSON ('-' for stdin)")->required();
  limit->add_flag("--report", report, "Add the numeric E(t) report on the default grid");
  limit->add_option("--t-grid", grid, "Comma-separated decreasing t values in (0, 1); implies --report");
  limit->add_option("--plot-data", plot, "Write (log10 t, log10 E) columns to this path; implies --report");

  bool check = false;
  auto* blowup = app.add_subcommand("blowup", "Sequence file -> blow-up coordinates, or membership check");
  blowup->add_option("input", input, "Sequence JSON, or blow-up point JSON with --check")->required();
  blowup->add_flag("--check", check, "Read a blow-up point and check membership at --tol");

  std::size_t d = 0;
  auto* faces = app.add_subcommand("faces", "Face counts of P_d and Pbar_d");
  faces->add_option("d", d, "Dimension")->required();

  std::string range;
  auto* euler = app.add_subcommand("euler", "Euler characteristics with the tanh cross-check");
  euler->add_option("range", range, "Dimension or range, e.g. 1..10")->required();

  std::size_t surface_d = 3;
  std::string off;
  auto* surface = app.add_subcommand("surface", "Surface diagnostics for Pbar_d, d <= 3");
  surface->add_option("--d", surface_d, "Dimension (default 3)");
  surface->add_option("--off", off, "Write the d = 3 surface as an OFF file");

  isospec::VerifyOptions vopt;
  auto* verify = app.add_subcommand("verify", "Run the full property suite");
  verify->add_option("--seed", vopt.seed, "RNG seed");
  verify->add_option("--count", vopt.count, "Random cases per dimension")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*reconstruct) return cmd_reconstruct(g, input);
    if (*spectrum) return cmd_spectrum(g, input);
    if (*limit) return cmd_limit(g, input, report, grid, plot);
    if (*blowup) return cmd_blowup(g, input, check);
    if (*faces) return cmd_faces(g, d);
    if (*euler) return cmd_euler(g, range);
    if (*surface) return cmd_surface(g, surface_d, off);
    if (*verify) return cmd_verify(g, vopt);
  } catch (const isospec::InvalidInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const isospec::NumericFailure& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
