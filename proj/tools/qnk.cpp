// qnk command-line tool.
#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "qnk/convergence.hpp"
#include "qnk/error.hpp"
#include "qnk/flat_associate.hpp"
#include "qnk/intersection.hpp"
#include "qnk/io.hpp"
#include "qnk/linearization.hpp"
#include "qnk/median.hpp"
#include "qnk/normal_curves.hpp"
#include "qnk/parallel.hpp"
#include "qnk/quality.hpp"
#include "qnk/surface.hpp"

using namespace qnk;
namespace fs = std::filesystem;

namespace {

constexpr int kOk = 0, kInputError = 1, kAssertion = 2;

struct AssertionFailed {
  std::string message;
};

struct Config {
  std::string in, out, out_dir, report, surface, complex, pattern, edges, mode = "skinny", require;
  std::vector<int> ns;
  int levels = 1, samples = 16, threads = 0, max_len = 12, tameness_samples = 64;
  double tol = 1e-9;
  std::uint64_t seed = 0;
  bool include_base = false;
};

void emit(const json& j, const std::string& out) {
  if (out.empty())
    std::cout << j.dump(2) << '\n';
  else
    write_json_file(out, j);
}

json tolerances(const Config& cfg) { return {{"general_position", cfg.tol}, {"shape", 1e-6}, {"degenerate_tet", 1e-12}}; }

int cmd_validate(const Config& cfg) {
  const Complex3 c = read_complex_file(cfg.in);
  json r = report_header("validate", cfg.seed, tolerances(cfg));
  std::map<std::string, int> faces, tets;
  for (std::size_t f = 0; f < c.faces().size(); ++f) ++faces[to_string(c.face_label(static_cast<int>(f)))];
  for (std::size_t t = 0; t < c.tets().size(); ++t) ++tets[to_string(c.tet_label(static_cast<int>(t)))];
  r["valid"] = true;
  r["ambient"] = to_string(c.ambient().kind);
  r["vertices"] = c.vertices().size();
  r["edges"] = c.edges().size();
  r["faces"] = c.faces().size();
  r["tets"] = c.tets().size();
  r["lambda"] = mesh_size(c);
  r["face_labels"] = faces;
  r["tet_labels"] = tets;
  emit(r, cfg.out);
  return kOk;
}

int cmd_quality(const Config& cfg) {
  const Complex3 c = read_complex_file(cfg.in);
  const auto q = complex_quality(c);
  json rows = json::array();
  for (std::size_t t = 0; t < q.size(); ++t) rows.push_back(to_json(q[t], static_cast<int>(t)));
  json r = report_header("quality", cfg.seed, tolerances(cfg));
  r["rows"] = rows;
  r["min_fatness"] = complex_fatness(c);
  emit(r, cfg.out);
  return kOk;
}

int cmd_subdivide(const Config& cfg) {
  const Complex3 c = read_complex_file(cfg.in);
  const fs::path dir = cfg.out_dir.empty() ? fs::path(cfg.out) : fs::path(cfg.out_dir);
  if (dir.empty()) throw Error(ErrorKind::InvalidInput, "subdivide needs --out-dir");
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorKind::IoError, "cannot create " + dir.string());
  json rows = json::array();
  for (auto& level : med_iterate(c, cfg.levels, true)) {
    write_complex_file((dir / ("level_" + std::to_string(level.summary.level) + ".json")).string(), level.complex);
    rows.push_back(to_json(level.summary));
  }
  json r = report_header("subdivide", cfg.seed, tolerances(cfg));
  r["rows"] = rows;
  write_json_file((dir / "report.json").string(), r);
  std::cout << r.dump(2) << '\n';
  return kOk;
}

struct Loaded {
  SurfaceMesh surface;
  Complex3 complex;
  IntersectionPattern pattern;
};

Loaded load_and_intersect(const std::string& surface, const std::string& complex, const Config& cfg) {
  Complex3 c = read_complex_file(complex);
  SurfaceMesh s = read_off_file(surface);
  s.ambient = c.ambient();
  IntersectOptions opt;
  opt.seed = cfg.seed;
  opt.rel_tol = cfg.tol;
  IntersectionPattern p = intersect(s, c, opt);
  return {std::move(s), std::move(c), std::move(p)};
}

int cmd_classify(const Config& cfg) {
  const Loaded l = load_and_intersect(cfg.surface, cfg.complex, cfg);
  json r = report_header("classify", cfg.seed, tolerances(cfg));
  r.update(pattern_to_json(l.pattern, l.complex, cfg.tameness_samples));
  r["inputs"] = {{"surface", fs::absolute(cfg.surface).lexically_normal().string()},
                 {"complex", fs::absolute(cfg.complex).lexically_normal().string()}};
  emit(r, cfg.out);
  const bool qn = r["quasi_normal"].get<bool>(), iqn = r["internally_quasi_normal"].get<bool>();
  if (cfg.require == "quasi-normal" && !qn) throw AssertionFailed{"pattern is not quasi-normal"};
  if (cfg.require == "internally-quasi-normal" && !iqn) throw AssertionFailed{"pattern is not internally quasi-normal"};
  if (cfg.require == "either" && !qn && !iqn) throw AssertionFailed{"pattern is neither quasi-normal nor internally quasi-normal"};
  return kOk;
}

// Pattern files store their inputs; the pattern itself is recomputed from them.
Loaded load_pattern(const Config& cfg) {
  const json p = read_json_file(cfg.pattern);
  if (!p.contains("inputs")) throw Error(ErrorKind::InvalidInput, cfg.pattern + ": missing inputs");
  Config c = cfg;
  c.seed = p.value("seed", cfg.seed);
  if (p.contains("tolerances")) c.tol = p["tolerances"].value("general_position", cfg.tol);
  Loaded l = load_and_intersect(p["inputs"].at("surface").get<std::string>(), p["inputs"].at("complex").get<std::string>(), c);
  if (!is_quasi_normal(l.pattern).holds && !is_internally_quasi_normal(l.pattern, l.complex).holds)
    throw AssertionFailed{"pattern is neither quasi-normal nor internally quasi-normal"};
  return l;
}

int cmd_flat_associate(const Config& cfg) {
  const Loaded l = load_pattern(cfg);
  const FlatAssociateSurface f = build_flat_associate(l.pattern, l.complex, cfg.tameness_samples);
  if (!cfg.out.empty()) write_off_file(cfg.out, f.to_mesh());
  json r = report_header("flat-associate", l.pattern.seed, tolerances(cfg));
  r.update(flat_associate_to_json(f));
  emit(r, cfg.report);
  return kOk;
}

int cmd_linearize(const Config& cfg) {
  const Loaded l = load_pattern(cfg);
  const CurvedEdgeTable table =
      cfg.edges.empty() ? straight_edge_table(l.complex) : edge_table_from_json(read_json_file(cfg.edges), l.complex);
  const Complex3 c_hat = linearize_complex(l.complex, table);
  const SurfaceMesh pl = build_pl_surface(l.pattern, c_hat, table, cfg.tameness_samples);
  if (!cfg.out.empty()) write_off_file(cfg.out, pl);
  const auto topo = surface_topology(pl);
  double sagitta = 0.0;
  for (auto& e : table) sagitta = std::max(sagitta, e.sagitta());
  json r = report_header("linearize", l.pattern.seed, tolerances(cfg));
  r["triangles"] = pl.triangles.size();
  r["area"] = surface_area(pl);
  r["euler_characteristic"] = topo.euler_characteristic;
  r["boundary_edges"] = topo.boundary_edges;
  r["max_sagitta"] = sagitta;
  emit(r, cfg.report);
  return kOk;
}

int cmd_converge(const Config& cfg) {
  const Complex3 c = read_complex_file(cfg.complex);
  SurfaceMesh s = read_off_file(cfg.surface);
  s.ambient = c.ambient();
  SweepOptions opt;
  opt.levels = cfg.levels;
  opt.samples = cfg.samples;
  opt.seed = cfg.seed;
  opt.include_base = cfg.include_base;
  opt.tameness_samples = cfg.tameness_samples;
  const SweepResult res = convergence_sweep(s, c, opt);
  json rows = json::array();
  for (auto& row : res.rows) rows.push_back(to_json(row));
  json tol = tolerances(cfg);
  tol["samples_per_triangle"] = cfg.samples;
  json r = report_header("converge", cfg.seed, tol);
  r["rows"] = rows;
  r["bounds_ok"] = res.bounds_ok;
  r["area_monotone"] = res.area_monotone;
  r["first_quasi_normal"] = res.first_quasi_normal;
  emit(r, cfg.out);
  if (!res.bounds_ok) throw AssertionFailed{"Hausdorff distance above 2 lambda + slack"};
  return kOk;
}

int cmd_lantern(const Config& cfg) {
  LanternMode mode;
  if (cfg.mode == "skinny")
    mode = LanternMode::Skinny;
  else if (cfg.mode == "fat")
    mode = LanternMode::Fat;
  else
    throw Error(ErrorKind::InvalidInput, "--mode must be skinny or fat");
  const auto rows = lantern_report(mode, cfg.ns);
  json arr = json::array();
  bool ok = true;
  for (auto& row : rows) {
    arr.push_back(to_json(row));
    ok &= row.bound_ok;
  }
  json r = report_header("lantern", cfg.seed, json::object());
  r["rows"] = arr;
  emit(r, cfg.out);
  if (!ok) throw AssertionFailed{"lantern bound violated"};
  return kOk;
}

int cmd_enumerate_gons(const Config& cfg) {
  const auto lengths = enumerate_normal_curve_lengths(cfg.max_len);
  const json arr(lengths);
  std::cout << arr.dump() << '\n';
  if (!cfg.out.empty()) {
    json r = report_header("enumerate-gons", cfg.seed, json::object());
    r["max"] = cfg.max_len;
    r["lengths"] = arr;
    write_json_file(cfg.out, r);
  }
  return kOk;
}

void print_error(const std::string& kind, const std::string& message, int code) {
  std::cerr << json{{"error", kind}, {"message", message}, {"exit_code", code}}.dump() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Median subdivision, quasi-normal classification and flat-associate approximation"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);
  Config cfg;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--seed", cfg.seed, "perturbation seed");
    sub->add_option("--threads", cfg.threads, "worker cap (QNK_THREADS otherwise)")->check(CLI::NonNegativeNumber);
    sub->add_option("--tol", cfg.tol, "general-position tolerance relative to the mesh size")->check(CLI::PositiveNumber);
    sub->add_option("--samples", cfg.samples, "samples per triangle for distances")->check(CLI::PositiveNumber);
  };

  std::map<CLI::App*, int (*)(const Config&)> handlers;
  auto add = [&](const std::string& name, const std::string& help, int (*fn)(const Config&)) {
    CLI::App* sub = app.add_subcommand(name, help);
    common(sub);
    handlers[sub] = fn;
    return sub;
  };

  auto* validate = add("validate", "check a complex and print its summary", cmd_validate);
  validate->add_option("--in", cfg.in)->required()->check(CLI::ExistingFile);
  validate->add_option("--out", cfg.out);

  auto* quality = add("quality", "per-tet quality rows", cmd_quality);
  quality->add_option("--in", cfg.in)->required()->check(CLI::ExistingFile);
  quality->add_option("--out", cfg.out);

  auto* subdivide = add("subdivide", "iterated median subdivision", cmd_subdivide);
  subdivide->add_option("--in", cfg.in)->required()->check(CLI::ExistingFile);
  subdivide->add_option("--levels", cfg.levels)->check(CLI::Range(0, 8));
  subdivide->add_option("--out-dir,--out", cfg.out_dir)->required();

  auto* classify = add("classify", "intersect a surface with a complex and classify", cmd_classify);
  classify->add_option("--surface", cfg.surface)->required()->check(CLI::ExistingFile);
  classify->add_option("--complex", cfg.complex)->required()->check(CLI::ExistingFile);
  classify->add_option("--out", cfg.out);
  classify->add_option("--require", cfg.require)->check(CLI::IsMember({"quasi-normal", "internally-quasi-normal", "either"}));
  classify->add_option("--tameness-samples", cfg.tameness_samples)->check(CLI::PositiveNumber);

  auto* flat = add("flat-associate", "flat associate of a classified pattern", cmd_flat_associate);
  flat->add_option("--pattern", cfg.pattern)->required()->check(CLI::ExistingFile);
  flat->add_option("--out", cfg.out, "OFF mesh");
  flat->add_option("--report", cfg.report);

  auto* lin = add("linearize", "PL flat associate in the linearized complex", cmd_linearize);
  lin->add_option("--pattern", cfg.pattern)->required()->check(CLI::ExistingFile);
  lin->add_option("--edges", cfg.edges, "curved edge table JSON")->check(CLI::ExistingFile);
  lin->add_option("--out", cfg.out, "OFF mesh");
  lin->add_option("--report", cfg.report);

  auto* conv = add("converge", "convergence sweep over median subdivision levels", cmd_converge);
  conv->add_option("--surface", cfg.surface)->required()->check(CLI::ExistingFile);
  conv->add_option("--complex", cfg.complex)->required()->check(CLI::ExistingFile);
  conv->add_option("--levels", cfg.levels)->check(CLI::Range(1, 6));
  conv->add_option("--out", cfg.out);
  conv->add_flag("--include-base", cfg.include_base);

  auto* lantern = add("lantern", "Schwarz lantern areas", cmd_lantern);
  lantern->add_option("--mode", cfg.mode)->check(CLI::IsMember({"skinny", "fat"}));
  lantern->add_option("--n", cfg.ns)->required()->delimiter(',')->check(CLI::Range(3, 4096));
  lantern->add_option("--out", cfg.out);

  auto* gons = add("enumerate-gons", "lengths of connected normal curves", cmd_enumerate_gons);
  gons->add_option("--max", cfg.max_len)->check(CLI::Range(3, 20));
  gons->add_option("--out", cfg.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    print_error("UsageError", e.what(), kInputError);
    return kInputError;
  }

  if (cfg.threads > 0) set_thread_count(cfg.threads);
  try {
    for (auto& [sub, fn] : handlers)
      if (sub->parsed()) return fn(cfg);
  } catch (const AssertionFailed& e) {
    print_error("AssertionFailed", e.message, kAssertion);
    return kAssertion;
  } catch (const Error& e) {
    print_error(std::string(to_string(e.kind())), e.what(), kInputError);
    return kInputError;
  } catch (const std::exception& e) {
    print_error("InternalError", e.what(), kInputError);
    return kInputError;
  }
  return kOk;
}
