#include "qnk/io.hpp"

#include <algorithm>
#include <fstream>

#include "qnk/error.hpp"

namespace qnk {

namespace {

json vec(const Vec3& v) { return json::array({v[0], v[1], v[2]}); }

Vec3 read_vec(const json& j) {
  if (!j.is_array() || j.size() != 3) throw Error(ErrorKind::InvalidInput, "expected a 3-vector");
  Vec3 v;
  for (int k = 0; k < 3; ++k) {
    if (!j[k].is_number()) throw Error(ErrorKind::InvalidInput, "vector entries must be numbers");
    v[k] = j[k].get<double>();
  }
  return v;
}

}  // namespace

json complex_to_json(const Complex3& c) {
  json out;
  json amb{{"kind", c.ambient().is_torus() ? "torus" : "euclidean"}};
  if (c.ambient().is_torus()) amb["period"] = vec(c.ambient().period);
  out["ambient"] = amb;
  json vs = json::array();
  for (auto& v : c.vertices()) vs.push_back(vec(v));
  out["vertices"] = vs;
  std::vector<Tet> tets = c.tets();
  std::sort(tets.begin(), tets.end());
  out["tets"] = tets;
  return out;
}

Complex3 complex_from_json(const json& j) {
  if (!j.is_object()) throw Error(ErrorKind::InvalidInput, "complex: expected an object");
  AmbientModel amb;
  if (j.contains("ambient")) {
    const json& a = j["ambient"];
    const std::string kind = a.value("kind", "euclidean");
    if (kind == "torus" || kind == "FlatTorus3") {
      amb = AmbientModel::torus(a.contains("period") ? read_vec(a["period"]) : Vec3{1, 1, 1});
    } else if (kind != "euclidean" && kind != "EuclideanRegion") {
      throw Error(ErrorKind::InvalidInput, "complex: unknown ambient kind '" + kind + "'");
    }
  }
  if (!j.contains("vertices") || !j["vertices"].is_array()) throw Error(ErrorKind::InvalidInput, "complex: missing vertices");
  if (!j.contains("tets") || !j["tets"].is_array()) throw Error(ErrorKind::InvalidInput, "complex: missing tets");
  std::vector<Vec3> vs;
  for (auto& v : j["vertices"]) vs.push_back(read_vec(v));
  std::vector<Tet> tets;
  for (auto& t : j["tets"]) {
    if (!t.is_array() || t.size() != 4) throw Error(ErrorKind::InvalidInput, "complex: tets must have 4 indices");
    Tet tt;
    for (int k = 0; k < 4; ++k) {
      if (!t[k].is_number_integer()) throw Error(ErrorKind::InvalidInput, "complex: tet indices must be integers");
      tt[k] = t[k].get<int>();
    }
    tets.push_back(tt);
  }
  return build_complex(std::move(vs), std::move(tets), amb);
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoError, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::InvalidInput, path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::IoError, "cannot write " + path);
  out << j.dump(2) << '\n';
}

Complex3 read_complex_file(const std::string& path) { return complex_from_json(read_json_file(path)); }

void write_complex_file(const std::string& path, const Complex3& c) { write_json_file(path, complex_to_json(c)); }

CurvedEdgeTable edge_table_from_json(const json& j, const Complex3& c) {
  if (!j.contains("edges") || !j["edges"].is_array()) throw Error(ErrorKind::InvalidInput, "edge table: missing edges");
  CurvedEdgeTable table = straight_edge_table(c);
  for (auto& e : j["edges"]) {
    const int a = e.at("a").get<int>(), b = e.at("b").get<int>();
    const int id = c.find_edge(a, b);
    if (id < 0) throw Error(ErrorKind::InvalidInput, "edge table: no edge " + std::to_string(a) + "-" + std::to_string(b));
    std::vector<Vec3> pts;
    for (auto& p : e.at("polyline")) pts.push_back(read_vec(p));
    if (a > b) std::reverse(pts.begin(), pts.end());
    table[id] = ParamCurveEdge::from_polyline(id, std::move(pts));
  }
  return table;
}

json report_header(const std::string& command, std::uint64_t seed, const json& tolerances) {
  return {{"tool_version", kToolVersion}, {"command", command}, {"seed", seed}, {"tolerances", tolerances}};
}

json to_json(const SimplexQuality& q, int tet_id) {
  return {{"tet_id", tet_id},         {"phi", q.fatness_phi},    {"r", q.insphere_r},
          {"R", q.circumsphere_R},    {"min_dihedral", q.min_dihedral()}, {"diameter", q.diameter},
          {"volume", q.volume}};
}

json to_json(const LevelSummary& s) {
  return {{"level", s.level},   {"tets", s.tets},           {"lambda", s.lambda},
          {"min_fatness", s.min_fatness}, {"edge_ratio_set", s.edge_ratio_set},
          {"lambda_halved", s.lambda_halved}, {"edge_ratios_ok", s.edge_ratios_ok}};
}

json to_json(const Violation& v) {
  return {{"kind", v.kind}, {"component", v.component}, {"arc", v.arc}, {"detail", v.detail}};
}

json to_json(const TamenessReport& t) {
  return {{"component", t.component}, {"face", t.face}, {"is_graph", t.is_graph},
          {"has_corner", t.has_corner}, {"graph_faces", t.graph_faces}};
}

json to_json(const Cylinder& c) { return {{"disks", c.disks}, {"arcs", c.arcs}, {"face", c.face}}; }

json to_json(const ConvergenceRow& r) {
  return {{"level", r.level},
          {"tets", r.tets},
          {"lambda", r.lambda},
          {"min_fatness", r.min_fatness},
          {"quasi_normal", r.quasi_normal},
          {"perturbation_attempts", r.perturbation_attempts},
          {"hausdorff", r.hausdorff},
          {"hausdorff_slack", r.hausdorff_slack},
          {"area_fa", r.area_fa},
          {"multiple_area_fa", r.multiple_area_fa},
          {"area_pl", r.area_pl},
          {"area_ref", r.area_ref},
          {"max_normal_angle", r.max_normal_angle},
          {"folded_normals", r.folded_normals},
          {"bound_2lambda_ok", r.bound_2lambda_ok},
          {"bent_curves", r.bent_curves},
          {"violations", r.violations}};
}

json to_json(const LanternRow& r) {
  return {{"mode", r.mode == LanternMode::Skinny ? "skinny" : "fat"},
          {"n", r.n},
          {"rows", r.rows},
          {"area", r.area},
          {"rel_error", r.rel_error},
          {"bound_n_over_8_ok", r.mode == LanternMode::Skinny ? json(r.bound_ok) : json(r.area >= r.n / 8.0)},
          {"bound_ok", r.bound_ok}};
}

json pattern_to_json(const IntersectionPattern& p, const Complex3& c, int samples) {
  json out;
  const auto qn = is_quasi_normal(p);
  const auto iqn = is_internally_quasi_normal(p, c);
  out["quasi_normal"] = qn.holds;
  out["internally_quasi_normal"] = iqn.holds;

  json counts;
  for (auto cls : {DiskClass::Elementary3, DiskClass::Elementary4, DiskClass::NormalNGon, DiskClass::NonNormal,
                   DiskClass::NonDisk})
    counts[to_string(cls)] = 0;
  json comps = json::array();
  for (auto& d : p.components) {
    counts[to_string(d.cls)] = counts[to_string(d.cls)].get<int>() + 1;
    json loops = json::array();
    for (auto& l : d.loop_arcs) loops.push_back(l);
    comps.push_back({{"id", d.id},
                     {"tet", d.tet},
                     {"class", to_string(d.cls)},
                     {"ngon", d.ngon},
                     {"euler_char", d.euler_char},
                     {"area", d.area},
                     {"loop_arcs", loops},
                     {"touches_surface_boundary", d.touches_surface_boundary}});
  }
  out["counts"] = counts;
  out["components"] = comps;

  json arcs = json::array();
  for (std::size_t i = 0; i < p.arcs.size(); ++i) {
    const Arc& a = p.arcs[i];
    arcs.push_back({{"id", i}, {"face", a.face}, {"class", to_string(a.cls)}, {"end_edges", a.end_edges},
                    {"components", a.components}, {"points", a.polyline.size()}});
  }
  out["arcs"] = arcs;

  json v = json::array(), vi = json::array();
  for (auto& w : qn.witnesses) v.push_back(to_json(w));
  for (auto& w : iqn.witnesses) vi.push_back(to_json(w));
  out["violations"] = v;
  out["internal_violations"] = vi;

  json cyl = json::array(), tame = json::array();
  for (auto& cy : find_cylinders(p, c, samples)) cyl.push_back(to_json(cy));
  for (auto& t : check_tameness(p, c, samples)) tame.push_back(to_json(t));
  out["cylinders"] = cyl;
  out["tameness"] = tame;

  out["lambda"] = p.lambda;
  out["euler_audit"] = p.euler_audit();
  out["perturbation"] = {{"vector", vec(p.perturbation)},
                         {"magnitude", p.perturbation_magnitude},
                         {"attempts", p.perturbation_attempts}};
  out["surface_area"] = p.surface_area;
  out["clipped_area"] = p.clipped_area;
  return out;
}

json flat_associate_to_json(const FlatAssociateSurface& f) {
  json mult = json::array();
  for (auto& r : f.regions)
    mult.push_back({{"region", r.id}, {"face", r.face}, {"multiplicity", r.multiplicity()}, {"components", r.components}});
  std::map<std::string, int> kinds;
  for (auto& t : f.triangles) ++kinds[to_string(t.kind)];
  return {{"triangles", f.triangles.size()},
          {"triangle_kinds", kinds},
          {"vertices", f.vertices.size()},
          {"area", surface_area(f)},
          {"multiple_area", multiple_area(f)},
          {"multiplicities", mult},
          {"gluing_ok", f.gluing.ok},
          {"gluing_segments", f.gluing.segments},
          {"gluing_unmatched", f.gluing.unmatched}};
}

}  // namespace qnk
