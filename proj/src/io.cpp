#include "fgeom/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "fgeom/errors.hpp"

namespace fgeom::io {

namespace {

const json& need(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw FormatError(std::string("missing key '") + key + "'");
  return *it;
}

}  // namespace

json pt_to_json(const Pt& p) { return json(p); }

Pt pt_from_json(const json& j) {
  if (!j.is_array()) throw FormatError("point must be an array");
  Pt p;
  for (const auto& v : j) {
    if (!v.is_number_unsigned()) throw FormatError("point coordinates must be unsigned");
    p.push_back(v.get<unsigned>());
  }
  return p;
}

json subspace_to_json(const Subspace& s) {
  json rows = json::array();
  for (const auto& r : s.rows) rows.push_back(pt_to_json(r));
  return rows;
}

Subspace subspace_from_json(const json& j, int ambient) {
  if (!j.is_array()) throw FormatError("subspace must be an array of rows");
  Subspace s;
  s.ambient = ambient;
  for (const auto& r : j) {
    Pt row = pt_from_json(r);
    if (static_cast<int>(row.size()) != ambient) throw FormatError("subspace row length mismatch");
    s.rows.push_back(std::move(row));
  }
  return s;
}

json field_to_json(const Fq2Config& cfg) {
  return json{{"h", cfg.base.h},
              {"poly", cfg.base.poly},
              {"q", cfg.base.q},
              {"t1", cfg.t1},
              {"t0", cfg.t0},
              {"q2", cfg.q2}};
}

Fq2Config field_from_json(const json& j) {
  int h = need(j, "h").get<int>();
  unsigned poly = need(j, "poly").get<unsigned>();
  unsigned t1 = need(j, "t1").get<unsigned>();
  unsigned t0 = need(j, "t0").get<unsigned>();
  try {
    FieldTable base(h, poly);
    Fq2Config cfg(std::move(base), t1, t0);
    if (j.contains("q") && j["q"].get<unsigned>() != cfg.base.q)
      throw FormatError("field q does not match h");
    if (j.contains("q2") && j["q2"].get<unsigned>() != cfg.q2)
      throw FormatError("field q2 does not match h");
    return cfg;
  } catch (const FormatError&) {
    throw;
  } catch (const std::exception& e) {
    throw FormatError(std::string("invalid field parameters: ") + e.what());
  }
}

json config_to_json(const Configuration& c) {
  json pts = json::array();
  for (const auto& p : c.c_points) pts.push_back(pt_to_json(p));
  json planes = json::array();
  for (const auto& pl : c.c_planes) planes.push_back(subspace_to_json(pl));
  return json{{"field", field_to_json(c.cfg)},
              {"q", c.q},
              {"c_points", std::move(pts)},
              {"c_planes", std::move(planes)}};
}

Configuration config_from_json(const json& j) {
  Fq2Config cfg = field_from_json(need(j, "field"));
  Configuration c{cfg, cfg.base.q, {}, {}};
  for (const auto& p : need(j, "c_points")) {
    Pt pt = pt_from_json(p);
    if (pt.size() != 5) throw FormatError("C-points live in PG(4,q)");
    for (unsigned v : pt)
      if (v >= cfg.base.q) throw FormatError("coordinate out of field range");
    c.c_points.push_back(std::move(pt));
  }
  for (const auto& pl : need(j, "c_planes")) c.c_planes.push_back(subspace_from_json(pl, 5));
  return c;
}

json axiom_report_to_json(const AxiomReport& r) {
  json out;
  out["all_passed"] = r.all_passed();
  if (r.a1) {
    json w = json::array();
    for (const auto& s : r.a1->witnesses) w.push_back(subspace_to_json(s));
    out["A1"] = json{{"passed", r.a1->passed},
                     {"plane_arc_sizes", r.a1->plane_arc_sizes},
                     {"witnesses", std::move(w)}};
  }
  if (r.a2) {
    json unc = json::array(), mul = json::array();
    for (const auto& [a, b] : r.a2->uncovered) unc.push_back(json::array({a, b}));
    for (const auto& [a, b] : r.a2->multiply_covered) mul.push_back(json::array({a, b}));
    out["A2"] = json{{"passed", r.a2->passed},
                     {"pairs_covered_once", r.a2->pairs_covered_once},
                     {"uncovered", std::move(unc)},
                     {"multiply_covered", std::move(mul)}};
  }
  if (r.a3) {
    json w = json::array();
    for (const auto& [p, k] : r.a3->witnesses) w.push_back(json{{"point", p}, {"planes", k}});
    out["A3"] = json{{"passed", r.a3->passed},
                     {"non_c_affine_points", r.a3->non_c_affine_points},
                     {"membership_histogram", r.a3->membership_histogram},
                     {"witnesses", std::move(w)}};
  }
  if (r.a4) {
    json w = json::array();
    for (const auto& s : r.a4->witnesses) w.push_back(subspace_to_json(s));
    out["A4"] = json{{"passed", r.a4->passed},
                     {"planes_scanned", r.a4->planes_scanned},
                     {"witnesses", std::move(w)}};
  }
  return out;
}

json spread_check_to_json(const SpreadConditionReport& r) {
  json out{{"side_a", r.side_a},
           {"side_b", r.side_b},
           {"biconditional_holds", r.biconditional_holds},
           {"per_line_c_line_counts", r.per_line_c_line_counts}};
  if (r.side_a_witness) out["side_a_witness"] = subspace_to_json(*r.side_a_witness);
  return out;
}

json spread_to_json(const Spread& s) {
  json lines = json::array();
  for (const auto& l : s.lines) lines.push_back(subspace_to_json(l));
  return lines;
}

Spread spread_from_json(const json& j) {
  Spread s;
  for (const auto& l : j) s.lines.push_back(subspace_from_json(l, 5));
  return s;
}

json recon_to_json(const ReconstructionResult& r, const Configuration& source,
                   const std::vector<Subspace>& c_lines) {
  json cl = json::array();
  for (const auto& l : c_lines) cl.push_back(subspace_to_json(l));
  json plus = json::array();
  for (const auto& p : r.special.plus_points) plus.push_back(pt_to_json(p));
  json canon = json::array();
  for (const auto& p : r.canonical_points) canon.push_back(pt_to_json(p));
  return json{{"configuration", config_to_json(source)},
              {"c_lines", std::move(cl)},
              {"special", json{{"tN", subspace_to_json(r.special.tn)},
                               {"t_inf", subspace_to_json(r.special.tinf)},
                               {"plus_points", std::move(plus)}}},
              {"tn_is_nucleus", r.tn_is_nucleus},
              {"n_mod_h", r.n_mod_h},
              {"n_lift", r.n_lift},
              {"fit_constant", r.fit_constant},
              {"homography", json(r.h.m)},
              {"canonical_points", std::move(canon)},
              {"spread", spread_to_json(r.spread)}};
}

ReconFile recon_from_json(const json& j) {
  ReconFile out{config_from_json(need(j, "configuration")), {}, {}};
  const FieldTable& f = out.source.cfg.base;
  for (const auto& l : need(j, "c_lines")) out.c_lines.push_back(subspace_from_json(l, 5));
  const json& sp = need(j, "special");
  out.result.special.tn = subspace_from_json(need(sp, "tN"), 5);
  out.result.special.tinf = subspace_from_json(need(sp, "t_inf"), 5);
  for (const auto& p : need(sp, "plus_points"))
    out.result.special.plus_points.push_back(pt_from_json(p));
  out.result.tn_is_nucleus = need(j, "tn_is_nucleus").get<bool>();
  out.result.n_mod_h = need(j, "n_mod_h").get<int>();
  out.result.n_lift = need(j, "n_lift").get<int>();
  out.result.fit_constant = need(j, "fit_constant").get<unsigned>();
  Mat hm;
  for (const auto& row : need(j, "homography")) hm.push_back(pt_from_json(row));
  try {
    out.result.h = make_homography(f, std::move(hm));
  } catch (const std::exception& e) {
    throw FormatError(std::string("invalid homography: ") + e.what());
  }
  for (const auto& p : need(j, "canonical_points"))
    out.result.canonical_points.push_back(pt_from_json(p));
  out.result.spread = spread_from_json(need(j, "spread"));
  return out;
}

std::string digest(const json& j) {
  std::string s = j.dump();
  unsigned long long h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", h);
  return buf;
}

json wrap_with_manifest(const std::string& kind, json geometry, json manifest) {
  manifest["tool_version"] = kToolVersion;
  json hashed = manifest;
  hashed.erase("wall_clock_ms");
  hashed["geometry_digest"] = digest(geometry);
  manifest["manifest_hash"] = digest(hashed);
  manifest["geometry_digest"] = hashed["geometry_digest"];
  return json{{"schema", kSchemaVersion},
              {"kind", kind},
              {"geometry", std::move(geometry)},
              {"manifest", std::move(manifest)}};
}

void write_file(const std::string& path, const json& j) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw FormatError("cannot open '" + tmp + "' for writing");
    out << j.dump(2) << "\n";
    if (!out) throw FormatError("write failed on '" + tmp + "'");
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw FormatError("cannot move '" + tmp + "' into place");
}

json load_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const std::exception& e) {
    throw FormatError("parse error in '" + path + "': " + e.what());
  }
}

json unwrap(const json& file, const std::string& expected_kind) {
  if (need(file, "schema").get<int>() != kSchemaVersion) throw FormatError("unknown schema version");
  if (need(file, "kind").get<std::string>() != expected_kind)
    throw FormatError("expected a '" + expected_kind + "' file");
  return need(file, "geometry");
}

}  // namespace fgeom::io
