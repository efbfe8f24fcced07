#include <grr/model_io.hpp>

#include <cmath>
#include <fstream>
#include <limits>

namespace grr {

namespace {

Json cjson(cplx z) { return Json::array({z.real(), z.imag()}); }

cplx cread(const Json& j) {
  if (!j.is_array() || j.size() != 2) throw Error(ErrorKind::InvalidModel, "complex number must be [re, im]");
  return {j.at(0).get<double>(), j.at(1).get<double>()};
}

// inf is written as null
Json rjson(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }
double rread(const Json& j) {
  return j.is_null() ? std::numeric_limits<double>::infinity() : j.get<double>();
}

Json disk_json(const Disk& D) {
  return {{"center", cjson(D.center)}, {"radius", D.radius}, {"side", D.is_interior() ? "interior" : "exterior"}};
}

Disk disk_read(const Json& j) {
  std::string side = j.value("side", "interior");
  if (side != "interior" && side != "exterior") throw Error(ErrorKind::InvalidModel, "side must be interior or exterior");
  try {
    return Disk(cread(j.at("center")), j.at("radius").get<double>(),
                side == "interior" ? Side::interior : Side::exterior);
  } catch (const Error& e) {
    throw Error(ErrorKind::InvalidModel, e.what());
  }
}

template <typename F>
auto schema(F&& f) {
  try {
    return f();
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::InvalidModel, std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace

Json to_json(const GluingModel& model) {
  Json pieces = Json::array();
  for (const auto& p : model.pieces) {
    Json disks = Json::array();
    for (const auto& D : p) disks.push_back(disk_json(D));
    pieces.push_back(disks);
  }
  Json pairs = Json::array();
  for (const auto& pr : model.pairs) {
    Json psi;
    if (auto w = std::get_if<PsiWinding>(&pr.psi))
      psi = {{"winding", {{"c", cjson(w->c)}, {"n", w->n}}}};
    else
      psi = {{"const", cjson(std::get<PsiConst>(pr.psi).c)}};
    pairs.push_back({{"j", pr.j},
                     {"j2", pr.j2},
                     {"phi", Json::array({cjson(pr.phi.a), cjson(pr.phi.b), cjson(pr.phi.c), cjson(pr.phi.d)})},
                     {"psi", psi},
                     {"allowance_dim", pr.allowance_dim}});
  }
  return {{"pieces", pieces}, {"pairs", pairs}};
}

GluingModel model_from_json(const Json& j) {
  return schema([&] {
    GluingModel m;
    for (const auto& p : j.at("pieces")) {
      std::vector<Disk> disks;
      for (const auto& d : p) disks.push_back(disk_read(d));
      m.pieces.push_back(std::move(disks));
    }
    for (const auto& pj : j.at("pairs")) {
      GluingPair pr;
      pr.j = pj.at("j").get<int>();
      pr.j2 = pj.at("j2").get<int>();
      const auto& f = pj.at("phi");
      if (!f.is_array() || f.size() != 4) throw Error(ErrorKind::InvalidModel, "phi must list a, b, c, d");
      try {
        pr.phi = Moebius::raw(cread(f[0]), cread(f[1]), cread(f[2]), cread(f[3]));
      } catch (const Error& e) {
        throw Error(ErrorKind::InvalidModel, e.what());
      }
      const auto& psi = pj.at("psi");
      if (psi.contains("winding"))
        pr.psi = PsiWinding{cread(psi["winding"].at("c")), psi["winding"].at("n").get<int>()};
      else if (psi.contains("const"))
        pr.psi = PsiConst{cread(psi["const"])};
      else
        throw Error(ErrorKind::InvalidModel, "psi must be {const} or {winding}");
      pr.allowance_dim = pj.value("allowance_dim", 1);
      m.pairs.push_back(pr);
    }
    return m;
  });
}

Json to_json(const RRReport& r) {
  Json crit = {{"hs_sum", r.criteria.hs_sum}, {"majorant_norm", r.criteria.majorant_norm}};
  if (r.criteria.weighted_hs_sum) crit["weighted_hs_sum"] = *r.criteria.weighted_hs_sum;
  Json tr = Json::array();
  for (const auto& t : r.truncations)
    tr.push_back({{"N", t.N},
                  {"h0", t.h0},
                  {"h1", t.h1},
                  {"gap_ratio", rjson(t.gap_ratio)},
                  {"sigma_min_nonzero", t.sigma_min_nonzero},
                  {"resolved", t.resolved},
                  {"rc_tail", t.rc_tail}});
  return {{"degree", r.degree},
          {"components", r.components},
          {"expected_index", r.expected_index},
          {"h0", r.h0},
          {"h1", r.h1},
          {"index", r.index},
          {"gap_ratio", rjson(r.gap_ratio)},
          {"sigma_min_nonzero", r.sigma_min_nonzero},
          {"criteria", crit},
          {"truncations", tr},
          {"verdict", to_string(r.verdict)},
          {"note", r.note}};
}

RRReport report_from_json(const Json& j) {
  return schema([&] {
    RRReport r;
    r.degree = j.at("degree").get<int>();
    r.components = j.at("components").get<int>();
    r.expected_index = j.at("expected_index").get<int>();
    r.h0 = j.at("h0").get<int>();
    r.h1 = j.at("h1").get<int>();
    r.index = j.at("index").get<int>();
    r.gap_ratio = rread(j.at("gap_ratio"));
    r.sigma_min_nonzero = j.at("sigma_min_nonzero").get<double>();
    const auto& c = j.at("criteria");
    r.criteria.hs_sum = c.at("hs_sum").get<double>();
    r.criteria.majorant_norm = c.at("majorant_norm").get<double>();
    if (c.contains("weighted_hs_sum")) r.criteria.weighted_hs_sum = c["weighted_hs_sum"].get<double>();
    for (const auto& t : j.at("truncations")) {
      Truncation x;
      x.N = t.at("N").get<int>();
      x.h0 = t.at("h0").get<int>();
      x.h1 = t.at("h1").get<int>();
      x.gap_ratio = rread(t.at("gap_ratio"));
      x.sigma_min_nonzero = t.at("sigma_min_nonzero").get<double>();
      x.resolved = t.at("resolved").get<bool>();
      x.rc_tail = t.at("rc_tail").get<double>();
      r.truncations.push_back(x);
    }
    std::string v = j.at("verdict").get<std::string>();
    r.verdict = v == "PASS" ? Verdict::Pass : v == "FAIL" ? Verdict::Fail : Verdict::Unresolved;
    r.note = j.value("note", "");
    return r;
  });
}

Json to_json(const DustSpec& d) {
  Json pts = Json::array();
  for (cplx z : d.dust) pts.push_back(cjson(z));
  return {{"mode", d.mode == DustMode::FinitePoints ? "points" : "dense"},
          {"dust", pts},
          {"sequence", d.sequence == SequenceKind::Spiral ? "spiral" : "rational_grid"},
          {"bound", {{"center", cjson(d.bound_center)}, {"radius", d.bound_radius}}},
          {"spiral_radius", d.spiral_radius},
          {"phase", d.phase},
          {"max_sequence", d.max_sequence}};
}

DustSpec dust_from_json(const Json& j) {
  return schema([&] {
    DustSpec d;
    std::string mode = j.value("mode", "points");
    if (mode != "points" && mode != "dense") throw Error(ErrorKind::BadParameters, "mode must be points or dense");
    d.mode = mode == "points" ? DustMode::FinitePoints : DustMode::DenseSequence;
    if (j.contains("dust"))
      for (const auto& p : j["dust"]) d.dust.push_back(cread(p));
    std::string seq = j.value("sequence", d.mode == DustMode::FinitePoints ? "spiral" : "rational_grid");
    if (seq != "spiral" && seq != "rational_grid")
      throw Error(ErrorKind::BadParameters, "sequence must be spiral or rational_grid");
    d.sequence = seq == "spiral" ? SequenceKind::Spiral : SequenceKind::RationalGrid;
    if (j.contains("bound")) {
      d.bound_center = cread(j["bound"].at("center"));
      d.bound_radius = j["bound"].at("radius").get<double>();
    }
    d.spiral_radius = j.value("spiral_radius", d.spiral_radius);
    d.phase = j.value("phase", d.phase);
    d.max_sequence = j.value("max_sequence", d.max_sequence);
    validate_dust(d);
    return d;
  });
}

Json to_json(const FoamState& st) {
  GluingModel m;
  m.pieces.push_back(st.disks);
  Json out = to_json(m);
  std::string pairing = "consecutive";
  if (st.disks.size() % 2 != 0) {
    pairing = "none: odd disk count";
  } else if (!st.disks.empty()) {
    // identifications between very small far-apart disks underflow in plane coefficients
    try {
      out = to_json(foam_to_model(st));
    } catch (const Error& e) {
      pairing = std::string("none: ") + e.what();
    }
  }
  Json log = Json::array();
  for (const auto& s : st.log)
    log.push_back({{"sequence_index", s.sequence_index},
                   {"r_tilde", s.r_tilde},
                   {"iterations", s.iterations},
                   {"cap_active", s.cap_active}});
  out["foam"] = {{"sums", st.sums}, {"log", log}};
  out["provenance"] = {{"seed", st.seed},         {"dust", to_json(st.dust)}, {"radius_tol", st.radius_tol},
                       {"shrink", st.shrink},     {"pairing", pairing}};
  return out;
}

FoamState foam_from_json(const Json& j) {
  return schema([&] {
    FoamState st;
    const auto& pieces = j.at("pieces");
    if (pieces.size() != 1) throw Error(ErrorKind::InvalidModel, "a foam has exactly one piece");
    for (const auto& d : pieces[0]) st.disks.push_back(disk_read(d));
    st.sums = j.at("foam").at("sums").get<std::vector<double>>();
    for (const auto& s : j["foam"].at("log"))
      st.log.push_back({s.at("sequence_index").get<long>(), s.at("r_tilde").get<double>(),
                        s.at("iterations").get<int>(), s.at("cap_active").get<bool>()});
    const auto& p = j.at("provenance");
    st.seed = p.at("seed").get<std::uint64_t>();
    st.dust = dust_from_json(p.at("dust"));
    st.radius_tol = p.at("radius_tol").get<double>();
    st.shrink = p.at("shrink").get<double>();
    return st;
  });
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::BadParameters, "cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::InvalidModel, path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::BadParameters, "cannot write " + path);
  out << j.dump(2) << '\n';
  if (!out) throw Error(ErrorKind::BadParameters, "write failed for " + path);
}

}  // namespace grr
