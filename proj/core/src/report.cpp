#include "bianchi/report.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <future>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace bianchi {

using Json = nlohmann::ordered_json;

namespace {

// ---- value encoders ------------------------------------------------------

Json enc(const Rational& q) { return to_string(q); }

Json enc(const RingElem& x) { return Json::array({to_string(x.a), to_string(x.b)}); }

Json enc(const QuadElem& x) {
  return Json{{"a", to_string(x.a)}, {"b", to_string(x.b)}, {"m", x.basis.m}, {"case", x.basis.case_name()}};
}

Json enc(const MoebiusElt& g) {
  return Json::array({Json::array({enc(g.a()), enc(g.b())}), Json::array({enc(g.c()), enc(g.d())})});
}

Json enc(const Shift& s) { return Json::array({s.a, s.b}); }

Json enc(const VRef& r) { return Json{{"v", r.v}, {"shift", enc(r.s)}}; }

Json enc(const UhsPoint& p) { return Json{{"z", enc(p.z)}, {"rsq", enc(p.rsq)}}; }

Json enc(const DimMap& d) {
  Json j = Json::object();
  for (const auto& [k, v] : d) j[std::to_string(k)] = v;
  return j;
}

Json enc_types(const std::vector<FiniteGroupType>& v) {
  Json j = Json::array();
  for (auto t : v) j.push_back(to_string(t));
  return j;
}

// ---- value decoders ------------------------------------------------------

Integer dec_int(const Json& j) {
  Rational q = parse_rational(j.get<std::string>());
  if (!is_integer(q)) throw std::runtime_error("expected an integer, got " + j.get<std::string>());
  return q.get_num();
}

RingElem dec_ring(const RingBasis& r, const Json& j) { return RingElem(r, dec_int(j.at(0)), dec_int(j.at(1))); }

QuadElem dec_quad(const RingBasis& r, const Json& j) {
  if (j.at("m").get<long>() != r.m) throw std::runtime_error("element over the wrong field");
  return QuadElem(r, parse_rational(j.at("a").get<std::string>()), parse_rational(j.at("b").get<std::string>()));
}

MoebiusElt dec_moebius(const RingBasis& r, const Json& j) {
  return MoebiusElt(dec_ring(r, j.at(0).at(0)), dec_ring(r, j.at(0).at(1)), dec_ring(r, j.at(1).at(0)),
                    dec_ring(r, j.at(1).at(1)));
}

Shift dec_shift(const Json& j) { return Shift{j.at(0).get<std::int64_t>(), j.at(1).get<std::int64_t>()}; }

VRef dec_vref(const Json& j) { return VRef{j.at("v").get<int>(), dec_shift(j.at("shift"))}; }

}  // namespace

// ---- floor cache -----------------------------------------------------------

std::string floor_to_json(const FloorComplex& fc) {
  Json j;
  j["version"] = kCacheVersion;
  j["m"] = fc.basis.m;
  j["case"] = fc.basis.case_name();
  j["norm_bound"] = fc.norm_bound;
  j["witness_bounds"] = fc.witness_bounds;
  Json hs = Json::array();
  for (const auto& h : fc.hemispheres)
    hs.push_back(Json{{"mu", enc(h.mu)}, {"lambda", enc(h.lambda)}, {"pairing", enc(h.pairing)}});
  j["hemispheres"] = hs;
  Json vs = Json::array();
  for (const auto& v : fc.vertices) vs.push_back(enc(v));
  j["vertices"] = vs;
  Json es = Json::array();
  for (const auto& e : fc.edges) es.push_back(Json::array({enc(e.ends.first), enc(e.ends.second)}));
  j["edges"] = es;
  Json fs = Json::array();
  for (const auto& f : fc.faces) {
    Json cyc = Json::array();
    for (const auto& r : f.cycle) cyc.push_back(enc(r));
    fs.push_back(Json{{"hemisphere", f.hemisphere}, {"cycle", cyc}});
  }
  j["faces"] = fs;
  j["cusps"] = fc.cusps;
  return j.dump(1) + "\n";
}

FloorComplex floor_from_json(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::exception& e) {
    throw std::runtime_error(std::string("malformed floor cache: ") + e.what());
  }
  try {
    if (j.at("version").get<int>() != kCacheVersion)
      throw std::runtime_error("floor cache version " + std::to_string(j.at("version").get<int>()) + ", expected " +
                               std::to_string(kCacheVersion));
    FloorComplex fc;
    fc.basis = RingBasis::for_m(j.at("m").get<long>());
    const RingBasis& r = fc.basis;
    fc.norm_bound = j.at("norm_bound").get<std::int64_t>();
    fc.witness_bounds = j.at("witness_bounds").get<std::vector<std::int64_t>>();
    for (const auto& h : j.at("hemispheres")) {
      Hemisphere hs = Hemisphere::make(dec_ring(r, h.at("mu")), dec_ring(r, h.at("lambda")));
      hs.pairing = dec_moebius(r, h.at("pairing"));
      fc.hemispheres.push_back(std::move(hs));
    }
    for (const auto& v : j.at("vertices"))
      fc.vertices.push_back(make_point(dec_quad(r, v.at("z")), parse_rational(v.at("rsq").get<std::string>())));
    for (const auto& e : j.at("edges")) fc.edges.push_back(FloorEdge{EdgeKey{dec_vref(e.at(0)), dec_vref(e.at(1))}});
    for (const auto& f : j.at("faces")) {
      FloorFace face;
      face.hemisphere = f.at("hemisphere").get<int>();
      for (const auto& c : f.at("cycle")) face.cycle.push_back(dec_vref(c));
      fc.faces.push_back(std::move(face));
    }
    fc.cusps = j.at("cusps").get<std::vector<int>>();
    const int nv = static_cast<int>(fc.vertices.size()), nh = static_cast<int>(fc.hemispheres.size());
    auto bad_ref = [&](const VRef& x) { return x.v < 0 || x.v >= nv; };
    for (const auto& e : fc.edges)
      if (bad_ref(e.ends.first) || bad_ref(e.ends.second)) throw std::runtime_error("edge refers to a missing vertex");
    for (const auto& f : fc.faces) {
      if (f.hemisphere < 0 || f.hemisphere >= nh) throw std::runtime_error("face refers to a missing hemisphere");
      for (const auto& c : f.cycle)
        if (bad_ref(c)) throw std::runtime_error("face refers to a missing vertex");
    }
    for (int c : fc.cusps)
      if (c < 0 || c >= nv) throw std::runtime_error("cusp refers to a missing vertex");
    return fc;
  } catch (const Json::exception& e) {
    throw std::runtime_error(std::string("malformed floor cache: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(std::string("malformed floor cache: ") + e.what());
  }
}

std::filesystem::path cache_path(const std::filesystem::path& dir, long m) {
  return dir / ("bianchi_m" + std::to_string(m) + ".json");
}

FloorSource load_or_compute_floor(long m, const RunConfig& cfg) {
  RingBasis r = RingBasis::for_m(m);
  FloorSource src;
  std::optional<std::filesystem::path> path;
  if (cfg.cache_dir) path = cache_path(*cfg.cache_dir, m);
  if (path && std::filesystem::exists(*path)) {
    try {
      std::ifstream in(*path);
      std::stringstream ss;
      ss << in.rdbuf();
      FloorComplex fc = floor_from_json(ss.str());
      if (fc.basis.m != m) throw std::runtime_error("cache file holds m = " + std::to_string(fc.basis.m));
      if (cfg.verify && fc.witness_bounds.size() < 2) {
        src.warnings.push_back("cached floor for m = " + std::to_string(m) + " has no stability witnesses; recomputing");
      } else {
        src.floor = std::make_shared<const FloorComplex>(std::move(fc));
        src.from_cache = true;
        return src;
      }
    } catch (const std::exception& e) {
      src.warnings.push_back("ignoring cache " + path->string() + ": " + e.what());
    }
  }
  SwanOptions opts;
  opts.max_bound = cfg.norm_ceiling;
  opts.witnesses = cfg.verify;
  src.floor = std::make_shared<const FloorComplex>(compute_floor(r, opts));
  if (path) {
    try {
      std::filesystem::create_directories(*cfg.cache_dir);
      std::filesystem::path tmp = *path;
      tmp += ".tmp" + std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id()));
      {
        std::ofstream out(tmp);
        out << floor_to_json(*src.floor);
        if (!out) throw std::runtime_error("write failed");
      }
      std::filesystem::rename(tmp, *path);
    } catch (const std::exception& e) {
      src.warnings.push_back("could not write cache " + path->string() + ": " + e.what());
    }
  }
  return src;
}

// ---- verification ----------------------------------------------------------

std::vector<std::pair<std::string, MoebiusElt>> standard_elements(const RingBasis& r) {
  std::vector<std::pair<std::string, MoebiusElt>> out{{"beta", standard_beta(r)}, {"gamma", standard_gamma(r)}};
  if (r.m == 2) out.emplace_back("alpha", alpha_for_m2(r));
  return out;
}

std::vector<std::pair<Integer, Integer>> pell_brute_force(long m, std::int64_t bound) {
  std::vector<std::pair<Integer, Integer>> out;
  const std::int64_t jmax = static_cast<std::int64_t>(std::sqrt(3.0 * m * bound * bound + 1)) + 2;
  for (std::int64_t k = -bound; k <= bound; ++k)
    for (std::int64_t j = -jmax; j <= jmax; ++j)
      if (j * j == 3 * m * k * k + 1) out.emplace_back(Integer(static_cast<long>(j)), Integer(static_cast<long>(k)));
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

const TorsionComponent* component_with_edge(const TorsionData& t, int orbit) {
  for (const auto& c : t.components)
    if (std::binary_search(c.edge_orbits.begin(), c.edge_orbits.end(), orbit)) return &c;
  return nullptr;
}

}  // namespace

Check compare_with_torsion(const OrbReport& orb, const NamedQuotient& nq) {
  Check c;
  c.name = "centraliser_" + nq.name;
  const AxisQuotient& q = nq.quotient;
  const std::string found = to_string(q.type) + " with " + std::to_string(q.edge_count) + " edges";
  if (q.status != QuotientStatus::Certified) {
    c.pass = true;
    c.detail = "inconclusive: " + q.message;
    return c;
  }
  const int ell = element_order(nq.element);
  const TorsionData& t = ell == 2 ? orb.two : orb.three;
  const TorsionComponent* comp = component_with_edge(t, q.edge_orbits.front());
  if (!comp) {
    c.detail = "axis edge orbit " + std::to_string(q.edge_orbits.front()) + " is in no " + std::to_string(ell) +
               "-torsion component";
    return c;
  }
  // an order-3 axis quotient is a circle; it doubles an edge component
  ComponentType want = ell == 2 ? comp->type : ComponentType::Circle;
  int want_edges = ell == 3 && comp->type == ComponentType::Edge ? 2 * comp->edge_count : comp->edge_count;
  c.pass = q.type == want && q.edge_count == want_edges;
  c.detail = "certified " + found + "; component " + to_string(comp->type) + " with " +
             std::to_string(comp->edge_count) + " edges predicts " + to_string(want) + " with " +
             std::to_string(want_edges);
  return c;
}

void add_verification(FullReport& rep, const RunConfig& cfg) {
  OrbReport& orb = rep.orb;
  const FloorComplex& fc = *orb.floor;
  {
    const std::int64_t b = fc.norm_bound;
    bool ok = fc.witness_bounds == std::vector<std::int64_t>{b + 1, b + 2};
    std::string w;
    for (auto x : fc.witness_bounds) w += (w.empty() ? "" : ", ") + std::to_string(x);
    orb.checks.push_back({"swan_stability", ok,
                          "floor at norm bound " + std::to_string(b) + " unchanged at {" + w + "}"});
  }
  const RingBasis& r = fc.basis;
  for (auto& [name, g] : standard_elements(r)) {
    NamedQuotient nq{name, g, {}};
    try {
      nq.quotient = centraliser_quotient(*orb.complex, g, cfg.dioph_bound);
      orb.checks.push_back(compare_with_torsion(orb, nq));
    } catch (const std::exception& e) {
      orb.checks.push_back({"centraliser_" + name, false, e.what()});
    }
    rep.centraliser_quotients.push_back(std::move(nq));
  }
  {
    auto fast = solve_pell(r.m, cfg.dioph_bound);
    auto slow = pell_brute_force(r.m, cfg.dioph_bound);
    orb.checks.push_back({"pell_vs_scan", fast == slow,
                          std::to_string(fast.size()) + " solutions with |k| <= " + std::to_string(cfg.dioph_bound) +
                              ", scan found " + std::to_string(slow.size())});
  }
}

FullReport run_one(long m, const RunConfig& cfg) {
  FullReport rep;
  FloorSource src = load_or_compute_floor(m, cfg);
  rep.warnings = std::move(src.warnings);
  rep.orb = assemble(src.floor);
  if (cfg.verify) add_verification(rep, cfg);
  return rep;
}

std::vector<FullReport> run(const RunConfig& cfg) {
  std::vector<std::future<FullReport>> jobs;
  for (long m : cfg.m_list)
    jobs.push_back(std::async(std::launch::async, [m, &cfg] {
      try {
        return run_one(m, cfg);
      } catch (const std::exception& e) {
        FullReport rep;
        rep.orb.m = m;
        rep.error = e.what();
        return rep;
      }
    }));
  std::vector<FullReport> out;
  for (auto& j : jobs) out.push_back(j.get());
  return out;
}

// ---- report output ---------------------------------------------------------

namespace {

Json enc(const TorsionGraph& g) {
  Json vs = Json::array();
  for (const auto& v : g.vertices) {
    Json cls = Json::array();
    for (const auto& c : v.classes) {
      Json ends = Json::array();
      for (const auto& e : c) ends.push_back(Json::array({e.edge, e.end}));
      cls.push_back(ends);
    }
    vs.push_back(Json{{"orbit", v.orbit}, {"type", to_string(v.type)}, {"end_classes", cls}});
  }
  Json es = Json::array();
  for (const auto& e : g.edges)
    es.push_back(Json{{"orbit", e.orbit},
                      {"type", to_string(e.type)},
                      {"ends", Json::array({e.ends[0], e.ends[1]})},
                      {"weight", e.weight},
                      {"orbits", e.orbits}});
  return Json{{"vertices", vs}, {"edges", es}};
}

Json enc(const TorsionData& t) {
  Json comps = Json::array();
  for (const auto& c : t.components)
    comps.push_back(Json{{"type", to_string(c.type)},
                         {"edge_count", c.edge_count},
                         {"vertex_types", enc_types(c.vertex_types)},
                         {"endpoint_types", enc_types(c.endpoint_types)},
                         {"edge_orbits", c.edge_orbits}});
  return Json{{"ell", t.graph.ell}, {"graph", enc(t.graph)}, {"reduced", enc(t.reduced)}, {"components", comps}};
}

// (row, column, entry) triples
Json enc(const SparseMatrix& a) {
  Json t = Json::array();
  for (int c = 0; c < a.cols; ++c)
    for (const auto& [r, v] : a.columns[c]) t.push_back(Json::array({r, c, v}));
  return Json{{"rows", a.rows}, {"cols", a.cols}, {"entries", t}};
}

Json enc(const AxisQuotient& q) {
  return Json{{"status", to_string(q.status)},
              {"type", to_string(q.type)},
              {"edge_count", q.edge_count},
              {"translation", q.translation},
              {"reflections", q.reflections},
              {"edge_orbits", q.edge_orbits},
              {"generators", q.generators},
              {"message", q.message}};
}

Json to_json(const FullReport& rep) {
  const OrbReport& o = rep.orb;
  Json j;
  j["schema"] = kReportSchema;
  j["m"] = o.m;
  if (!rep.error.empty()) {
    j["error"] = rep.error;
    j["ok"] = false;
    return j;
  }
  j["omega_case"] = o.omega_case;
  {
    const FloorComplex& fc = *o.floor;
    Json vs = Json::array();
    for (const auto& v : fc.vertices) vs.push_back(enc(v));
    j["floor"] = Json{{"norm_bound", fc.norm_bound},
                      {"hemispheres", fc.hemispheres.size()},
                      {"vertices", vs},
                      {"edge_count", fc.edges.size()},
                      {"face_count", fc.faces.size()},
                      {"cusps", fc.cusps}};
  }
  {
    const EquivComplex& ec = *o.complex;
    Json stabs = Json::array();
    for (int d = 0; d <= 2; ++d) {
      Json t = Json::array();
      for (int rep : ec.orbit_reps[d]) t.push_back(to_string(ec.cells(d)[rep].stabiliser.type));
      stabs.push_back(t);
    }
    j["refined_complex"] =
        Json{{"cells", Json::array({ec.vertices.size(), ec.edges.size(), ec.faces.size()})},
             {"orbits", Json::array({ec.orbit_count(0), ec.orbit_count(1), ec.orbit_count(2)})},
             {"orbit_stabilisers", stabs}};
  }
  {
    const QuotientComplex& qc = *o.quotient;
    j["quotient"] = Json{{"cells", o.quotient_cells},
                         {"truncation_cells", Json::array({qc.truncation_vertices, qc.truncation_edges})},
                         {"d1", enc(qc.d1)},
                         {"d2", enc(qc.d2)},
                         {"betti", o.betti}};
  }
  j["torsion"] = Json{{"2", enc(o.two)}, {"3", enc(o.three)}};
  j["lambda"] = Json{{"lambda4", o.lambda.lambda4},
                     {"lambda4_star", o.lambda.lambda4_star},
                     {"lambda6", o.lambda.lambda6},
                     {"lambda6_star", o.lambda.lambda6_star}};
  Json sectors = Json::array();
  for (const auto& s : o.twisted) {
    Json sj{{"ell", s.ell},
            {"component", s.component},
            {"power", s.power},
            {"quotient_type", to_string(s.quotient_type)},
            {"degree_shift", enc(s.shift)},
            {"dims", enc(s.dims)}};
    if (s.representative) sj["representative"] = enc(*s.representative);
    sectors.push_back(sj);
  }
  j["chen_ruan"] = Json{{"untwisted", enc(o.untwisted_dims)},
                        {"untwisted_source", "rational cohomology of the real quotient H/Gamma with cusps removed"},
                        {"twisted_sectors", sectors},
                        {"extra", enc(o.extra_dims)},
                        {"closed_form_extra", enc(o.closed_form_dims)},
                        {"total", enc(o.total_dims)}};
  j["finite_order_conjugacy_classes"] = o.fc_count;
  if (!rep.centraliser_quotients.empty()) {
    Json qs = Json::array();
    for (const auto& q : rep.centraliser_quotients)
      qs.push_back(Json{{"name", q.name}, {"element", enc(q.element)}, {"quotient", enc(q.quotient)}});
    j["centraliser_quotients"] = qs;
  }
  Json cs = Json::array();
  for (const auto& c : o.checks) cs.push_back(Json{{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  j["checks"] = cs;
  j["ok"] = rep.ok();
  return j;
}

std::string pad(int v, int width) {
  std::string s = std::to_string(v);
  return std::string(std::max(0, width - static_cast<int>(s.size())), ' ') + s;
}

std::string dims_line(const DimMap& d) {
  std::string s;
  for (const auto& [k, v] : d) s += (s.empty() ? "" : " ") + std::to_string(v);
  return s;
}

}  // namespace

std::string report_json(const FullReport& rep) { return to_json(rep).dump(2) + "\n"; }

std::string reports_json(const std::vector<FullReport>& reps) {
  Json j;
  j["schema"] = kReportSchema;
  Json rs = Json::array();
  bool ok = true;
  for (const auto& r : reps) {
    rs.push_back(to_json(r));
    ok = ok && r.ok();
  }
  j["reports"] = rs;
  j["ok"] = ok;
  return j.dump(2) + "\n";
}

std::string report_text(const FullReport& rep) {
  const OrbReport& o = rep.orb;
  std::ostringstream os;
  if (!rep.error.empty()) {
    os << "m = " << o.m << ": error: " << rep.error << "\n";
    return os.str();
  }
  os << "m = " << o.m << " (" << o.omega_case << ")\n";
  os << "  floor: norm bound " << o.floor->norm_bound << ", " << o.floor->vertices.size() << " vertices, "
     << o.floor->edges.size() << " edges, " << o.floor->faces.size() << " faces\n";
  os << "  quotient cells " << o.quotient_cells[0] << " " << o.quotient_cells[1] << " " << o.quotient_cells[2]
     << ", betti " << o.betti[0] << " " << o.betti[1] << " " << o.betti[2] << "\n";
  for (const TorsionData* t : {&o.two, &o.three}) {
    os << "  " << t->graph.ell << "-torsion:";
    if (t->components.empty()) os << " none";
    for (const auto& c : t->components) os << " " << to_string(c.type) << "(" << c.edge_count << ")";
    os << "\n";
  }
  os << "  lambda4 " << o.lambda.lambda4 << ", lambda4* " << o.lambda.lambda4_star << ", lambda6 " << o.lambda.lambda6
     << ", lambda6* " << o.lambda.lambda6_star << "\n";
  const auto& l = o.lambda;
  os << "  sectors      Edge(l=2)  Circle(l=2)  Edge(l=3)  Circle(l=3)\n";
  os << "  multiplicity " << pad(l.lambda4_star, 9) << "  " << pad(l.lambda4 - l.lambda4_star, 11) << "  "
     << pad(l.lambda6_star, 9) << "  " << pad(2 * (l.lambda6 - l.lambda6_star), 11) << "\n";
  os << "  orbifold cohomology dims (deg 0..6): " << dims_line(o.total_dims) << "\n";
  os << "  twisted part: " << dims_line(o.extra_dims) << "\n";
  os << "  conjugacy classes of finite order: " << o.fc_count << "\n";
  for (const auto& q : rep.centraliser_quotients)
    os << "  centraliser of " << q.name << ": " << to_string(q.quotient.status) << " "
       << to_string(q.quotient.type) << "(" << q.quotient.edge_count << ")\n";
  for (const auto& c : o.checks) os << "  [" << (c.pass ? "pass" : "FAIL") << "] " << c.name << ": " << c.detail << "\n";
  return os.str();
}

CentraliserRun centraliser_run(long m, const std::string& name, const MoebiusElt& g, const RunConfig& cfg) {
  RunConfig c = cfg;
  c.verify = false;
  FloorSource src = load_or_compute_floor(m, c);
  OrbReport orb = assemble(src.floor);
  const int ord = element_order(g);
  Json j;
  j["schema"] = kReportSchema;
  j["m"] = m;
  j["name"] = name;
  j["element"] = enc(g);
  j["order"] = ord == kInfiniteOrder ? Json("infinite") : Json(ord);
  j["bound"] = cfg.dioph_bound;
  if (g.basis().kind == OmegaCase::Plain && !g.b().is_zero()) {
    DiophInstance inst = build_instance(m, g);
    j["equation_coefficients"] = Json{{"R", enc(inst.R)}, {"J", enc(inst.J)}, {"rho", enc(inst.rho)}, {"iota", enc(inst.iota)}};
  }
  Json comm = Json::array(), anti = Json::array();
  for (const auto& x : commuting_elements(g, cfg.dioph_bound)) comm.push_back(enc(x));
  for (const auto& x : anticommuting_elements(g, cfg.dioph_bound)) anti.push_back(enc(x));
  j["commuting"] = comm;
  j["anticommuting"] = anti;
  CentraliserRun out;
  if (ord != 2 && ord != 3) {
    j["verdict"] = Json{{"pass", false}, {"detail", "not a rotation of order 2 or 3; no axis quotient"}};
  } else {
    NamedQuotient nq{name, g, centraliser_quotient(*orb.complex, g, cfg.dioph_bound)};
    Check chk = compare_with_torsion(orb, nq);
    j["quotient"] = enc(nq.quotient);
    j["verdict"] = Json{{"pass", chk.pass}, {"detail", chk.detail}};
    out.ok = chk.pass;
  }
  out.json = j.dump(2) + "\n";
  return out;
}

}  // namespace bianchi
