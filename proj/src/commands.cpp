#include "qgd/commands.hpp"

#include "qgd/desing.hpp"
#include "qgd/hq.hpp"

#include <set>
#include <sstream>

namespace qgd {

namespace {

template <class F>
decltype(auto) dispatch_finite(long q, F&& f) {
  if (q <= 0) throw InputError("this command needs a finite field; pass --q");
  try {
    return dispatch_prime(static_cast<std::uint32_t>(q), std::forward<F>(f));
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
}

template <class F>
decltype(auto) dispatch_field(long q, F&& f) {
  if (q == 0) return f.template operator()<Rational>();
  return dispatch_finite(q, std::forward<F>(f));
}

GrassOptions grass_options(const RunOptions& opt) {
  GrassOptions g;
  g.jobs = std::max(1, opt.jobs);
  g.budget = opt.budget;
  return g;
}

std::string field_name(long q) { return q == 0 ? "Q" : "F_" + std::to_string(q); }

template <class K>
bool invertible(const ModuleMap<K>& f) {
  for (const auto& c : f.component)
    if (c.rows() != c.cols() || (c.rows() > 0 && rank(c) < c.rows())) return false;
  return true;
}

Json histogram(const std::map<long long, int>& h) {
  Json j = Json::object();
  for (const auto& [k, n] : h) j[std::to_string(k)] = n;
  return j;
}

Json failures_json(const Quiver& framed, const std::vector<AssumptionFailure>& fs) {
  Json j = Json::array();
  for (const auto& f : fs)
    j.push_back({{"vertex", format_vertex(framed, f.vertex)}, {"sequence", f.sequence}, {"witness", format_vertex(framed, f.witness)}});
  return j;
}

// ------------------------------------------------------------------ kan

template <class K>
void klr_checks(const KanContext<K>& kan, const Module<K>& m, Report& r) {
  auto k = kan.extend(m);
  r.check("K_L M stays inside the window", false, kan.touches_boundary(k.left));
  r.check("K_R M stays inside the window", false, kan.touches_boundary(k.right));
  r.check_true("res K_L M is isomorphic to M", is_isomorphic(kan.res(k.left), m));
  r.check_true("res K_R M is isomorphic to M", is_isomorphic(kan.res(k.right), m));
  r.check_true("res K_LR M is isomorphic to M", is_isomorphic(kan.res(k.intermediate), m));
  r.check_true("K_LR M is bistable", kan.is_bistable(k.intermediate));
  auto& d = r.data();
  d["dim_K_L"] = dims_to_json(kan.R(), k.left.dims());
  d["dim_K_R"] = dims_to_json(kan.R(), k.right.dims());
  d["dim_K_LR"] = dims_to_json(kan.R(), k.intermediate.dims());
  d["canonical_map_invertible"] = invertible(k.canonical);
  d["K_LR"] = module_to_json(k.intermediate);
}

// ------------------------------------------------------------------ grass and desing

template <class K>
struct Pipeline {
  Nakajima<K> nk;
  KanContext<K> kan;
  DesingContext<K> dc;
  explicit Pipeline(const Setup& s) : nk(build_setup<K>(s)), kan(nk), dc(kan) {}
};

template <class K>
void stratification_data(const Pipeline<K>& p, const Desingularization<K>& d, Report& r) {
  const auto& R = p.kan.R();
  auto vec = [&](const std::vector<int>& v) { return dims_to_json(R, p.dc.join(v, std::vector<int>(p.kan.S().size(), 0))); };
  auto& j = r.data();
  j["points"] = d.targets.size();
  Json strata = Json::array();
  for (const auto& v : d.strata) {
    int n = 0;
    for (const auto& t : d.targets) n += t.v == v;
    strata.push_back({{"v", vec(v)}, {"points", n}});
  }
  j["strata"] = strata;
  Json maximal = Json::array();
  for (const auto& v : d.maximal) maximal.push_back(vec(v));
  j["maximal_vectors"] = maximal;
  Json comps = Json::array();
  for (const auto& v : d.components) comps.push_back(vec(v));
  j["components"] = comps;
  std::map<long long, int> tangent;
  for (const auto& t : d.targets) ++tangent[t.tangent];
  j["tangent_histogram"] = histogram(tangent);
  Json classes = Json::array();
  for (const auto& c : d.classes)
    classes.push_back({{"points", c.points}, {"dim", c.dim}, {"v", vec(c.v)}, {"generic", c.generic}});
  j["iso_classes"] = classes;
}

template <class K>
void desing_checks(const Pipeline<K>& p, const Desingularization<K>& d, Report& r) {
  const auto& R = p.kan.R();
  auto vec = [&](const std::vector<int>& v) { return dims_to_json(R, p.dc.join(v, std::vector<int>(p.kan.S().size(), 0))); };
  int mismatched = 0;
  for (const auto& f : d.fibers) mismatched += f.fiber != f.quotient;
  r.check("fibres that differ from the quotient Grassmannian count", 0, mismatched);
  int lifted = 0, restricted = 0;
  for (const auto& t : d.targets) {
    lifted += t.lift_matches;
    restricted += p.dc.restrict(t.lift) == t.point;
  }
  r.check("K_LR U equals the submodule of K_LR M generated by U", d.targets.size(), lifted);
  r.check("K_LR U restricts to U", d.targets.size(), restricted);
  std::vector<int> hit(d.targets.size(), 0), bistable(d.targets.size(), 0);
  std::vector<long long> total(d.targets.size(), 0);
  int unmapped = 0, bistable_not_generated = 0;
  Json pieces = Json::array();
  for (const auto& piece : d.pieces) {
    std::map<long long, int> tangent;
    int nbs = 0;
    for (const auto& dp : piece.points) {
      ++tangent[dp.tangent];
      if (!piece.component) continue;
      if (dp.image < 0) {
        ++unmapped;
        continue;
      }
      ++hit[dp.image];
      ++total[dp.image];
      if (dp.bistable) {
        ++nbs;
        ++bistable[dp.image];
        if (!(p.dc.lift(d.klr, p.dc.restrict(dp.point)) == dp.point)) ++bistable_not_generated;
      }
    }
    pieces.push_back({{"v", vec(piece.v)},
                      {"component", piece.component},
                      {"points", piece.points.size()},
                      {"bistable_points", nbs},
                      {"tangent_histogram", histogram(tangent)}});
  }
  int covered = 0, multiple = 0;
  std::map<long long, int> fibre;
  for (size_t t = 0; t < d.targets.size(); ++t) {
    covered += hit[t] > 0;
    multiple += bistable[t] > 1;
    ++fibre[total[t]];
  }
  r.check("domain points mapping outside Gr_w(M)", 0, unmapped);
  r.check("target points hit by pi", d.targets.size(), covered);
  r.check("target points with two bistable preimages", 0, multiple);
  r.check("bistable points not generated by their restriction", 0, bistable_not_generated);
  int above = 0;
  for (const auto& v : d.strata) {
    bool below = false;
    for (const auto& c : d.maximal) {
      bool le = true;
      for (size_t i = 0; i < v.size(); ++i) le = le && v[i] <= c[i];
      below = below || le;
    }
    above += !below;
  }
  r.check("strata not below a maximal vector", 0, above);
  r.data()["pieces"] = pieces;
  r.data()["fibre_histogram"] = histogram(fibre);
}

template <class K>
Desingularization<K> desing_report(const Pipeline<K>& p, const Module<K>& m, const std::vector<int>& w,
                                   const RunOptions& opt, Report& r) {
  Module<K> klr = p.kan.intermediate_extension(m);
  const int e = ext1(klr, klr);
  if (!r.check("dim Ext^1(K_LR M, K_LR M)", 0, e)) {
    r.data()["refused"] = "K_LR M is not rigid";
    return {};
  }
  auto d = p.dc.run(m, w, grass_options(opt));
  stratification_data(p, d, r);
  desing_checks(p, d, r);
  return d;
}

template <class K>
std::vector<int> dimvec_for(const Pipeline<K>& p, const Json& dimvec, const Json& module) {
  if (!dimvec.is_null()) return parse_dims(dimvec, p.kan.S());
  if (module.contains("dimvec")) return parse_dims(module.at("dimvec"), p.kan.S());
  throw InputError("no dimension vector: pass --dimvec or add \"dimvec\" to the module file");
}

// ------------------------------------------------------------------ hq

template <class K>
void hq_checks(const Quiver& q, Report& r) {
  HqContext<K> hq(q);
  const Quiver framed = build_framed(q);
  Json mods = Json::array();
  for (size_t m = 0; m < hq.modules().size(); ++m) {
    const auto& mod = hq.modules()[m];
    const std::string name = format_vertex(q, mod.position);
    auto c = hq.compare(static_cast<int>(m));
    r.check("dim M^ = dim K_LR(embed M) for M at " + name, c.hat, c.klr);
    Json stray = Json::array();
    for (const auto& v : c.stray) stray.push_back(format_vertex(framed, v));
    r.check("K_LR(embed M) vanishes off H_Q for M at " + name, Json::array(), stray);
    r.check_true("K_LR(embed M) is the submodule of M^ generated by proj for M at " + name, c.generated_isomorphic);
    r.check("K_LR(embed M) stays inside the window for M at " + name, false, c.touches_boundary);
    mods.push_back({{"position", name}, {"dims", mod.dims}, {"hat", c.hat}});
  }
  Json objs = Json::array();
  for (const auto& o : hq.objects())
    objs.push_back({{"kind", o.kind == HqKind::Identity ? "identity" : "presentation"},
                    {"module", format_vertex(q, hq.modules()[o.module].position)},
                    {"vertex", format_vertex(framed, o.vertex)}});
  r.data()["window"] = {hq.window().pmin(), hq.window().pmax()};
  r.data()["objects"] = objs;
  r.data()["modules"] = mods;
}

// ------------------------------------------------------------------ examples

Report example_a3_nonrigid(const std::string& data_dir) {
  Report r("example run a3-nonrigid");
  Json j = read_json_file(data_dir + "/modules/a3_nonrigid.json");
  Setup s = parse_setup(j.at("setup"));
  Nakajima<Rational> nk = build_setup<Rational>(s);
  KanContext<Rational> kan(nk);
  Module<Rational> m = parse_module<Rational>(j, kan.S_ptr());
  auto k = kan.extend(m);
  r.check("K_L M stays inside the window", false, kan.touches_boundary(k.left));
  const int es = ext1(m, m), er = ext1(k.intermediate, k.intermediate);
  Module<Rational> u = cokernel_module(k.canonical, k.right);
  const int e2 = ext2(u, u);
  r.check("Ext^1_S(M, M) is nonzero", true, es > 0);
  r.check("Ext^1_R(K_LR M, K_LR M) is nonzero", true, er > 0);
  r.check("dim Ext^2_R(U, U) for U = coker(K_LR M -> K_R M)", 0, e2);
  std::vector<int> socle(kan.R().size(), 0);
  for (int x : u.support()) {
    std::vector<int> dims(kan.R().size(), 0);
    dims[x] = 1;
    Module<Rational> simple(kan.R_ptr(), dims, std::vector<Matrix<Rational>>(kan.R().generators().size()));
    socle[x] = hom_dim(simple, u);
  }
  r.check("socle of U", Json::object({{j.at("cokernel_socle").get<std::string>(), 1}}), dims_to_json(kan.R(), socle));
  r.data()["dim_U"] = dims_to_json(kan.R(), u.dims());
  r.data()["field"] = "Q";
  r.data()["ext1_S"] = es;
  r.data()["ext1_R"] = er;
  r.data()["ext2_U"] = e2;
  r.data()["dim_K_LR"] = dims_to_json(kan.R(), k.intermediate.dims());
  r.data()["dim_K_R"] = dims_to_json(kan.R(), k.right.dims());
  return r;
}

template <class K>
void d4_tilted(const std::string& data_dir, const RunOptions& opt, Report& r) {
  const long q = FieldTraits<K>::characteristic;
  Json j = read_json_file(data_dir + "/modules/d4_tilted.json");
  Pipeline<K> p(parse_setup(j.at("setup")));
  const auto& S = p.kan.S_ptr();
  Module<K> m = parse_module<K>(j, S);
  std::vector<int> w = parse_dims(j.at("dimvec"), p.kan.S());
  Module<K> i1 = parse_module<K>(j.at("summands").at(0), S);
  Module<K> n = direct_sum(parse_module<K>(j.at("summands").at(1), S), parse_module<K>(j.at("summands").at(2), S));
  auto d = desing_report(p, m, w, opt, r);
  if (!r.ok()) return;
  auto vec = [&](const std::vector<int>& v) { return dims_to_json(p.kan.R(), p.dc.join(v, std::vector<int>(p.kan.S().size(), 0))); };
  const auto v1 = p.dc.nonfrozen_part(p.kan.intermediate_extension(i1).dims());
  const auto v2 = p.dc.nonfrozen_part(p.kan.intermediate_extension(n).dims());
  r.check("|Gr_w(M)(F_q)| = 2q+1", 2 * q + 1, d.targets.size());
  Json comps = Json::array(), expected = Json::array({vec(v1), vec(v2)});
  for (const auto& v : d.components) comps.push_back(vec(v));
  r.check("strata vectors of the components: v1 from I1, v2 from P2+I3", expected, comps);
  Json sizes = Json::array(), tangents = Json::array(), want_sizes = Json::array(), want_tangents = Json::array();
  for (const auto& piece : d.pieces) {
    sizes.push_back(piece.points.size());
    std::set<int> t;
    for (const auto& dp : piece.points) t.insert(dp.tangent);
    tangents.push_back(t);
    want_sizes.push_back(q + 1);
    want_tangents.push_back(std::set<int>{1});
  }
  r.check("points of each domain Grassmannian", want_sizes, sizes);
  r.check("tangent dimensions on each domain Grassmannian", want_tangents, tangents);
  std::vector<long long> total(d.targets.size(), 0);
  for (const auto& f : d.fibers)
    if (d.pieces[f.piece].component) total[f.target] += f.fiber;
  int singular = 0, others_fibre_one = 0, n_points = 0, n_hom_one = 0;
  Json l_facts = Json::object();
  for (size_t t = 0; t < d.targets.size(); ++t) {
    const auto& tp = d.targets[t];
    Module<K> u = point_module(m, tp.point);
    const int hom_quot = hom_dim(u, quotient_module(m, tp.point.basis).first);
    if (total[t] == 2) {
      ++singular;
      l_facts = {{"tangent", tp.tangent}, {"hom_L_M_over_L", hom_quot}, {"isomorphic_to_P2_plus_I3", is_isomorphic(u, n)}};
    } else {
      others_fibre_one += total[t] == 1;
      if (is_isomorphic(u, n)) {
        ++n_points;
        n_hom_one += hom_quot == 1;
      }
    }
  }
  r.check("target points with fibre 2", 1, singular);
  r.check("target points with fibre 1", 2 * q, others_fibre_one);
  r.check("L: tangent, dim Hom(L, M/L), L ~ P2+I3",
          Json({{"tangent", 2}, {"hom_L_M_over_L", 2}, {"isomorphic_to_P2_plus_I3", true}}), l_facts);
  r.check("points N ~ P2+I3 besides L with dim Hom(N, M/N) = 1", q, n_hom_one);
  r.data()["n_points"] = n_points;
}

}  // namespace

Json json_argument(const std::string& arg) {
  std::string text = arg;
  if (!arg.empty() && arg.front() != '{' && arg.front() != '[') return read_json_file(arg);
  try {
    return Json::parse(text);
  } catch (const std::exception& e) {
    throw InputError("cannot parse JSON argument: " + std::string(e.what()));
  }
}

Setup resolve_setup(const SetupFlags& f, const Json& base) {
  Json j = base.is_object() ? base : Json::object();
  if (!f.quiver.empty()) {
    j.erase("dynkin");
    j.erase("orientation");
    j["quiver"] = read_json_file(f.quiver);
  }
  if (!f.dynkin.empty()) {
    j.erase("quiver");
    j["dynkin"] = f.dynkin;
  }
  if (!f.orientation.empty()) j["orientation"] = f.orientation;
  if (!f.window.empty()) j["window"] = f.window;
  if (!f.config.empty()) {
    if (f.config == "full" || f.config == "dynkin" || f.config == "dynkin-kQ") {
      j["config"] = f.config;
    } else if (f.config.front() == '(') {
      Json members = Json::array();
      std::stringstream ss(f.config);
      std::string item;
      while (std::getline(ss, item, ';'))
        if (!item.empty()) members.push_back(item);
      j["config"] = members;
    } else {
      Json c = read_json_file(f.config);
      j["config"] = c.is_object() ? c.at("config") : c;
    }
  }
  if (!j.contains("window")) {
    if (!j.contains("dynkin")) throw InputError("no window: pass --window lo:hi");
    const int h = coxeter_number(parse_dynkin_type(j.at("dynkin").get<std::string>()));
    j["window"] = {0, 2 * h};
  }
  return parse_setup(j);
}

Report cmd_mesh_build(const Setup& setup) {
  Report r("mesh build");
  Nakajima<Rational> nk = build_setup<Rational>(setup);
  const auto& R = nk.R;
  Json objects = Json::array(), generators = Json::array();
  int frozen = 0;
  for (int x = 0; x < R.size(); ++x) {
    objects.push_back({{"label", R.label(x)}, {"frozen", R.frozen(x)}});
    frozen += R.frozen(x);
  }
  for (const auto& g : R.generators()) generators.push_back({{"name", g.name}, {"from", R.label(g.source)}, {"to", R.label(g.target)}});
  auto failures = validate_assumption(R);
  r.data()["setup"] = setup.to_json();
  r.data()["objects"] = objects;
  r.data()["generators"] = generators;
  r.data()["frozen_objects"] = frozen;
  r.check("S_C is the full subcategory on the frozen objects", frozen, nk.S.size());
  r.check("vertices where the mesh sequences fail to be left exact", Json::array(),
          failures_json(R.core().window().quiver(), failures));
  return r;
}

Report cmd_kan_klr(const Setup& setup, const Json& module, const RunOptions& opt) {
  return dispatch_field(opt.q, [&]<class K>() {
    Report r("kan klr");
    Nakajima<K> nk = build_setup<K>(setup);
    KanContext<K> kan(nk);
    Module<K> m = parse_module<K>(module, kan.S_ptr());
    r.data()["field"] = field_name(opt.q);
    r.data()["dim_M"] = dims_to_json(kan.S(), m.dims());
    klr_checks(kan, m, r);
    return r;
  });
}

Report cmd_grass_enumerate(const Setup& setup, const Json& module, const Json& dimvec, const RunOptions& opt) {
  return dispatch_finite(opt.q, [&]<class K>() {
    Report r("grass enumerate");
    Pipeline<K> p(setup);
    Module<K> m = parse_module<K>(module, p.kan.S_ptr());
    std::vector<int> w = dimvec_for(p, dimvec, module);
    r.data()["field"] = field_name(opt.q);
    r.data()["dimvec"] = dims_to_json(p.kan.S(), w);
    auto d = p.dc.stratify(m, w, grass_options(opt));
    stratification_data(p, d, r);
    int lifted = 0;
    for (const auto& t : d.targets) lifted += t.lift_matches;
    r.check("K_LR U equals the submodule of K_LR M generated by U", d.targets.size(), lifted);
    return r;
  });
}

Report cmd_desing_verify(const Setup& setup, const Json& module, const Json& dimvec, const RunOptions& opt) {
  return dispatch_finite(opt.q, [&]<class K>() {
    Report r("desing verify");
    Pipeline<K> p(setup);
    Module<K> m = parse_module<K>(module, p.kan.S_ptr());
    std::vector<int> w = dimvec_for(p, dimvec, module);
    r.data()["field"] = field_name(opt.q);
    r.data()["dimvec"] = dims_to_json(p.kan.S(), w);
    desing_report(p, m, w, opt, r);
    return r;
  });
}

Report cmd_hq_check(const Quiver& quiver, const RunOptions& opt) {
  return dispatch_field(opt.q, [&]<class K>() {
    Report r("hq check");
    r.data()["field"] = field_name(opt.q);
    hq_checks<K>(quiver, r);
    return r;
  });
}

Report cmd_example(const std::string& name, const RunOptions& opt, const std::string& data_dir) {
  if (name == "a3-nonrigid") return example_a3_nonrigid(data_dir);
  if (name == "a3-cfr") {
    Report r("example run a3-cfr");
    r.data()["field"] = "Q";
    hq_checks<Rational>(dynkin_quiver(parse_dynkin_type("A3"), "linear"), r);
    return r;
  }
  if (name == "d4-tilted") {
    return dispatch_finite(opt.q, [&]<class K>() {
      Report r("example run d4-tilted");
      r.data()["field"] = field_name(opt.q);
      d4_tilted<K>(data_dir, opt, r);
      return r;
    });
  }
  throw InputError("unknown example " + name + " (known: a3-nonrigid, d4-tilted, a3-cfr)");
}

}  // namespace qgd
