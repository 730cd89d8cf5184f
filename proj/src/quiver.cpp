#include "qgd/quiver.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace qgd {

Quiver::Quiver(std::vector<std::string> names, std::vector<Arrow> arrows)
    : names_(std::move(names)), arrows_(std::move(arrows)) {
  std::set<std::string> seen;
  for (const auto& n : names_)
    if (!seen.insert(n).second) throw std::invalid_argument("duplicate vertex name '" + n + "'");
  for (const auto& a : arrows_) {
    if (a.source < 0 || a.source >= vertex_count() || a.target < 0 || a.target >= vertex_count())
      throw std::invalid_argument("arrow '" + a.name + "' references a missing vertex");
    if (a.source == a.target) throw std::invalid_argument("arrow '" + a.name + "' is a loop");
  }
  compute_topology();
}

void Quiver::compute_topology() {
  const int n = vertex_count();
  std::vector<int> indeg(n, 0);
  for (const auto& a : arrows_) ++indeg[a.target];
  topo_.clear();
  // Smallest index first among available vertices keeps the order stable.
  std::set<int> ready;
  for (int v = 0; v < n; ++v)
    if (indeg[v] == 0) ready.insert(v);
  while (!ready.empty()) {
    int v = *ready.begin();
    ready.erase(ready.begin());
    topo_.push_back(v);
    for (const auto& a : arrows_)
      if (a.source == v && --indeg[a.target] == 0) ready.insert(a.target);
  }
  if (static_cast<int>(topo_.size()) != n) throw std::invalid_argument("quiver has an oriented cycle");
  topo_pos_.assign(n, 0);
  for (int i = 0; i < n; ++i) topo_pos_[topo_[i]] = i;
}

int Quiver::index_of(const std::string& name) const {
  for (int v = 0; v < vertex_count(); ++v)
    if (names_[v] == name) return v;
  throw std::invalid_argument("unknown vertex '" + name + "'");
}

int Quiver::partner(int v) const {
  if (!framed_) return -1;
  return v < original_count_ ? v + original_count_ : v - original_count_;
}

long Quiver::path_count(int u, int v) const {
  std::vector<long> count(vertex_count(), 0);
  count[u] = 1;
  for (int x : topo_)
    for (const auto& a : arrows_)
      if (a.source == x) count[a.target] += count[x];
  return count[v];
}

Quiver build_framed(const Quiver& q) {
  if (q.is_framed()) throw std::invalid_argument("quiver is already framed");
  const int n = q.vertex_count();
  std::vector<std::string> names = q.names();
  for (int i = 0; i < n; ++i) names.push_back(q.name(i) + "'");
  std::vector<Arrow> arrows = q.arrows();
  for (int i = 0; i < n; ++i) arrows.push_back({"f" + q.name(i), i, n + i});
  Quiver out(std::move(names), std::move(arrows));
  out.framed_ = true;
  out.original_count_ = n;
  return out;
}

std::string format_vertex(const Quiver& q, const ZVertex& v) {
  std::ostringstream os;
  os << '(' << q.name(v.base) << ',' << v.level << ')';
  return os.str();
}

// ------------------------------------------------------------------ window

RepetitionWindow::RepetitionWindow(Quiver quiver, int pmin, int pmax)
    : quiver_(std::move(quiver)), pmin_(pmin), pmax_(pmax) {
  if (pmin > pmax) throw std::invalid_argument("repetition window needs pmin <= pmax");
  for (int p = pmin; p <= pmax; ++p)
    for (int b : quiver_.topological_order()) vertices_.push_back({b, p});
  for (int i = 0; i < size(); ++i) index_[vertices_[i]] = i;
  in_.assign(size(), {});
  out_.assign(size(), {});
  auto add = [&](int s, int t, int qa, bool sig, int level) {
    int id = static_cast<int>(arrows_.size());
    arrows_.push_back({s, t, qa, sig, level});
    out_[s].push_back(id);
    in_[t].push_back(id);
  };
  for (int p = pmin; p <= pmax; ++p) {
    for (int a = 0; a < quiver_.arrow_count(); ++a) {
      const auto& ar = quiver_.arrow(a);
      add(index({ar.source, p}), index({ar.target, p}), a, false, p);
      if (p > pmin) add(index({ar.target, p - 1}), index({ar.source, p}), a, true, p);
    }
  }
}

int RepetitionWindow::index(const ZVertex& v) const {
  auto it = index_.find(v);
  return it == index_.end() ? -1 : it->second;
}

ZVertex RepetitionWindow::sigma(const ZVertex& v) const {
  if (!quiver_.is_framed()) throw std::logic_error("sigma is defined on framed repetition quivers only");
  if (quiver_.frozen(v.base)) return {quiver_.partner(v.base), v.level};
  return {quiver_.partner(v.base), v.level - 1};
}

std::vector<MeshTerm> RepetitionWindow::mesh(int i) const {
  std::vector<MeshTerm> terms;
  if (frozen(i)) return terms;
  const ZVertex x = vertices_[i];
  if (index(tau(x)) < 0) return terms;
  for (int second : in_[i]) {
    const auto& a2 = arrows_[second];
    // Partner arrow from tau(x) into the middle vertex.
    for (int first : in_[a2.source]) {
      const auto& a1 = arrows_[first];
      if (a1.quiver_arrow == a2.quiver_arrow && a1.sigma != a2.sigma &&
          vertices_[a1.source] == tau(x)) {
        terms.push_back({a2.source, first, second});
      }
    }
  }
  return terms;
}

RepetitionWindow repetition_window(const Quiver& framed, int pmin, int pmax) {
  return RepetitionWindow(framed, pmin, pmax);
}

// ------------------------------------------------------------------ Dynkin

DynkinType parse_dynkin_type(const std::string& s) {
  if (s.size() < 2) throw std::invalid_argument("bad Dynkin type '" + s + "'");
  DynkinType t;
  t.family = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
  try {
    t.rank = std::stoi(s.substr(1));
  } catch (const std::exception&) {
    throw std::invalid_argument("bad Dynkin type '" + s + "'");
  }
  bool ok = (t.family == 'A' && t.rank >= 1) || (t.family == 'D' && t.rank >= 4) ||
            (t.family == 'E' && t.rank >= 6 && t.rank <= 8);
  if (!ok) throw std::invalid_argument("not a Dynkin type: '" + s + "'");
  return t;
}

int coxeter_number(const DynkinType& t) {
  switch (t.family) {
    case 'A': return t.rank + 1;
    case 'D': return 2 * t.rank - 2;
    case 'E': return t.rank == 6 ? 12 : (t.rank == 7 ? 18 : 30);
  }
  throw std::invalid_argument("unknown Dynkin family");
}

std::optional<DynkinType> classify_dynkin(const Quiver& q) {
  if (q.is_framed()) return std::nullopt;
  const int n = q.vertex_count();
  if (n == 0 || q.arrow_count() != n - 1) return std::nullopt;
  std::vector<std::vector<int>> adj(n);
  for (const auto& a : q.arrows()) {
    adj[a.source].push_back(a.target);
    adj[a.target].push_back(a.source);
  }
  // connected tree check
  std::vector<bool> seen(n, false);
  std::vector<int> stack{0};
  seen[0] = true;
  int count = 0;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    ++count;
    for (int u : adj[v])
      if (!seen[u]) {
        seen[u] = true;
        stack.push_back(u);
      }
  }
  if (count != n) return std::nullopt;
  int branch = -1;
  for (int v = 0; v < n; ++v) {
    if (adj[v].size() > 3) return std::nullopt;
    if (adj[v].size() == 3) {
      if (branch >= 0) return std::nullopt;
      branch = v;
    }
  }
  if (branch < 0) return DynkinType{'A', n};
  std::vector<int> arms;
  for (int start : adj[branch]) {
    int len = 1, prev = branch, cur = start;
    while (adj[cur].size() == 2) {
      int next = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
      prev = cur;
      cur = next;
      ++len;
    }
    arms.push_back(len);
  }
  std::sort(arms.begin(), arms.end());
  if (arms[0] == 1 && arms[1] == 1) return DynkinType{'D', n};
  if (arms[0] == 1 && arms[1] == 2 && arms[2] >= 2 && arms[2] <= 4) return DynkinType{'E', n};
  return std::nullopt;
}

Quiver dynkin_quiver(const DynkinType& t, const std::string& orientation) {
  const int n = t.rank;
  std::vector<std::string> names;
  for (int i = 1; i <= n; ++i) names.push_back(std::to_string(i));
  std::vector<Arrow> arrows;
  auto add = [&](int s, int d) {
    arrows.push_back({names[s - 1] + "->" + names[d - 1], s - 1, d - 1});
  };
  if (orientation == "linear" || orientation == "source" || orientation.empty()) {
    switch (t.family) {
      case 'A':
        for (int i = 1; i < n; ++i) add(i, i + 1);
        break;
      case 'D':
        for (int i = 1; i < n - 2; ++i) add(i, i + 1);
        add(n - 2, n - 1);
        add(n - 2, n);
        break;
      case 'E':
        for (int i = 1; i < n - 1; ++i) add(i, i + 1);
        add(3, n);
        break;
    }
  } else {
    std::stringstream ss(orientation);
    std::string item;
    while (std::getline(ss, item, ',')) {
      auto pos = item.find("->");
      if (pos == std::string::npos) throw std::invalid_argument("bad orientation item '" + item + "'");
      int s = std::stoi(item.substr(0, pos));
      int d = std::stoi(item.substr(pos + 2));
      if (s < 1 || s > n || d < 1 || d > n) throw std::invalid_argument("orientation vertex out of range in '" + item + "'");
      add(s, d);
    }
  }
  Quiver q(names, arrows);
  auto cls = classify_dynkin(q);
  if (!cls || !(*cls == t))
    throw std::invalid_argument("orientation '" + orientation + "' is not an orientation of " + t.name());
  return q;
}

std::map<ZVertex, std::vector<long>> knit(const Quiver& q, int max_level) {
  const int n = q.vertex_count();
  std::map<ZVertex, std::vector<long>> dim;
  for (int i = 0; i < n; ++i) {
    std::vector<long> d(n);
    for (int k = 0; k < n; ++k) d[k] = q.path_count(k, i);
    dim[{i, 0}] = d;
  }
  for (int p = 1; p <= max_level; ++p) {
    for (int i : q.topological_order()) {
      std::vector<long> d(n, 0);
      for (const auto& a : q.arrows()) {
        if (a.target == i)  // (alpha,p): (j,p) -> (i,p)
          for (int k = 0; k < n; ++k) d[k] += dim.at({a.source, p})[k];
        if (a.source == i)  // sigma(alpha,p): (b,p-1) -> (i,p)
          for (int k = 0; k < n; ++k) d[k] += dim.at({a.target, p - 1})[k];
      }
      for (int k = 0; k < n; ++k) d[k] -= dim.at({i, p - 1})[k];
      dim[{i, p}] = d;
    }
  }
  return dim;
}

namespace {

std::optional<ZVertex> find_position(const std::map<ZVertex, std::vector<long>>& dims,
                                     const std::vector<long>& target) {
  for (const auto& [v, d] : dims)
    if (d == target) return v;
  return std::nullopt;
}

}  // namespace

std::vector<ZVertex> simple_positions(const Quiver& q) {
  const int n = q.vertex_count();
  auto dims = knit(q, 2 * n + 2);
  std::vector<ZVertex> out;
  for (int i = 0; i < n; ++i) {
    std::vector<long> e(n, 0);
    e[i] = 1;
    auto pos = find_position(dims, e);
    if (!pos) throw std::runtime_error("simple S_" + q.name(i) + " not found by knitting");
    out.push_back(*pos);
  }
  return out;
}

std::vector<ZVertex> injective_positions(const Quiver& q) {
  const int n = q.vertex_count();
  auto dims = knit(q, 2 * n + 2);
  std::vector<ZVertex> out;
  for (int i = 0; i < n; ++i) {
    std::vector<long> d(n);
    for (int k = 0; k < n; ++k) d[k] = q.path_count(i, k);
    auto pos = find_position(dims, d);
    if (!pos) throw std::runtime_error("injective I_" + q.name(i) + " not found by knitting");
    out.push_back(*pos);
  }
  return out;
}

ZVertex CoxeterData::serre_inverse(const ZVertex& v) const {
  for (int i = 0; i < static_cast<int>(image.size()); ++i)
    if (image[i] == v.base) return {i, v.level - shift[i]};
  throw std::logic_error("Serre action is not a permutation");
}

ZVertex CoxeterData::suspension_inverse(const ZVertex& v) const {
  ZVertex s = serre_inverse(v);
  return {s.base, s.level - 1};
}

std::optional<ZVertex> tabulated_suspension(const DynkinType& t, const Quiver& q, const ZVertex& v) {
  const int h = coxeter_number(t);
  bool even_type = (t.family == 'D' && t.rank % 2 == 0) || (t.family == 'E' && t.rank != 6);
  if (even_type) return ZVertex{v.base, v.level + h / 2};
  if (t.family == 'A') {
    // Only the linear orientation 1 -> 2 -> ... -> n has this closed form.
    for (int i = 0; i + 1 < q.vertex_count(); ++i) {
      bool found = false;
      for (const auto& a : q.arrows())
        if (a.source == i && a.target == i + 1) found = true;
      if (!found) return std::nullopt;
    }
    const int n = t.rank;
    const int i = v.base + 1;
    return ZVertex{n + 1 - i - 1, v.level + i};
  }
  return std::nullopt;
}

CoxeterData coxeter_data(const Quiver& q) {
  auto type = classify_dynkin(q);
  if (!type) throw std::invalid_argument("quiver is not an orientation of a Dynkin diagram");
  CoxeterData cd;
  cd.type = *type;
  cd.h = coxeter_number(*type);
  auto inj = injective_positions(q);
  const int n = q.vertex_count();
  for (int i = 0; i < n; ++i) {
    cd.image.push_back(inj[i].base);
    cd.shift.push_back(inj[i].level);
  }
  std::vector<int> sorted = cd.image;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < n; ++i)
    if (sorted[i] != i) throw std::runtime_error("Serre action on bases is not a permutation");
  // Sigma^2 = tau^{-h}
  for (int i = 0; i < n; ++i)
    for (int p = -cd.h; p <= 2 * cd.h; ++p) {
      ZVertex v{i, p};
      ZVertex s2 = cd.suspension(cd.suspension(v));
      if (!(s2 == ZVertex{i, p + cd.h}))
        throw std::runtime_error("Sigma^2 != tau^{-h} at " + format_vertex(q, v));
      if (auto tab = tabulated_suspension(*type, q, v); tab && !(*tab == cd.suspension(v)))
        throw std::runtime_error("tabulated suspension disagrees with knitting at " + format_vertex(q, v));
    }
  // Sigma must map arrows of ZQ to arrows of ZQ.
  for (int p = 0; p <= cd.h; ++p)
    for (const auto& a : q.arrows()) {
      auto check = [&](ZVertex s, ZVertex t) {
        ZVertex ss = cd.suspension(s), st = cd.suspension(t);
        bool ok = false;
        for (const auto& b : q.arrows()) {
          if (ss == ZVertex{b.source, st.level} && st == ZVertex{b.target, st.level}) ok = true;
          if (ss == ZVertex{b.target, st.level - 1} && st == ZVertex{b.source, st.level}) ok = true;
        }
        if (!ok) throw std::runtime_error("suspension is not a quiver automorphism");
      };
      check({a.source, p}, {a.target, p});
      check({a.target, p - 1}, {a.source, p});
    }
  return cd;
}

// ----------------------------------------------------------- configuration

bool Configuration::keeps_frozen(const RepetitionWindow& w, const ZVertex& f) const {
  if (origin == ConfigurationOrigin::Full) return true;
  // f = (i', p) is kept iff c = (i, p+1) belongs to C.
  ZVertex c{w.quiver().partner(f.base), f.level + 1};
  return members.count(c) > 0;
}

Configuration full_configuration() {
  Configuration c;
  c.origin = ConfigurationOrigin::Full;
  c.label = "full";
  return c;
}

Configuration explicit_configuration(const RepetitionWindow& w, const std::vector<ZVertex>& members) {
  Configuration c;
  c.origin = ConfigurationOrigin::Explicit;
  c.label = "explicit";
  for (const auto& v : members) {
    if (v.base < 0 || v.base >= w.quiver().vertex_count())
      throw std::invalid_argument("configuration vertex has an unknown base");
    if (w.quiver().frozen(v.base))
      throw std::invalid_argument("configuration vertex " + format_vertex(w.quiver(), v) + " is frozen");
    if (v.level < w.pmin() || v.level > w.pmax() + 1)
      throw std::invalid_argument("configuration vertex " + format_vertex(w.quiver(), v) + " lies outside the window");
    c.members.insert(v);
  }
  return c;
}

Configuration dynkin_configuration(const RepetitionWindow& w, const Quiver& q) {
  CoxeterData cd = coxeter_data(q);
  Configuration c;
  c.origin = ConfigurationOrigin::DynkinKQ;
  c.label = "dynkin-kQ:" + cd.type.name();
  const int period = cd.h - 1;
  for (const auto& s : simple_positions(q)) {
    ZVertex base = cd.serre_inverse(s);  // tau^{-1} Sigma^{-1} s
    // all translates by multiples of the period landing in [pmin, pmax+1]
    int lo = w.pmin(), hi = w.pmax() + 1;
    int k0 = (lo - base.level) / period - 2;
    for (int k = k0;; ++k) {
      int level = base.level + k * period;
      if (level > hi) break;
      if (level >= lo) c.members.insert({base.base, level});
    }
  }
  return c;
}

}  // namespace qgd
