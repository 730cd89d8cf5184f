#pragma once

// F_q-point shadow of the desingularization
//   pi : coprod_v Gr_(v,w)(K_LR M) -> Gr_w(M),  L |-> res L,
// with strata, fibres and the fibre formula checked by enumeration.

#include "qgd/grass.hpp"
#include "qgd/kan.hpp"

#include <map>

namespace qgd {

template <class K>
struct TargetPoint {
  SubmodulePoint<K> point;
  SubmodulePoint<K> lift;  // K_LR(U) as the submodule of K_LR(M) generated by U
  std::vector<int> v;      // non-frozen part of dim K_LR(U)
  int tangent = 0;
  int iso_class = -1;
  bool lift_matches = false;  // dim of the generated submodule equals dim K_LR(U)
};

/// Points of Gr_w(M) with submodule isomorphic to N. The class is an
/// irreducible locally closed subset of dimension dim Hom(N, M) - dim End(N).
struct IsoClass {
  int representative = 0;  // a target index
  int points = 0;
  int dim = 0;
  std::vector<int> v;
  bool generic = false;  // in the closure of no other class
};

template <class K>
struct DomainPoint {
  SubmodulePoint<K> point;
  int image = -1;  // index into the target points
  bool bistable = false;
  int tangent = 0;
};

template <class K>
struct Piece {
  std::vector<int> v;
  bool component = false;  // v belongs to V_w(M)
  std::vector<DomainPoint<K>> points;  // Gr_(v,w)(K_LR M)
};

struct FiberCount {
  int target = 0;
  int piece = 0;
  long long fiber = 0;     // |pi_v^{-1}(U)|
  long long quotient = 0;  // |Gr_{(v,w) - dim K_LR U}(K_LR M / K_LR U)|
};

template <class K>
struct Desingularization {
  Module<K> klr;                        // K_LR(M) over R
  std::vector<TargetPoint<K>> targets;  // Gr_w(M)
  std::vector<std::vector<int>> strata;  // distinct v, in order of first appearance
  std::vector<std::vector<int>> maximal;  // componentwise-maximal strata
  std::vector<IsoClass> classes;
  std::vector<std::vector<int>> components;  // v of the generic classes: the set V_w(M)
  std::vector<Piece<K>> pieces;  // the components first, then the other strata vectors
  std::vector<FiberCount> fibers;
  int klr_ext1 = 0;
};

template <class K>
class DesingContext {
 public:
  explicit DesingContext(const KanContext<K>& kan) : kan_(kan) {
    for (int x = 0; x < kan.R().size(); ++x) (kan.R().frozen(x) ? frozen_ : nonfrozen_).push_back(x);
  }

  std::vector<int> nonfrozen_part(const std::vector<int>& dims) const {
    std::vector<int> v;
    for (int x : nonfrozen_) v.push_back(dims[x]);
    return v;
  }

  /// Dimension vector over R with v at the non-frozen and w at the frozen objects.
  std::vector<int> join(const std::vector<int>& v, const std::vector<int>& w) const {
    std::vector<int> d(kan_.R().size(), 0);
    for (size_t i = 0; i < nonfrozen_.size(); ++i) d[nonfrozen_[i]] = v[i];
    for (int f = 0; f < kan_.S().size(); ++f) d[kan_.R().index(kan_.S().vertex(f))] = w[f];
    return d;
  }

  /// The submodule of K_LR(M) generated by U (whose frozen coordinates are
  /// those of M).
  SubmodulePoint<K> lift(const Module<K>& klr, const SubmodulePoint<K>& u) const {
    const auto& R = kan_.R();
    std::vector<Matrix<K>> gens(R.size());
    for (int f = 0; f < kan_.S().size(); ++f) gens[R.index(kan_.S().vertex(f))] = u.basis[f];
    auto span = generated_submodule(klr, gens);
    SubmodulePoint<K> p;
    for (int x = 0; x < R.size(); ++x) p.basis.push_back(canonical_span(span[x], klr.dim(x)));
    return p;
  }

  /// Restriction of a point of Gr(K_LR M) to the frozen objects.
  SubmodulePoint<K> restrict(const SubmodulePoint<K>& p) const {
    SubmodulePoint<K> u;
    for (int f = 0; f < kan_.S().size(); ++f) u.basis.push_back(p.basis[kan_.R().index(kan_.S().vertex(f))]);
    return u;
  }

  /// Gr_w(M) with strata, iso classes and components; no domain pieces.
  Desingularization<K> stratify(const Module<K>& m, const std::vector<int>& w, const GrassOptions& opt) const {
    Desingularization<K> d;
    d.klr = kan_.intermediate_extension(m);
    d.klr_ext1 = ext1(d.klr, d.klr);
    const auto pts = enumerate_grassmannian(m, w, opt);
    std::vector<Module<K>> reps;
    for (const auto& p : pts) {
      TargetPoint<K> t;
      t.point = p;
      t.lift = lift(d.klr, p);
      const Module<K> u = point_module(m, p);
      t.v = nonfrozen_part(kan_.intermediate_extension(u).dims());
      t.lift_matches = nonfrozen_part(t.lift.dims()) == t.v;
      t.tangent = tangent_dim(m, p);
      for (size_t c = 0; c < reps.size() && t.iso_class < 0; ++c)
        if (is_isomorphic(u, reps[c])) t.iso_class = static_cast<int>(c);
      if (t.iso_class < 0) {
        t.iso_class = static_cast<int>(reps.size());
        IsoClass ic;
        ic.representative = static_cast<int>(d.targets.size());
        ic.dim = hom_dim(u, m) - hom_dim(u, u);
        ic.v = t.v;
        d.classes.push_back(ic);
        reps.push_back(u);
      }
      ++d.classes[t.iso_class].points;
      if (std::find(d.strata.begin(), d.strata.end(), t.v) == d.strata.end()) d.strata.push_back(t.v);
      d.targets.push_back(std::move(t));
    }
    d.maximal = maximal_vectors(d.strata);
    mark_generic(d.classes, reps);
    for (const auto& c : d.classes)
      if (c.generic && std::find(d.components.begin(), d.components.end(), c.v) == d.components.end())
        d.components.push_back(c.v);
    return d;
  }

  Desingularization<K> run(const Module<K>& m, const std::vector<int>& w, const GrassOptions& opt) const {
    Desingularization<K> d = stratify(m, w, opt);
    std::map<std::string, int> index;
    for (size_t t = 0; t < d.targets.size(); ++t) index[key(d.targets[t].point)] = static_cast<int>(t);
    std::vector<std::vector<int>> vs = d.components;
    for (const auto& v : d.strata)
      if (std::find(vs.begin(), vs.end(), v) == vs.end()) vs.push_back(v);
    for (size_t i = 0; i < vs.size(); ++i) {
      Piece<K> piece;
      piece.v = vs[i];
      piece.component = i < d.components.size();
      for (const auto& p : enumerate_grassmannian(d.klr, join(vs[i], w), opt)) {
        DomainPoint<K> dp;
        dp.point = p;
        auto it = index.find(key(restrict(p)));
        dp.image = it == index.end() ? -1 : it->second;
        dp.bistable = kan_.is_bistable(point_module(d.klr, p));
        dp.tangent = tangent_dim(d.klr, p);
        piece.points.push_back(std::move(dp));
      }
      for (size_t t = 0; t < d.targets.size(); ++t) {
        FiberCount fc;
        fc.target = static_cast<int>(t);
        fc.piece = static_cast<int>(i);
        for (const auto& dp : piece.points)
          if (dp.image == static_cast<int>(t)) ++fc.fiber;
        fc.quotient = quotient_count(d.klr, d.targets[t].lift, join(vs[i], w), opt);
        d.fibers.push_back(fc);
      }
      d.pieces.push_back(std::move(piece));
    }
    return d;
  }

  /// A class N can lie in the closure of N' only if dim N < dim N',
  /// v(N) <= v(N') and N is below N' in the hom order, tested against the
  /// class representatives. Classes passing no such test are generic.
  static void mark_generic(std::vector<IsoClass>& classes, const std::vector<Module<K>>& reps) {
    const size_t n = classes.size();
    std::vector<std::vector<int>> hom(n, std::vector<int>(n));
    for (size_t a = 0; a < n; ++a)
      for (size_t b = 0; b < n; ++b) hom[a][b] = hom_dim(reps[a], reps[b]);
    for (size_t a = 0; a < n; ++a) {
      classes[a].generic = true;
      for (size_t b = 0; b < n && classes[a].generic; ++b) {
        if (a == b || classes[a].dim >= classes[b].dim) continue;
        bool below = true;
        for (size_t i = 0; i < classes[a].v.size(); ++i)
          if (classes[a].v[i] > classes[b].v[i]) below = false;
        for (size_t x = 0; x < n && below; ++x)
          if (hom[x][a] < hom[x][b] || hom[a][x] < hom[b][x]) below = false;
        if (below) classes[a].generic = false;
      }
    }
  }

  /// |Gr_e(K_LR M / L)| where e = target - dim L, zero if e is not a
  /// dimension vector.
  long long quotient_count(const Module<K>& klr, const SubmodulePoint<K>& l, const std::vector<int>& target,
                           const GrassOptions& opt) const {
    std::vector<int> e = target;
    auto ld = l.dims();
    for (size_t x = 0; x < e.size(); ++x) {
      e[x] -= ld[x];
      if (e[x] < 0) return 0;
    }
    Module<K> quo = quotient_module(klr, l.basis).first;
    return static_cast<long long>(enumerate_grassmannian(quo, e, opt).size());
  }

 private:
  static std::string key(const SubmodulePoint<K>& p) {
    std::string s;
    for (const auto& b : p.basis) s += b.str() + ";";
    return s;
  }

  const KanContext<K>& kan_;
  std::vector<int> frozen_, nonfrozen_;
};

}  // namespace qgd
