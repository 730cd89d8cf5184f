#pragma once

// The category H_Q of injective maps P1 -> P0 between projective kQ-modules,
// the module M^ on it, and the comparison with K_LR over the repetitive
// Nakajima category. A kQ-module is placed at its knitted position in ZQ;
// H_Q sits in R_C as the frozen vertices of proj(kQ) together with the
// vertices Sigma^{-1} L of the non-projective indecomposables L.

#include "qgd/kan.hpp"

#include <map>

namespace qgd {

struct Indecomposable {
  ZVertex position;        // in ZQ, unframed bases
  std::vector<long> dims;  // dimension vector over kQ
  bool projective = false;
  int projective_index = -1;  // i when this is P_i
};

/// Indecomposable kQ-modules: the knitted positions from the projectives up
/// to the injective in each tau-orbit, ordered by position.
inline std::vector<Indecomposable> indecomposables(const Quiver& q) {
  const int n = q.vertex_count();
  std::vector<int> last(n, -1);
  for (const auto& v : injective_positions(q)) last[v.base] = v.level;
  std::vector<Indecomposable> out;
  for (const auto& [v, d] : knit(q, 2 * n + 2)) {
    if (v.level > last[v.base]) continue;
    Indecomposable m{v, d, v.level == 0, v.level == 0 ? v.base : -1};
    out.push_back(m);
  }
  return out;
}

enum class HqKind { Identity, Presentation };

/// An indecomposable object of H_Q and its vertex in R_C.
struct HqObject {
  HqKind kind;
  int module;      // index into indecomposables(): P for id_P, L for the presentation of L
  ZVertex vertex;  // framed bases
};

template <class K>
struct HatComparison {
  int module = 0;
  std::vector<int> hat;                // dim M^ at each H_Q object
  std::vector<int> klr;                // dim K_LR(embed M) at each H_Q object
  std::vector<ZVertex> stray;          // vertices off H_Q where K_LR(embed M) is nonzero
  bool embed_supported_on_proj = false;  // embed M lives on the proj(kQ) frozen vertices
  bool generated_isomorphic = false;   // K_LR(embed M) ~ submodule of M^ generated by proj
  bool touches_boundary = false;
};

template <class K>
class HqContext {
 public:
  explicit HqContext(const Quiver& q)
      : q_(q), cox_(coxeter_data(q)), modules_(indecomposables(q)), window_(make_window()),
        nk_(build_nakajima<K>(window_, dynkin_configuration(window_, q))), kan_(nk_) {
    const auto simples = simple_positions(q);
    for (size_t m = 0; m < modules_.size(); ++m) {
      const auto& ind = modules_[m];
      if (ind.projective) {
        ZVertex c = cox_.serre_inverse(simples[ind.projective_index]);
        objects_.push_back({HqKind::Identity, static_cast<int>(m), window_.sigma(c)});
      } else {
        objects_.push_back({HqKind::Presentation, static_cast<int>(m), cox_.suspension_inverse(ind.position)});
      }
    }
    for (int i = 0; i < q.vertex_count(); ++i) simple_index_.push_back(r_index(simples[i]));
  }

  const std::vector<Indecomposable>& modules() const { return modules_; }
  const std::vector<HqObject>& objects() const { return objects_; }
  const KanContext<K>& kan() const { return kan_; }
  const RepetitionWindow& window() const { return window_; }

  /// Index in R_C of a ZQ position (unframed base).
  int r_index(const ZVertex& v) const { return kan_.R().index(v); }

  /// dim Hom_kQ(L, M) read off the mesh category.
  int hom(int l, int m) const { return kan_.R().hom_dim(r_index(modules_[l].position), r_index(modules_[m].position)); }

  /// dim M^ at an H_Q object: dim Hom(P, M) for id_P, and
  /// sum_i [top L : S_i] dim M_i - dim Hom(L, M) for the minimal
  /// presentation of L.
  int hat_dim(int m, const HqObject& o) const {
    const auto& mod = modules_[m];
    if (o.kind == HqKind::Identity) return static_cast<int>(mod.dims[modules_[o.module].projective_index]);
    const int lx = r_index(modules_[o.module].position);
    long d = 0;
    for (int i = 0; i < q_.vertex_count(); ++i) d += kan_.R().hom_dim(lx, simple_index_[i]) * mod.dims[i];
    return static_cast<int>(d) - hom(o.module, m);
  }

  /// M as an S_C-module: the restriction of Hom(?, M) to the frozen objects.
  Module<K> embed(int m) const { return kan_.restricted_projective(r_index(modules_[m].position)); }

  HatComparison<K> compare(int m) const {
    HatComparison<K> c;
    c.module = m;
    const auto& R = kan_.R();
    const Module<K> e = embed(m);
    c.embed_supported_on_proj = true;
    std::vector<char> proj_frozen(R.size(), 0), on_hq(R.size(), 0);
    for (const auto& o : objects_) {
      on_hq[R.index(o.vertex)] = 1;
      if (o.kind == HqKind::Identity) proj_frozen[R.index(o.vertex)] = 1;
    }
    for (int f = 0; f < kan_.S().size(); ++f)
      if (e.dim(f) > 0 && !proj_frozen[kan_.r_of_s(f)]) c.embed_supported_on_proj = false;
    const Module<K> klr = kan_.intermediate_extension(e);
    c.touches_boundary = kan_.touches_boundary(klr);
    for (const auto& o : objects_) {
      c.hat.push_back(hat_dim(m, o));
      c.klr.push_back(klr.dim(R.index(o.vertex)));
    }
    for (int x = 0; x < R.size(); ++x)
      if (!on_hq[x] && klr.dim(x) > 0) c.stray.push_back(R.vertex(x));
    // K_LR(res M^) is the submodule of M^ generated by the values at the
    // frozen objects.
    const Module<K> rep = projective_at(kan_.R_ptr(), r_index(modules_[m].position));
    std::vector<Matrix<K>> gens(R.size());
    for (int x = 0; x < R.size(); ++x)
      if (R.frozen(x)) gens[x] = Matrix<K>::identity(rep.dim(x));
    c.generated_isomorphic = is_isomorphic(klr, submodule(rep, generated_submodule(rep, gens)));
    return c;
  }

 private:
  RepetitionWindow make_window() const {
    int lo = 0, hi = 0;
    for (const auto& m : modules_) {
      lo = std::min(lo, cox_.suspension_inverse(m.position).level);
      hi = std::max(hi, m.position.level);
    }
    return RepetitionWindow(build_framed(q_), lo - 2 * cox_.h, hi + 2 * cox_.h);
  }

  Quiver q_;
  CoxeterData cox_;
  std::vector<Indecomposable> modules_;
  RepetitionWindow window_;
  Nakajima<K> nk_;
  KanContext<K> kan_;
  std::vector<HqObject> objects_;
  std::vector<int> simple_index_;
};

}  // namespace qgd
