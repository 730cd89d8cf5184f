#pragma once

// Nakajima categories. MeshCore computes the covariant representables
// Hom(x, ?) of the mesh category on a window (mesh relations imposed only at
// non-frozen vertices, frozen vertices outside the configuration deleted).
// LinCategory is a full subcategory of a MeshCore with a chosen set of
// generating morphisms: the window arrows for R_C, the irreducible
// morphisms between kept frozen vertices for S_C.

#include "qgd/linalg.hpp"
#include "qgd/quiver.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

namespace qgd {

template <class K>
class MeshCore {
 public:
  struct CoreArrow {
    int source = 0;  // core object indices
    int target = 0;
    int window_arrow = 0;
  };

  /// Hom(x, ?) as a covariant representation of the core quiver.
  struct Representable {
    std::vector<int> dim;                                  // per core object
    std::vector<Matrix<K>> arrow_map;                      // per core arrow
    std::vector<std::vector<std::pair<int, int>>> origin;  // per object, per basis: (arrow, predecessor basis)
  };

  /// `reach` bounds how many levels above x the representable Hom(x, ?) is
  /// computed; hom spaces in full configurations grow exponentially with the
  /// level gap. A negative reach means the whole window.
  MeshCore(RepetitionWindow window, Configuration config, int reach = -1)
      : window_(std::move(window)), config_(std::move(config)),
        reach_(reach < 0 ? window_.pmax() - window_.pmin() : reach) {
    const int n = window_.size();
    core_of_.assign(n, -1);
    for (int i = 0; i < n; ++i) {
      bool alive = !window_.frozen(i) || config_.keeps_frozen(window_, window_.vertex(i));
      if (alive) {
        core_of_[i] = static_cast<int>(objects_.size());
        objects_.push_back(i);
      }
    }
    in_.assign(objects_.size(), {});
    out_.assign(objects_.size(), {});
    const auto& wa = window_.arrows();
    arrow_of_window_.assign(wa.size(), -1);
    for (int a = 0; a < static_cast<int>(wa.size()); ++a) {
      int s = core_of_[wa[a].source], t = core_of_[wa[a].target];
      if (s < 0 || t < 0) continue;
      arrow_of_window_[a] = static_cast<int>(arrows_.size());
      in_[t].push_back(static_cast<int>(arrows_.size()));
      out_[s].push_back(static_cast<int>(arrows_.size()));
      arrows_.push_back({s, t, a});
    }
    reps_.resize(objects_.size());
  }

  const RepetitionWindow& window() const { return window_; }
  const Configuration& configuration() const { return config_; }
  int size() const { return static_cast<int>(objects_.size()); }
  const ZVertex& vertex(int x) const { return window_.vertex(objects_[x]); }
  bool frozen(int x) const { return window_.frozen(objects_[x]); }
  /// Core index of a window vertex, -1 when deleted or outside the window.
  int index(const ZVertex& v) const {
    int w = window_.index(v);
    return w < 0 ? -1 : core_of_[w];
  }
  const std::vector<CoreArrow>& arrows() const { return arrows_; }
  const std::vector<int>& in_arrows(int x) const { return in_[x]; }
  const std::vector<int>& out_arrows(int x) const { return out_[x]; }
  int reach() const { return reach_; }
  bool within_reach(int x, int y) const { return vertex(y).level <= vertex(x).level + reach_; }

  const Representable& representable(int x) const {
    std::lock_guard<std::mutex> lock(rep_mutex_);
    if (!reps_[x]) reps_[x] = std::make_unique<Representable>(build_representable(x));
    return *reps_[x];
  }

  int hom_dim(int x, int y) const {
    if (y < x) return 0;
    if (!within_reach(x, y))
      throw std::out_of_range("hom space " + format_vertex(window_.quiver(), vertex(x)) + " -> " +
                              format_vertex(window_.quiver(), vertex(y)) + " lies beyond the computed reach");
    return representable(x).dim[y];
  }

  /// Matrix of right composition with the j-th basis element of Hom(y, z):
  /// Hom(x, y) -> Hom(x, z).
  const Matrix<K>& path_action(int x, int y, int z, int j) const {
    return table(x, y)[z][j];
  }

 private:
  using Table = std::vector<std::vector<Matrix<K>>>;

  Representable build_representable(int x) const {
    const int n = size();
    Representable r;
    r.dim.assign(n, 0);
    r.arrow_map.assign(arrows_.size(), Matrix<K>());
    r.origin.assign(n, {});
    r.dim[x] = 1;
    r.origin[x] = {{-1, -1}};
    for (int y = x + 1; y < n && within_reach(x, y); ++y) {
      // direct sum of V(source) over arrows into y
      std::vector<int> offset;
      int total = 0;
      for (int a : in_[y]) {
        offset.push_back(total);
        total += r.dim[arrows_[a].source];
      }
      if (total == 0) {
        for (int a : in_[y]) r.arrow_map[a] = Matrix<K>(0, r.dim[arrows_[a].source]);
        continue;
      }
      Matrix<K> rel(total, 0);
      if (!frozen(y)) {
        int ty = index(RepetitionWindow::tau(vertex(y)));
        if (ty >= 0 && r.dim[ty] > 0 && window_.index(RepetitionWindow::tau(vertex(y))) >= 0) {
          rel = Matrix<K>(total, r.dim[ty]);
          for (const auto& term : window_.mesh(objects_[y])) {
            int first = arrow_of_window_[term.first];
            int second = arrow_of_window_[term.second];
            if (first < 0 || second < 0) continue;  // passes through a deleted vertex
            int k = static_cast<int>(std::find(in_[y].begin(), in_[y].end(), second) - in_[y].begin());
            rel.set_block(offset[k], 0, r.arrow_map[first]);
          }
        }
      }
      Quotient<K> q = quotient(rel, total);
      r.dim[y] = q.dim();
      for (int c : q.kept) {
        int k = static_cast<int>(std::upper_bound(offset.begin(), offset.end(), c) - offset.begin()) - 1;
        r.origin[y].push_back({in_[y][k], c - offset[k]});
      }
      for (size_t k = 0; k < in_[y].size(); ++k) {
        int a = in_[y][k];
        int d = r.dim[arrows_[a].source];
        r.arrow_map[a] = q.projection.block(0, offset[k], q.dim(), d);
      }
    }
    for (int a = 0; a < static_cast<int>(arrows_.size()); ++a)
      if (r.arrow_map[a].rows() != r.dim[arrows_[a].target] || r.arrow_map[a].cols() != r.dim[arrows_[a].source])
        r.arrow_map[a] = Matrix<K>(r.dim[arrows_[a].target], r.dim[arrows_[a].source]);
    return r;
  }

  const Table& table(int x, int y) const {
    {
      std::lock_guard<std::mutex> lock(mutex_);
      auto it = tables_.find({x, y});
      if (it != tables_.end()) return *it->second;
    }
    auto t = std::make_shared<Table>(size());
    const Representable& vx = representable(x);
    const Representable& vy = representable(y);
    for (int z = y; z < size() && within_reach(x, z); ++z) {
      for (int j = 0; j < vy.dim[z]; ++j) {
        if (z == y) {
          (*t)[z].push_back(Matrix<K>::identity(vx.dim[y]));
          continue;
        }
        auto [a, i] = vy.origin[z][j];
        (*t)[z].push_back(vx.arrow_map[a] * (*t)[arrows_[a].source][i]);
      }
    }
    std::lock_guard<std::mutex> lock(mutex_);
    auto [it, inserted] = tables_.emplace(std::make_pair(x, y), t);
    return *it->second;
  }

  RepetitionWindow window_;
  Configuration config_;
  std::vector<int> objects_;  // window indices
  std::vector<int> core_of_;
  std::vector<CoreArrow> arrows_;
  std::vector<int> arrow_of_window_;
  std::vector<std::vector<int>> in_, out_;
  int reach_ = 0;
  mutable std::vector<std::unique_ptr<Representable>> reps_;
  mutable std::mutex rep_mutex_;
  mutable std::mutex mutex_;
  mutable std::map<std::pair<int, int>, std::shared_ptr<Table>> tables_;
};

/// One summand of the expansion of a hom basis element b in Hom(x, y):
/// coeff * (pred-th basis element of Hom(x, source)) followed by generator.
struct ExpansionTerm {
  int generator = 0;
  int pred = 0;
  bool identity_pred = false;  // pred is id_x, i.e. the generator starts at x
};

template <class K>
struct Generator {
  int source = 0;  // local object indices
  int target = 0;
  std::vector<K> element;  // coordinates in Hom(source, target)
  std::string name;
};

template <class K>
class LinCategory {
 public:
  enum class Kind { Mesh, Frozen };

  LinCategory() = default;

  int size() const { return static_cast<int>(objects_.size()); }
  Kind kind() const { return kind_; }
  const MeshCore<K>& core() const { return *core_; }
  std::shared_ptr<const MeshCore<K>> core_ptr() const { return core_; }
  int core_index(int x) const { return objects_[x]; }
  const ZVertex& vertex(int x) const { return core_->vertex(objects_[x]); }
  bool frozen(int x) const { return core_->frozen(objects_[x]); }
  std::string label(int x) const { return format_vertex(core_->window().quiver(), vertex(x)); }
  /// Local index of a vertex, -1 when not an object.
  int index(const ZVertex& v) const {
    int c = core_->index(v);
    if (c < 0) return -1;
    auto it = local_.find(c);
    return it == local_.end() ? -1 : it->second;
  }
  int hom_dim(int x, int y) const { return core_->hom_dim(objects_[x], objects_[y]); }
  bool within_reach(int x, int y) const { return core_->within_reach(objects_[x], objects_[y]); }

  const std::vector<Generator<K>>& generators() const { return gens_; }
  const Generator<K>& generator(int g) const { return gens_[g]; }
  const std::vector<int>& generators_into(int y) const { return gens_in_[y]; }
  const std::vector<int>& generators_out_of(int x) const { return gens_out_[x]; }

  /// Expansion of the j-th basis element of Hom(x, y), x != y.
  std::vector<std::pair<ExpansionTerm, K>> expansion(int x, int y, int j) const {
    if (kind_ == Kind::Mesh) {
      auto [a, i] = core_->representable(objects_[x]).origin[objects_[y]][j];
      int src = core_->arrows()[a].source;
      return {{ExpansionTerm{a, i, src == objects_[x]}, K{1}}};
    }
    {
      std::lock_guard<std::mutex> lock(*mutex_);
      auto it = expansions_->find({x, y});
      if (it != expansions_->end()) return it->second[j];
    }
    auto ex = frozen_expansion(x, y);
    std::lock_guard<std::mutex> lock(*mutex_);
    auto [it, inserted] = expansions_->emplace(std::make_pair(x, y), std::move(ex));
    return it->second[j];
  }

  /// Right composition with the j-th basis element of Hom(y, z).
  const Matrix<K>& path_action(int x, int y, int z, int j) const {
    return core_->path_action(objects_[x], objects_[y], objects_[z], j);
  }

  /// Hom(x, y) -> Hom(x, z), u |-> u v for fixed v in Hom(y, z).
  Matrix<K> right_multiplication(int x, int y, int z, const std::vector<K>& v) const {
    Matrix<K> out(hom_dim(x, z), hom_dim(x, y));
    for (int j = 0; j < static_cast<int>(v.size()); ++j)
      if (!is_zero(v[j])) out = out + v[j] * path_action(x, y, z, j);
    return out;
  }

  /// Hom(y, z) -> Hom(x, z), v |-> u v for fixed u in Hom(x, y).
  Matrix<K> left_multiplication(int x, int y, int z, const std::vector<K>& u) const {
    const int dz = hom_dim(y, z);
    Matrix<K> out(hom_dim(x, z), dz);
    for (int j = 0; j < dz; ++j) out.set_column(j, path_action(x, y, z, j).apply(u));
    return out;
  }

  std::vector<K> compose(int x, int y, int z, const std::vector<K>& u, const std::vector<K>& v) const {
    return right_multiplication(x, y, z, v).apply(u);
  }

  /// Hom(x, source g) -> Hom(x, target g), right composition with generator g.
  Matrix<K> generator_action(int x, int g) const {
    const auto& gen = gens_[g];
    if (kind_ == Kind::Mesh) return core_->representable(objects_[x]).arrow_map[core_arrow_[g]];
    return right_multiplication(x, gen.source, gen.target, gen.element);
  }

  /// R_C: all objects of the core, generated by the arrows.
  static LinCategory mesh(std::shared_ptr<const MeshCore<K>> core) {
    LinCategory c;
    c.kind_ = Kind::Mesh;
    c.core_ = std::move(core);
    for (int x = 0; x < c.core_->size(); ++x) c.objects_.push_back(x);
    c.init_objects();
    const auto& q = c.core_->window().quiver();
    for (int a = 0; a < static_cast<int>(c.core_->arrows().size()); ++a) {
      const auto& ar = c.core_->arrows()[a];
      const auto& wa = c.core_->window().arrows()[ar.window_arrow];
      Generator<K> g;
      g.source = ar.source;
      g.target = ar.target;
      g.element = c.core_->representable(ar.source).arrow_map[a].column(0);
      g.name = (wa.sigma ? "s" : "") + q.arrow(wa.quiver_arrow).name + "@" + std::to_string(wa.level);
      c.core_arrow_.push_back(a);
      c.add_generator(std::move(g));
    }
    return c;
  }

  /// S_C: the kept frozen objects, generated by irreducible morphisms.
  static LinCategory frozen_part(std::shared_ptr<const MeshCore<K>> core) {
    LinCategory c;
    c.kind_ = Kind::Frozen;
    c.core_ = std::move(core);
    for (int x = 0; x < c.core_->size(); ++x)
      if (c.core_->frozen(x)) c.objects_.push_back(x);
    c.init_objects();
    const int n = c.size();
    // For each target g, sources in reverse order so that generators out of
    // later objects are known when f is processed.
    std::vector<std::vector<Generator<K>>> found(n);
    for (int g = 0; g < n; ++g) {
      std::vector<Generator<K>> into;
      for (int f = g - 1; f >= 0; --f) {
        if (!c.core_->within_reach(c.objects_[f], c.objects_[g])) break;
        const int d = c.hom_dim(f, g);
        if (d == 0) continue;
        Matrix<K> span(d, 0);
        for (const auto& e : into) {
          if (!c.core_->within_reach(c.objects_[f], c.objects_[e.source])) continue;
          const int dh = c.hom_dim(f, e.source);
          if (dh == 0) continue;
          span = hstack(span, c.right_multiplication(f, e.source, g, e.element));
        }
        Quotient<K> q = quotient(span, d);
        int k = 0;
        for (int col : q.kept) {
          Generator<K> gen;
          gen.source = f;
          gen.target = g;
          gen.element.assign(d, K{});
          gen.element[col] = K{1};
          gen.name = c.label(f) + "->" + c.label(g) + (q.dim() > 1 ? "#" + std::to_string(k) : "");
          ++k;
          into.push_back(std::move(gen));
        }
      }
      // deterministic order: by source, then by construction order
      std::stable_sort(into.begin(), into.end(),
                       [](const Generator<K>& a, const Generator<K>& b) { return a.source < b.source; });
      found[g] = std::move(into);
    }
    for (int g = 0; g < n; ++g)
      for (auto& gen : found[g]) c.add_generator(std::move(gen));
    return c;
  }

 private:
  std::vector<std::vector<std::pair<ExpansionTerm, K>>> frozen_expansion(int x, int y) const {
    const int d = hom_dim(x, y);
    std::vector<std::pair<ExpansionTerm, K>> terms;
    Matrix<K> span(d, 0);
    for (int gi : gens_in_[y]) {
      const auto& e = gens_[gi];
      if (e.source == x) {
        Matrix<K> col(d, 1);
        col.set_column(0, e.element);
        span = hstack(span, col);
        terms.push_back({ExpansionTerm{gi, 0, true}, K{1}});
        continue;
      }
      if (e.source < x) continue;
      const int dh = hom_dim(x, e.source);
      if (dh == 0) continue;
      span = hstack(span, right_multiplication(x, e.source, y, e.element));
      for (int i = 0; i < dh; ++i) terms.push_back({ExpansionTerm{gi, i, false}, K{1}});
    }
    auto sol = solve(span, Matrix<K>::identity(d));
    if (!sol) throw std::logic_error("frozen subcategory: generators do not span a hom space");
    std::vector<std::vector<std::pair<ExpansionTerm, K>>> ex(d);
    for (int j = 0; j < d; ++j)
      for (int t = 0; t < static_cast<int>(terms.size()); ++t)
        if (!is_zero((*sol)(t, j))) ex[j].push_back({terms[t].first, (*sol)(t, j)});
    return ex;
  }

  void init_objects() {
    for (int i = 0; i < size(); ++i) local_[objects_[i]] = i;
    gens_in_.assign(size(), {});
    gens_out_.assign(size(), {});
  }

  void add_generator(Generator<K> g) {
    int id = static_cast<int>(gens_.size());
    gens_in_[g.target].push_back(id);
    gens_out_[g.source].push_back(id);
    gens_.push_back(std::move(g));
  }

  Kind kind_ = Kind::Mesh;
  std::shared_ptr<const MeshCore<K>> core_;
  std::vector<int> objects_;  // core indices
  std::map<int, int> local_;
  std::vector<Generator<K>> gens_;
  std::vector<int> core_arrow_;  // Mesh kind: generator -> core arrow
  std::vector<std::vector<int>> gens_in_, gens_out_;
  using ExpansionTable = std::map<std::pair<int, int>, std::vector<std::vector<std::pair<ExpansionTerm, K>>>>;
  std::shared_ptr<ExpansionTable> expansions_ = std::make_shared<ExpansionTable>();
  std::shared_ptr<std::mutex> mutex_ = std::make_shared<std::mutex>();
};

template <class K>
struct Nakajima {
  std::shared_ptr<const MeshCore<K>> core;
  LinCategory<K> R;
  LinCategory<K> S;
};

template <class K>
Nakajima<K> build_nakajima(const RepetitionWindow& window, const Configuration& config, int reach = -1) {
  if (!window.quiver().is_framed()) throw std::invalid_argument("Nakajima categories need a framed quiver");
  Nakajima<K> n;
  n.core = std::make_shared<const MeshCore<K>>(window, config, reach);
  n.R = LinCategory<K>::mesh(n.core);
  n.S = LinCategory<K>::frozen_part(n.core);
  return n;
}

struct AssumptionFailure {
  ZVertex vertex;
  int sequence = 0;  // 1: R(?,x) -> sum R(?,y); 2: R(x,?) -> sum R(y,?)
  ZVertex witness;   // object at which injectivity fails
};

/// Checks left exactness of the two sequences at every non-frozen x with
/// tau(x) and tau^{-1}(x) inside the window.
template <class K>
std::vector<AssumptionFailure> validate_assumption(const LinCategory<K>& R) {
  std::vector<AssumptionFailure> failures;
  const auto& w = R.core().window();
  for (int x = 0; x < R.size(); ++x) {
    if (R.frozen(x)) continue;
    const ZVertex v = R.vertex(x);
    if (!w.contains(RepetitionWindow::tau(v)) || !w.contains(RepetitionWindow::tau_inverse(v))) continue;
    bool bad1 = false, bad2 = false;
    for (int z = 0; z < R.size() && !(bad1 && bad2); ++z) {
      if (!R.within_reach(z, x) || !R.within_reach(x, z)) continue;
      if (!bad1) {
        const int d = R.hom_dim(z, x);
        if (d > 0) {
          Matrix<K> m(0, d);
          for (int g : R.generators_out_of(x)) m = vstack(m, R.generator_action(z, g));
          if (rank(m) < d) {
            bad1 = true;
            failures.push_back({v, 1, R.vertex(z)});
          }
        }
      }
      bool reachable = true;
      for (int g : R.generators_into(x)) reachable = reachable && R.within_reach(R.generator(g).source, z);
      if (!bad2 && reachable) {
        const int d = R.hom_dim(x, z);
        if (d > 0) {
          Matrix<K> m(0, d);
          for (int g : R.generators_into(x)) {
            const auto& gen = R.generator(g);
            m = vstack(m, R.left_multiplication(gen.source, x, z, gen.element));
          }
          if (rank(m) < d) {
            bad2 = true;
            failures.push_back({v, 2, R.vertex(z)});
          }
        }
      }
    }
  }
  return failures;
}

}  // namespace qgd
