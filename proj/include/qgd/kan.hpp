#pragma once

// Restriction from R_C to S_C and its two adjoints, computed pointwise:
//   (K_R M)(x) = Hom_S(res x^, M),   (K_L M)(x) = D Hom_S(M, res x^v).
// At frozen objects both are re-based through Yoneda so that they coincide
// with M on the nose; the canonical map is then pinned to the identity there.

#include "qgd/module.hpp"

#include <optional>

namespace qgd {

template <class K>
struct KanResult {
  Module<K> left;
  Module<K> right;
  ModuleMap<K> canonical;  // left -> right
  Module<K> intermediate;  // image of the canonical map, a submodule of right
};

template <class K>
class KanContext {
 public:
  explicit KanContext(const Nakajima<K>& nk)
      : core_(nk.core),
        r_(std::make_shared<const LinCategory<K>>(nk.R)),
        s_(std::make_shared<const LinCategory<K>>(nk.S)) {
    s_of_r_.assign(r_->size(), -1);
    for (int f = 0; f < s_->size(); ++f) {
      int x = r_->index(s_->vertex(f));
      r_of_s_.push_back(x);
      s_of_r_[x] = f;
    }
  }

  const LinCategory<K>& R() const { return *r_; }
  const LinCategory<K>& S() const { return *s_; }
  std::shared_ptr<const LinCategory<K>> R_ptr() const { return r_; }
  std::shared_ptr<const LinCategory<K>> S_ptr() const { return s_; }
  int r_of_s(int f) const { return r_of_s_[f]; }
  int s_of_r(int x) const { return s_of_r_[x]; }

  Module<K> res(const Module<K>& l) const {
    std::vector<int> dims(s_->size());
    for (int f = 0; f < s_->size(); ++f) dims[f] = l.dim(r_of_s_[f]);
    Evaluator<K> ev(l);
    std::vector<Matrix<K>> action;
    for (const auto& g : s_->generators())
      action.push_back(ev.element(r_of_s_[g.source], r_of_s_[g.target], g.element));
    return Module<K>(s_, dims, action, false);
  }

  /// res x^ as an S-module, restricted to objects within reach. With a
  /// mask only the masked objects are filled in; the result is then only
  /// good for computing Hom into modules supported inside the mask.
  Module<K> restricted_projective(int x, const std::vector<char>* mask = nullptr) const {
    std::vector<int> dims(s_->size(), 0);
    for (int f = 0; f < s_->size(); ++f) {
      int rf = r_of_s_[f];
      if (mask && !(*mask)[f]) continue;
      if (rf <= x && r_->within_reach(rf, x)) dims[f] = r_->hom_dim(rf, x);
    }
    std::vector<Matrix<K>> action;
    for (const auto& g : s_->generators()) {
      if (dims[g.source] == 0 || dims[g.target] == 0) {
        action.push_back(Matrix<K>(dims[g.source], dims[g.target]));
        continue;
      }
      action.push_back(r_->left_multiplication(r_of_s_[g.source], r_of_s_[g.target], x, g.element));
    }
    return Module<K>(s_, dims, action, false);
  }

  /// res x^v as an S-module, restricted to objects within reach (and to
  /// the mask, if given).
  Module<K> restricted_injective(int x, const std::vector<char>* mask = nullptr) const {
    std::vector<int> dims(s_->size(), 0);
    for (int f = 0; f < s_->size(); ++f) {
      int rf = r_of_s_[f];
      if (mask && !(*mask)[f]) continue;
      if (rf >= x && r_->within_reach(x, rf)) dims[f] = r_->hom_dim(x, rf);
    }
    std::vector<Matrix<K>> action;
    for (const auto& g : s_->generators()) {
      if (dims[g.source] == 0 || dims[g.target] == 0) {
        action.push_back(Matrix<K>(dims[g.source], dims[g.target]));
        continue;
      }
      action.push_back(r_->right_multiplication(x, r_of_s_[g.source], r_of_s_[g.target], g.element).transpose());
    }
    return Module<K>(s_, dims, action, false);
  }

  Module<K> kan_right(const Module<K>& m) const {
    const int n = r_->size();
    std::vector<std::vector<ModuleMap<K>>> basis(n);
    std::vector<Module<K>> reps(n);
    std::vector<int> dims(n, 0);
    const auto mask = neighbourhood(m, true);
    for (int x = 0; x < n; ++x) {
      if (!touches(m, x, true)) continue;
      reps[x] = restricted_projective(x, &mask);
      basis[x] = hom_space(reps[x], m);
      dims[x] = static_cast<int>(basis[x].size());
    }
    // Yoneda re-basing at frozen objects: phi |-> phi_f(id_f).
    std::vector<Matrix<K>> change(n);
    for (int x = 0; x < n; ++x) {
      change[x] = Matrix<K>::identity(dims[x]);
      int f = s_of_r_[x];
      if (f < 0 || dims[x] == 0) continue;
      Matrix<K> e(m.dim(f), dims[x]);
      for (int j = 0; j < dims[x]; ++j) e.set_column(j, basis[x][j].component[f].column(0));
      change[x] = e;
    }
    std::vector<Matrix<K>> action;
    for (const auto& g : r_->generators()) {
      const int x = g.source, y = g.target;
      Matrix<K> a(dims[x], dims[y]);
      if (dims[x] > 0 && dims[y] > 0) {
        Matrix<K> target = flatten(basis[x]);
        Matrix<K> imgs(target.rows(), dims[y]);
        for (int j = 0; j < dims[y]; ++j) {
          // (phi o a_*)_f = phi_f . (right composition with a on Hom(f, x))
          std::vector<K> col;
          for (int f = 0; f < s_->size(); ++f) {
            const int rows = m.dim(f), cols = reps[x].dim(f);
            if (rows == 0 || cols == 0) continue;
            Matrix<K> c = basis[y][j].component[f] * r_->generator_action(r_of_s_[f], index_of(g));
            for (int r = 0; r < rows; ++r)
              for (int k = 0; k < cols; ++k) col.push_back(c(r, k));
          }
          for (int r = 0; r < target.rows(); ++r) imgs(r, j) = col[r];
        }
        auto sol = solve(target, imgs);
        if (!sol) throw std::logic_error("kan_right: induced map leaves the hom space");
        a = *sol;
      }
      action.push_back(change[x] * a * inverse_or_throw(change[y]));
    }
    return Module<K>(r_, dims, action, false);
  }

  Module<K> kan_left(const Module<K>& m) const {
    const int n = r_->size();
    std::vector<std::vector<ModuleMap<K>>> basis(n);
    std::vector<Module<K>> reps(n);
    std::vector<int> dims(n, 0);
    const auto mask = neighbourhood(m, false);
    for (int x = 0; x < n; ++x) {
      if (!touches(m, x, false)) continue;
      reps[x] = restricted_injective(x, &mask);
      basis[x] = hom_space(m, reps[x]);
      dims[x] = static_cast<int>(basis[x].size());
    }
    std::vector<Matrix<K>> change(n);
    for (int x = 0; x < n; ++x) {
      change[x] = Matrix<K>::identity(dims[x]);
      int f = s_of_r_[x];
      if (f < 0 || dims[x] == 0) continue;
      // psi |-> (m |-> psi_f(m)(id_f)); K_L M(x) is the dual space.
      Matrix<K> e(m.dim(f), dims[x]);
      for (int j = 0; j < dims[x]; ++j) e.set_column(j, basis[x][j].component[f].transpose().column(0));
      change[x] = inverse_or_throw(e.transpose());
    }
    std::vector<Matrix<K>> action;
    for (const auto& g : r_->generators()) {
      const int x = g.source, y = g.target;
      Matrix<K> a(dims[x], dims[y]);
      if (dims[x] > 0 && dims[y] > 0) {
        Matrix<K> target = flatten(basis[y]);
        Matrix<K> imgs(target.rows(), dims[x]);
        for (int j = 0; j < dims[x]; ++j) {
          std::vector<K> col;
          for (int f = 0; f < s_->size(); ++f) {
            const int rows = reps[y].dim(f), cols = m.dim(f);
            if (rows == 0 || cols == 0) continue;
            Matrix<K> c(rows, cols);
            if (reps[x].dim(f) > 0) {
              // a^v_f: D Hom(x, f) -> D Hom(y, f), dual of v |-> a v
              Matrix<K> av = r_->left_multiplication(x, y, r_of_s_[f], g.element).transpose();
              c = av * basis[x][j].component[f];
            }
            for (int r = 0; r < rows; ++r)
              for (int k = 0; k < cols; ++k) col.push_back(c(r, k));
          }
          for (int r = 0; r < target.rows(); ++r) imgs(r, j) = col[r];
        }
        auto sol = solve(target, imgs);
        if (!sol) throw std::logic_error("kan_left: induced map leaves the hom space");
        a = sol->transpose();
      }
      action.push_back(change[x] * a * inverse_or_throw(change[y]));
    }
    return Module<K>(r_, dims, action, false);
  }

  /// The unique map K_L M -> K_R M that is the identity at frozen objects.
  ModuleMap<K> canonical_map(const Module<K>& left, const Module<K>& right) const {
    std::map<int, Matrix<K>> pinned;
    for (int f = 0; f < s_->size(); ++f) pinned[r_of_s_[f]] = Matrix<K>::identity(left.dim(r_of_s_[f]));
    auto can = solve_map(left, right, pinned);
    if (!can) throw std::runtime_error("canonical map does not exist: window or configuration violation");
    return *can;
  }

  KanResult<K> extend(const Module<K>& m) const {
    KanResult<K> out{kan_left(m), kan_right(m), {}, {}};
    out.canonical = canonical_map(out.left, out.right);
    out.intermediate = image_module(out.canonical, out.right);
    return out;
  }

  Module<K> intermediate_extension(const Module<K>& m) const { return extend(m).intermediate; }

  /// Unit L -> K_R res L and counit K_L res L -> L.
  ModuleMap<K> unit(const Module<K>& l, const Module<K>& kr) const { return pinned_identity(l, kr); }
  ModuleMap<K> counit(const Module<K>& kl, const Module<K>& l) const { return pinned_identity(kl, l); }

  /// No nonzero vector at a non-frozen object is killed by every arrow into it.
  bool is_stable(const Module<K>& l) const {
    for (int y = 0; y < r_->size(); ++y) {
      if (r_->frozen(y) || l.dim(y) == 0) continue;
      Matrix<K> stacked(0, l.dim(y));
      for (int g : r_->generators_into(y)) stacked = vstack(stacked, l.action(g));
      if (rank(stacked) < l.dim(y)) return false;
    }
    return true;
  }

  /// L(y) is the sum of the images of the arrows out of y at non-frozen y.
  bool is_costable(const Module<K>& l) const {
    for (int y = 0; y < r_->size(); ++y) {
      if (r_->frozen(y) || l.dim(y) == 0) continue;
      if (rank(radical_at(l, y)) < l.dim(y)) return false;
    }
    return true;
  }

  bool is_bistable(const Module<K>& l) const { return is_stable(l) && is_costable(l); }

  /// Whether L is nonzero at the lowest or highest level of the window.
  bool touches_boundary(const Module<K>& l) const {
    const auto& w = core_->window();
    for (int x = 0; x < r_->size(); ++x) {
      int p = r_->vertex(x).level;
      if (l.dim(x) > 0 && (p == w.pmin() || p == w.pmax())) return true;
    }
    return false;
  }

 private:
  int index_of(const Generator<K>& g) const { return static_cast<int>(&g - &r_->generators()[0]); }

  static Matrix<K> inverse_or_throw(const Matrix<K>& m) {
    if (m.rows() == 0) return m;
    auto inv = inverse(m);
    if (!inv) throw std::logic_error("Yoneda evaluation is not invertible");
    return *inv;
  }

  static Matrix<K> flatten(const std::vector<ModuleMap<K>>& basis) {
    std::vector<std::vector<K>> cols;
    for (const auto& b : basis) {
      std::vector<K> col;
      for (const auto& c : b.component)
        for (int r = 0; r < c.rows(); ++r)
          for (int k = 0; k < c.cols(); ++k) col.push_back(c(r, k));
      cols.push_back(std::move(col));
    }
    const int rows = cols.empty() ? 0 : static_cast<int>(cols[0].size());
    Matrix<K> out(rows, static_cast<int>(cols.size()));
    for (size_t j = 0; j < cols.size(); ++j) out.set_column(static_cast<int>(j), cols[j]);
    return out;
  }

  /// Support of M together with the objects one generator away on the side
  /// that enters the intertwining equations for Hom(P, M) (right) or
  /// Hom(M, I) (left).
  std::vector<char> neighbourhood(const Module<K>& m, bool right) const {
    std::vector<char> mask(s_->size(), 0);
    for (int f = 0; f < s_->size(); ++f)
      if (m.dim(f) > 0) mask[f] = 1;
    for (const auto& g : s_->generators()) {
      if (right && m.dim(g.source) > 0) mask[g.target] = 1;
      if (!right && m.dim(g.target) > 0) mask[g.source] = 1;
    }
    return mask;
  }

  /// Whether some object f in the support of M has Hom(f, x) != 0 (right)
  /// or Hom(x, f) != 0 (left).
  bool touches(const Module<K>& m, int x, bool right) const {
    for (int f = 0; f < s_->size(); ++f) {
      if (m.dim(f) == 0) continue;
      int rf = r_of_s_[f];
      if (right) {
        if (rf <= x && r_->within_reach(rf, x) && r_->hom_dim(rf, x) > 0) return true;
      } else {
        if (rf >= x && r_->within_reach(x, rf) && r_->hom_dim(x, rf) > 0) return true;
      }
    }
    return false;
  }

  ModuleMap<K> pinned_identity(const Module<K>& a, const Module<K>& b) const {
    std::map<int, Matrix<K>> pinned;
    for (int f = 0; f < s_->size(); ++f) pinned[r_of_s_[f]] = Matrix<K>::identity(a.dim(r_of_s_[f]));
    auto map = solve_map(a, b, pinned);
    if (!map) throw std::runtime_error("adjunction morphism does not exist");
    return *map;
  }

  std::shared_ptr<const MeshCore<K>> core_;
  std::shared_ptr<const LinCategory<K>> r_, s_;
  std::vector<int> r_of_s_, s_of_r_;
};

}  // namespace qgd
