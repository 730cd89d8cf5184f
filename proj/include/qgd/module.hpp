#pragma once

// Finite-dimensional modules over a LinCategory. A module is a contravariant
// functor: for a generator g: x -> y it stores M(g): M(y) -> M(x), and a
// path a1 ... ak acts by M(a1) ... M(ak).

#include "qgd/category.hpp"

#include <map>
#include <memory>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace qgd {

template <class K>
class Module {
 public:
  using Cat = LinCategory<K>;

  Module() = default;

  /// Zero module.
  explicit Module(std::shared_ptr<const Cat> cat)
      : cat_(std::move(cat)), dims_(cat_->size(), 0), action_(cat_->generators().size()) {
    fix_shapes();
  }

  /// Validates functoriality unless `validate` is false.
  Module(std::shared_ptr<const Cat> cat, std::vector<int> dims, std::vector<Matrix<K>> action,
         bool validate = true)
      : cat_(std::move(cat)), dims_(std::move(dims)), action_(std::move(action)) {
    if (static_cast<int>(dims_.size()) != cat_->size())
      throw std::invalid_argument("module: dimension vector has the wrong length");
    if (action_.size() != cat_->generators().size())
      throw std::invalid_argument("module: one matrix per generator expected");
    for (size_t g = 0; g < action_.size(); ++g) {
      const auto& gen = cat_->generator(static_cast<int>(g));
      auto& m = action_[g];
      if (m.rows() == 0 && m.cols() == 0) m = Matrix<K>(dims_[gen.source], dims_[gen.target]);
      if (m.rows() != dims_[gen.source] || m.cols() != dims_[gen.target])
        throw std::invalid_argument("module: matrix for generator " + gen.name + " has the wrong shape");
    }
    if (validate) check_relations();
  }

  const Cat& category() const { return *cat_; }
  std::shared_ptr<const Cat> category_ptr() const { return cat_; }
  int dim(int x) const { return dims_[x]; }
  const std::vector<int>& dims() const { return dims_; }
  int total_dim() const {
    int t = 0;
    for (int d : dims_) t += d;
    return t;
  }
  bool is_zero() const { return total_dim() == 0; }
  std::vector<int> support() const {
    std::vector<int> s;
    for (int x = 0; x < static_cast<int>(dims_.size()); ++x)
      if (dims_[x] > 0) s.push_back(x);
    return s;
  }
  const Matrix<K>& action(int g) const { return action_[g]; }
  const std::vector<Matrix<K>>& actions() const { return action_; }

  /// Checks M(u g) = M(u) M(g) for every hom basis element u ending at the
  /// source of a generator g; throws std::invalid_argument on failure.
  void check_relations() const;

  friend bool operator==(const Module& a, const Module& b) {
    return a.cat_ == b.cat_ && a.dims_ == b.dims_ && a.action_ == b.action_;
  }

 private:
  void fix_shapes() {
    for (size_t g = 0; g < action_.size(); ++g) {
      const auto& gen = cat_->generator(static_cast<int>(g));
      action_[g] = Matrix<K>(dims_[gen.source], dims_[gen.target]);
    }
  }

  std::shared_ptr<const Cat> cat_;
  std::vector<int> dims_;
  std::vector<Matrix<K>> action_;
};

/// Memoized evaluation of a module on hom basis elements:
/// M(b): M(y) -> M(x) for b in Hom(x, y).
template <class K>
class Evaluator {
 public:
  explicit Evaluator(const Module<K>& m) : m_(m) {}

  const Matrix<K>& basis(int x, int y, int j) {
    auto key = std::make_tuple(x, y, j);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    Matrix<K> out(m_.dim(x), m_.dim(y));
    if (m_.dim(x) > 0 && m_.dim(y) > 0) {
      if (x == y) {
        out = Matrix<K>::identity(m_.dim(x));
      } else {
        const auto& cat = m_.category();
        for (const auto& [term, coeff] : cat.expansion(x, y, j)) {
          const auto& g = cat.generator(term.generator);
          if (term.identity_pred) {
            out = out + coeff * m_.action(term.generator);
          } else if (m_.dim(g.source) > 0) {
            Matrix<K> pred = basis(x, g.source, term.pred);
            out = out + coeff * (pred * m_.action(term.generator));
          }
        }
      }
    }
    return cache_.emplace(key, std::move(out)).first->second;
  }

  Matrix<K> element(int x, int y, const std::vector<K>& u) {
    Matrix<K> out(m_.dim(x), m_.dim(y));
    for (int j = 0; j < static_cast<int>(u.size()); ++j)
      if (!is_zero(u[j])) out = out + u[j] * basis(x, y, j);
    return out;
  }

 private:
  const Module<K>& m_;
  std::map<std::tuple<int, int, int>, Matrix<K>> cache_;
};

template <class K>
void Module<K>::check_relations() const {
  const Cat& cat = *cat_;
  Evaluator<K> ev(*this);
  for (int x = 0; x < cat.size(); ++x) {
    if (dims_[x] == 0) continue;
    for (int g = 0; g < static_cast<int>(cat.generators().size()); ++g) {
      const auto& gen = cat.generator(g);
      if (dims_[gen.target] == 0 || gen.source < x) continue;
      if (!cat.within_reach(x, gen.target)) continue;
      const int du = cat.hom_dim(x, gen.source);
      if (du == 0) continue;
      Matrix<K> right = cat.generator_action(x, g);
      for (int j = 0; j < du; ++j) {
        Matrix<K> lhs = ev.element(x, gen.target, right.column(j));
        Matrix<K> rhs = ev.basis(x, gen.source, j) * action_[g];
        if (!(lhs == rhs))
          throw std::invalid_argument("module violates a relation: path from " + cat.label(x) +
                                      " through generator " + gen.name);
      }
    }
  }
}

template <class K>
struct ModuleMap {
  std::vector<Matrix<K>> component;  // per object: N(x) x M(x)
};

template <class K>
ModuleMap<K> zero_map(const Module<K>& m, const Module<K>& n) {
  ModuleMap<K> f;
  for (int x = 0; x < m.category().size(); ++x) f.component.push_back(Matrix<K>(n.dim(x), m.dim(x)));
  return f;
}

template <class K>
ModuleMap<K> identity_map(const Module<K>& m) {
  ModuleMap<K> f;
  for (int x = 0; x < m.category().size(); ++x) f.component.push_back(Matrix<K>::identity(m.dim(x)));
  return f;
}

template <class K>
ModuleMap<K> compose(const ModuleMap<K>& f, const ModuleMap<K>& g) {  // g after f
  ModuleMap<K> h;
  for (size_t x = 0; x < f.component.size(); ++x) h.component.push_back(g.component[x] * f.component[x]);
  return h;
}

template <class K>
bool is_module_map(const Module<K>& m, const Module<K>& n, const ModuleMap<K>& f) {
  const auto& cat = m.category();
  for (int g = 0; g < static_cast<int>(cat.generators().size()); ++g) {
    const auto& gen = cat.generator(g);
    if (!(n.action(g) * f.component[gen.target] == f.component[gen.source] * m.action(g))) return false;
  }
  return true;
}

namespace detail {

/// Linear system for families (phi_x) with N(g) phi_b = phi_a M(g). Returns
/// the coefficient matrix and the variable offsets.
template <class K>
Matrix<K> intertwiner_system(const Module<K>& m, const Module<K>& n, std::vector<int>& offset) {
  const auto& cat = m.category();
  const int objs = cat.size();
  offset.assign(objs + 1, 0);
  for (int x = 0; x < objs; ++x) offset[x + 1] = offset[x] + m.dim(x) * n.dim(x);
  const int vars = offset[objs];
  std::vector<std::vector<K>> rows;
  auto var = [&](int x, int r, int c) { return offset[x] + r * m.dim(x) + c; };
  for (int g = 0; g < static_cast<int>(cat.generators().size()); ++g) {
    const auto& gen = cat.generator(g);
    const int a = gen.source, b = gen.target;
    if (n.dim(a) == 0 || m.dim(b) == 0) continue;
    const Matrix<K>& ng = n.action(g);  // N(a) x N(b)
    const Matrix<K>& mg = m.action(g);  // M(a) x M(b)
    for (int r = 0; r < n.dim(a); ++r)
      for (int c = 0; c < m.dim(b); ++c) {
        std::vector<K> row(vars);
        bool any = false;
        for (int k = 0; k < n.dim(b); ++k)
          if (!is_zero(ng(r, k))) {
            row[var(b, k, c)] += ng(r, k);
            any = true;
          }
        for (int k = 0; k < m.dim(a); ++k)
          if (!is_zero(mg(k, c))) {
            row[var(a, r, k)] -= mg(k, c);
            any = true;
          }
        if (any) rows.push_back(std::move(row));
      }
  }
  Matrix<K> sys(static_cast<int>(rows.size()), vars);
  for (int i = 0; i < static_cast<int>(rows.size()); ++i)
    for (int j = 0; j < vars; ++j) sys(i, j) = rows[i][j];
  return sys;
}

template <class K>
ModuleMap<K> unpack(const Module<K>& m, const Module<K>& n, const std::vector<int>& offset,
                    const std::vector<K>& v) {
  ModuleMap<K> f;
  for (int x = 0; x < m.category().size(); ++x) {
    Matrix<K> c(n.dim(x), m.dim(x));
    for (int r = 0; r < n.dim(x); ++r)
      for (int k = 0; k < m.dim(x); ++k) c(r, k) = v[offset[x] + r * m.dim(x) + k];
    f.component.push_back(std::move(c));
  }
  return f;
}

}  // namespace detail

/// Basis of Hom(M, N).
template <class K>
std::vector<ModuleMap<K>> hom_space(const Module<K>& m, const Module<K>& n) {
  if (&m.category() != &n.category() && m.category_ptr() != n.category_ptr())
    throw std::invalid_argument("hom_space: modules over different categories");
  std::vector<int> offset;
  Matrix<K> sys = detail::intertwiner_system(m, n, offset);
  Matrix<K> ker = kernel(sys);
  std::vector<ModuleMap<K>> out;
  for (int j = 0; j < ker.cols(); ++j) out.push_back(detail::unpack(m, n, offset, ker.column(j)));
  return out;
}

template <class K>
int hom_dim(const Module<K>& m, const Module<K>& n) {
  std::vector<int> offset;
  Matrix<K> sys = detail::intertwiner_system(m, n, offset);
  return offset.back() - rank(sys);
}

/// The unique map M -> N with prescribed components at the objects in
/// `pinned`; nullopt when none exists, throws when it is not unique.
template <class K>
std::optional<ModuleMap<K>> solve_map(const Module<K>& m, const Module<K>& n,
                                      const std::map<int, Matrix<K>>& pinned) {
  std::vector<int> offset;
  Matrix<K> sys = detail::intertwiner_system(m, n, offset);
  const int vars = offset.back();
  int extra = 0;
  for (const auto& [x, c] : pinned) extra += n.dim(x) * m.dim(x);
  Matrix<K> a(sys.rows() + extra, vars), b(sys.rows() + extra, 1);
  a.set_block(0, 0, sys);
  int row = sys.rows();
  for (const auto& [x, c] : pinned)
    for (int r = 0; r < n.dim(x); ++r)
      for (int k = 0; k < m.dim(x); ++k) {
        a(row, offset[x] + r * m.dim(x) + k) = K{1};
        b(row, 0) = c(r, k);
        ++row;
      }
  if (rank(a) < vars) throw std::runtime_error("solve_map: the pinned components do not determine the map");
  auto sol = solve(a, b);
  if (!sol) return std::nullopt;
  return detail::unpack(m, n, offset, sol->column(0));
}

// ------------------------------------------------------ sub and quotient

/// Submodule spanned at each object by the columns of basis[x] (which must
/// be linearly independent and closed under the action).
template <class K>
Module<K> submodule(const Module<K>& m, const std::vector<Matrix<K>>& basis) {
  const auto& cat = m.category();
  std::vector<int> dims(cat.size());
  for (int x = 0; x < cat.size(); ++x) dims[x] = basis[x].cols();
  std::vector<Matrix<K>> action;
  for (int g = 0; g < static_cast<int>(cat.generators().size()); ++g) {
    const auto& gen = cat.generator(g);
    Matrix<K> img = m.action(g) * basis[gen.target];
    Matrix<K> src = basis[gen.source];
    if (src.rows() == 0) src = Matrix<K>(m.dim(gen.source), 0);
    auto x = solve(src, img);
    if (!x) throw std::invalid_argument("submodule: subspaces are not closed under the action");
    action.push_back(*x);
  }
  return Module<K>(m.category_ptr(), dims, action, false);
}

/// Quotient of M by the submodule with the given basis; also returns the
/// projection components.
template <class K>
std::pair<Module<K>, ModuleMap<K>> quotient_module(const Module<K>& m, const std::vector<Matrix<K>>& basis) {
  const auto& cat = m.category();
  std::vector<Quotient<K>> q;
  std::vector<int> dims(cat.size());
  ModuleMap<K> proj;
  for (int x = 0; x < cat.size(); ++x) {
    Matrix<K> b = basis[x].rows() == m.dim(x) ? basis[x] : Matrix<K>(m.dim(x), 0);
    q.push_back(quotient(b, m.dim(x)));
    dims[x] = q.back().dim();
    proj.component.push_back(q.back().projection);
  }
  std::vector<Matrix<K>> action;
  for (int g = 0; g < static_cast<int>(cat.generators().size()); ++g) {
    const auto& gen = cat.generator(g);
    const auto& qt = q[gen.target];
    Matrix<K> reps(m.dim(gen.target), qt.dim());
    for (int i = 0; i < qt.dim(); ++i) reps(qt.kept[i], i) = K{1};
    action.push_back(q[gen.source].projection * m.action(g) * reps);
  }
  return {Module<K>(m.category_ptr(), dims, action, false), proj};
}

template <class K>
std::vector<Matrix<K>> kernel_basis(const ModuleMap<K>& f, const Module<K>& m) {
  std::vector<Matrix<K>> out;
  for (int x = 0; x < m.category().size(); ++x) {
    if (m.dim(x) == 0) {
      out.push_back(Matrix<K>(0, 0));
      continue;
    }
    Matrix<K> c = f.component[x];
    if (c.rows() == 0) c = Matrix<K>(0, m.dim(x));
    out.push_back(kernel(c));
  }
  return out;
}

template <class K>
std::vector<Matrix<K>> image_basis(const ModuleMap<K>& f, const Module<K>& n) {
  std::vector<Matrix<K>> out;
  for (int x = 0; x < n.category().size(); ++x) {
    const auto& c = f.component[x];
    out.push_back(c.cols() == 0 ? Matrix<K>(n.dim(x), 0) : image(c));
  }
  return out;
}

template <class K>
Module<K> kernel_module(const ModuleMap<K>& f, const Module<K>& m) {
  return submodule(m, kernel_basis(f, m));
}

template <class K>
Module<K> image_module(const ModuleMap<K>& f, const Module<K>& n) {
  return submodule(n, image_basis(f, n));
}

template <class K>
Module<K> cokernel_module(const ModuleMap<K>& f, const Module<K>& n) {
  return quotient_module(n, image_basis(f, n)).first;
}

template <class K>
Module<K> direct_sum(const Module<K>& a, const Module<K>& b) {
  const auto& cat = a.category();
  std::vector<int> dims(cat.size());
  for (int x = 0; x < cat.size(); ++x) dims[x] = a.dim(x) + b.dim(x);
  std::vector<Matrix<K>> action;
  for (int g = 0; g < static_cast<int>(cat.generators().size()); ++g) action.push_back(direct_sum(a.action(g), b.action(g)));
  return Module<K>(a.category_ptr(), dims, action, false);
}

// --------------------------------------------------- (co)representables

/// x^ = Hom(?, x) restricted to the objects within reach.
template <class K>
Module<K> projective_at(std::shared_ptr<const LinCategory<K>> cat, int x) {
  std::vector<int> dims(cat->size(), 0);
  for (int y = 0; y <= x; ++y)
    if (cat->within_reach(y, x)) dims[y] = cat->hom_dim(y, x);
  std::vector<Matrix<K>> action;
  for (int g = 0; g < static_cast<int>(cat->generators().size()); ++g) {
    const auto& gen = cat->generator(g);
    if (dims[gen.source] == 0 || dims[gen.target] == 0) {
      action.push_back(Matrix<K>(dims[gen.source], dims[gen.target]));
      continue;
    }
    action.push_back(cat->left_multiplication(gen.source, gen.target, x, gen.element));
  }
  return Module<K>(cat, dims, action, false);
}

/// x^v = D Hom(x, ?) restricted to the objects within reach.
template <class K>
Module<K> injective_at(std::shared_ptr<const LinCategory<K>> cat, int x) {
  std::vector<int> dims(cat->size(), 0);
  for (int y = x; y < cat->size(); ++y)
    if (cat->within_reach(x, y)) dims[y] = cat->hom_dim(x, y);
  std::vector<Matrix<K>> action;
  for (int g = 0; g < static_cast<int>(cat->generators().size()); ++g) {
    const auto& gen = cat->generator(g);
    if (dims[gen.source] == 0 || dims[gen.target] == 0) {
      action.push_back(Matrix<K>(dims[gen.source], dims[gen.target]));
      continue;
    }
    action.push_back(cat->generator_action(x, g).transpose());
  }
  return Module<K>(cat, dims, action, false);
}

// ------------------------------------------------- projective covers, Ext

template <class K>
struct ProjectiveCover {
  std::vector<std::pair<int, std::vector<K>>> tops;  // (object, vector in M(object))
  Module<K> cover;
  ModuleMap<K> map;  // cover -> M
};

/// Radical of M at x: sum of the images of M(g) over generators g out of x.
template <class K>
Matrix<K> radical_at(const Module<K>& m, int x) {
  const auto& cat = m.category();
  Matrix<K> span(m.dim(x), 0);
  for (int g : cat.generators_out_of(x))
    if (m.dim(cat.generator(g).target) > 0) span = hstack(span, m.action(g));
  return span;
}

template <class K>
ProjectiveCover<K> projective_cover(const Module<K>& m) {
  const auto cat = m.category_ptr();
  ProjectiveCover<K> pc;
  std::vector<Module<K>> summands;
  for (int x = 0; x < cat->size(); ++x) {
    if (m.dim(x) == 0) continue;
    Quotient<K> top = quotient(radical_at(m, x), m.dim(x));
    for (int c : top.kept) {
      std::vector<K> t(m.dim(x));
      t[c] = K{1};
      pc.tops.push_back({x, t});
    }
  }
  Module<K> cover(cat);
  std::vector<Matrix<K>> comp(cat->size());
  for (int y = 0; y < cat->size(); ++y) comp[y] = Matrix<K>(m.dim(y), 0);
  Evaluator<K> ev(m);
  for (const auto& [x, t] : pc.tops) {
    Module<K> p = projective_at(cat, x);
    cover = direct_sum(cover, p);
    for (int y = 0; y < cat->size(); ++y) {
      Matrix<K> block(m.dim(y), p.dim(y));
      if (m.dim(y) > 0)
        for (int j = 0; j < p.dim(y); ++j) {
          Matrix<K> tm(m.dim(x), 1);
          tm.set_column(0, t);
          block.set_column(j, (ev.basis(y, x, j) * tm).column(0));
        }
      comp[y] = hstack(comp[y], block);
    }
  }
  pc.cover = cover;
  pc.map.component = comp;
  return pc;
}

template <class K>
Module<K> syzygy(const Module<K>& m) {
  auto pc = projective_cover(m);
  return kernel_module(pc.map, pc.cover);
}

/// Minimal projective resolution P_k -> ... -> P_0 -> M, cut off after
/// `max_length` + 1 terms. differential[k] is the map P_k -> P_{k-1}
/// (P_{-1} = M) object by object.
template <class K>
struct ProjectiveResolution {
  std::vector<ProjectiveCover<K>> terms;
  std::vector<std::vector<Matrix<K>>> differential;
  bool complete = false;  // the last syzygy vanished

  int length() const { return static_cast<int>(terms.size()) - 1; }

  /// Rank bookkeeping: d_k d_{k+1} = 0, im d_{k+1} = ker d_k, d_0 onto and
  /// the last differential injective when the resolution is complete.
  bool exact(const Module<K>& m) const {
    const int n = m.category().size();
    for (int x = 0; x < n; ++x) {
      int prev_dim = m.dim(x), prev_rank = prev_dim;
      for (size_t k = 0; k < terms.size(); ++k) {
        const Matrix<K>& d = differential[k][x];
        int r = d.rows() && d.cols() ? rank(d) : 0;
        if (r != prev_dim - (k == 0 ? 0 : prev_rank)) return false;
        if (k > 0 && d.rows() && d.cols()) {
          const Matrix<K>& e = differential[k - 1][x];
          if (e.rows() && !(e * d == Matrix<K>(e.rows(), d.cols()))) return false;
        }
        prev_dim = terms[k].cover.dim(x);
        prev_rank = r;
      }
      if (complete && prev_rank != prev_dim) return false;
    }
    return true;
  }
};

template <class K>
ProjectiveResolution<K> projective_resolution(const Module<K>& m, int max_length = 2) {
  ProjectiveResolution<K> res;
  const int n = m.category().size();
  Module<K> cur = m;
  std::vector<Matrix<K>> inclusion(n);
  for (int x = 0; x < n; ++x) inclusion[x] = Matrix<K>::identity(m.dim(x));
  for (int k = 0; k <= max_length; ++k) {
    if (cur.is_zero()) {
      res.complete = true;
      break;
    }
    auto pc = projective_cover(cur);
    std::vector<Matrix<K>> d(n);
    for (int x = 0; x < n; ++x) {
      const Matrix<K>& c = pc.map.component[x];
      d[x] = inclusion[x].cols() && c.cols() ? inclusion[x] * c : Matrix<K>(inclusion[x].rows(), pc.cover.dim(x));
    }
    auto ker = kernel_basis(pc.map, pc.cover);
    for (int x = 0; x < n; ++x) inclusion[x] = pc.cover.dim(x) ? ker[x] : Matrix<K>(0, 0);
    cur = submodule(pc.cover, ker);
    res.differential.push_back(std::move(d));
    res.terms.push_back(std::move(pc));
  }
  if (!res.complete && cur.is_zero()) res.complete = true;
  return res;
}

/// dim Ext^1(M, N) from the minimal projective presentation.
template <class K>
int ext1(const Module<K>& m, const Module<K>& n) {
  if (m.is_zero() || n.is_zero()) return 0;
  auto pc = projective_cover(m);
  Module<K> omega = kernel_module(pc.map, pc.cover);
  int hom_p0 = 0;
  for (const auto& [x, t] : pc.tops) hom_p0 += n.dim(x);
  return hom_dim(omega, n) - hom_p0 + hom_dim(m, n);
}

template <class K>
int ext2(const Module<K>& m, const Module<K>& n) {
  if (m.is_zero() || n.is_zero()) return 0;
  return ext1(syzygy(m), n);
}

template <class K>
bool is_rigid(const Module<K>& m) {
  return ext1(m, m) == 0;
}

/// Isomorphism test: equal dimension vectors, equal hom dimensions both ways
/// and an invertible element of Hom(M, N) found among seeded random
/// combinations of a basis.
template <class K>
bool is_isomorphic(const Module<K>& m, const Module<K>& n, int attempts = 24) {
  if (m.dims() != n.dims()) return false;
  if (m.is_zero()) return true;
  auto basis = hom_space(m, n);
  if (basis.empty()) return false;
  if (static_cast<int>(basis.size()) != hom_dim(n, m)) return false;
  std::mt19937 rng(12345);
  std::uniform_int_distribution<long> coef(-50, 50);
  for (int a = 0; a < attempts; ++a) {
    ModuleMap<K> f = zero_map(m, n);
    for (const auto& b : basis) {
      K c = a == 0 ? K{1} : K{coef(rng)};
      for (size_t x = 0; x < f.component.size(); ++x) f.component[x] = f.component[x] + c * b.component[x];
    }
    bool ok = true;
    for (int x = 0; x < m.category().size() && ok; ++x)
      if (m.dim(x) > 0 && rank(f.component[x]) < m.dim(x)) ok = false;
    if (ok) return true;
  }
  return false;
}

/// Submodule generated by the subspaces gens[x] (columns) of M(x).
template <class K>
std::vector<Matrix<K>> generated_submodule(const Module<K>& m, const std::vector<Matrix<K>>& gens) {
  const auto& cat = m.category();
  std::vector<Matrix<K>> span(cat.size());
  for (int x = 0; x < cat.size(); ++x) {
    span[x] = gens[x].rows() == m.dim(x) ? gens[x] : Matrix<K>(m.dim(x), 0);
  }
  // Generators only decrease the object index (M(g): M(target) -> M(source)),
  // so one pass in reverse order closes the subspaces.
  for (int y = cat.size() - 1; y >= 0; --y) {
    if (m.dim(y) == 0) continue;
    span[y] = span[y].cols() ? image(span[y]) : span[y];
    for (int g : cat.generators_into(y)) {
      const auto& gen = cat.generator(g);
      if (m.dim(gen.source) == 0 || span[y].cols() == 0) continue;
      span[gen.source] = hstack(span[gen.source], m.action(g) * span[y]);
    }
  }
  return span;
}

/// Dimension of a subspace family, object by object.
template <class K>
std::vector<int> dims_of(const std::vector<Matrix<K>>& spaces) {
  std::vector<int> d;
  for (const auto& s : spaces) d.push_back(s.cols() == 0 ? 0 : rank(s));
  return d;
}

}  // namespace qgd
