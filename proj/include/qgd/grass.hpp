#pragma once

// Quiver Grassmannians over prime fields: every submodule of a given
// dimension vector, each stored as a tuple of subspaces in reduced echelon
// form, so that equal points have equal data.

#include "qgd/module.hpp"

#include <algorithm>
#include <atomic>
#include <climits>
#include <cmath>
#include <mutex>
#include <thread>

namespace qgd {

struct BudgetExceeded : std::runtime_error {
  explicit BudgetExceeded(long long used)
      : std::runtime_error("enumeration budget exceeded after " + std::to_string(used) + " candidates"),
        candidates(used) {}
  long long candidates;
};

template <class K>
struct SubmodulePoint {
  std::vector<Matrix<K>> basis;  // per object: columns spanning U(x), in canonical form

  std::vector<int> dims() const {
    std::vector<int> d;
    for (const auto& b : basis) d.push_back(b.cols());
    return d;
  }
  friend bool operator==(const SubmodulePoint& a, const SubmodulePoint& b) { return a.basis == b.basis; }
};

/// Columns spanning the same space as `span`, canonical: the transpose of
/// the nonzero rows of the reduced row echelon form of span^T.
template <class K>
Matrix<K> canonical_span(const Matrix<K>& span, int n) {
  if (span.cols() == 0) return Matrix<K>(n, 0);
  Matrix<K> r = span.transpose();
  const int k = static_cast<int>(rref(r).size());
  Matrix<K> out(n, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < n; ++j) out(j, i) = r(i, j);
  return out;
}

/// All k-dimensional subspaces of K^n (K a prime field), as n x k matrices in
/// canonical form, in a fixed order.
template <class K>
std::vector<Matrix<K>> all_subspaces(int n, int k) {
  std::vector<Matrix<K>> out;
  if (k < 0 || k > n) return out;
  if (k == 0) {
    out.push_back(Matrix<K>(n, 0));
    return out;
  }
  const long q = FieldTraits<K>::characteristic;
  std::vector<int> piv(k);
  for (int i = 0; i < k; ++i) piv[i] = i;
  while (true) {
    // free entries: row i, columns j > piv[i] that are not pivots
    std::vector<std::pair<int, int>> free;
    for (int i = 0; i < k; ++i)
      for (int j = piv[i] + 1; j < n; ++j)
        if (std::find(piv.begin(), piv.end(), j) == piv.end()) free.push_back({i, j});
    std::vector<long> val(free.size(), 0);
    while (true) {
      Matrix<K> m(n, k);
      for (int i = 0; i < k; ++i) m(piv[i], i) = K{1};
      for (size_t f = 0; f < free.size(); ++f) m(free[f].second, free[f].first) = K(val[f]);
      out.push_back(m);
      size_t f = 0;
      while (f < val.size() && ++val[f] == q) val[f++] = 0;
      if (f == val.size()) break;
    }
    int i = k - 1;
    while (i >= 0 && piv[i] == n - k + i) --i;
    if (i < 0) break;
    ++piv[i];
    for (int j = i + 1; j < k; ++j) piv[j] = piv[j - 1] + 1;
  }
  return out;
}

/// Gaussian binomial [n choose k]_q, saturating at LLONG_MAX.
inline long long gaussian_binomial(int n, int k, long long q) {
  if (k < 0 || k > n) return 0;
  long double num = 1, den = 1;
  for (int i = 0; i < k; ++i) {
    num *= static_cast<long double>(std::pow(static_cast<long double>(q), n - i) - 1);
    den *= static_cast<long double>(std::pow(static_cast<long double>(q), i + 1) - 1);
  }
  long double v = num / den;
  return v > 9e18L ? LLONG_MAX : static_cast<long long>(v + 0.5L);
}

struct GrassOptions {
  long long budget = 10'000'000;
  int jobs = 1;
};

namespace detail {

template <class K>
class GrassSearch {
 public:
  GrassSearch(const Module<K>& m, const std::vector<int>& w, const GrassOptions& opt)
      : m_(m), w_(w), opt_(opt), order_(), n_(m.category().size()) {
    for (int x = n_ - 1; x >= 0; --x)
      if (m.dim(x) > 0) order_.push_back(x);
  }

  std::vector<SubmodulePoint<K>> run() {
    for (int x = 0; x < n_; ++x)
      if (w_[x] < 0 || w_[x] > m_.dim(x)) return {};
    SubmodulePoint<K> start;
    start.basis.resize(n_);
    for (int x = 0; x < n_; ++x) start.basis[x] = Matrix<K>(m_.dim(x), 0);
    if (order_.empty()) return {start};
    // split on the choices at the first object
    auto first = choices(start, 0);
    std::vector<std::vector<SubmodulePoint<K>>> parts(first.size());
    const int jobs = std::max(1, std::min<int>(opt_.jobs, static_cast<int>(first.size())));
    std::atomic<size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
      for (size_t i; (i = next++) < first.size();) {
        try {
          SubmodulePoint<K> p = start;
          p.basis[order_[0]] = first[i];
          descend(p, 1, parts[i]);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
          next = first.size();
        }
      }
    };
    if (jobs == 1) {
      worker();
    } else {
      std::vector<std::thread> pool;
      for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
      for (auto& t : pool) t.join();
    }
    if (error) std::rethrow_exception(error);
    std::vector<SubmodulePoint<K>> out;
    for (auto& p : parts)
      for (auto& pt : p) out.push_back(std::move(pt));
    return out;
  }

 private:
  // Subspaces of M(x) of dimension w(x) containing the images forced by the
  // objects already fixed.
  std::vector<Matrix<K>> choices(const SubmodulePoint<K>& p, size_t depth) {
    const int x = order_[depth];
    const auto& cat = m_.category();
    Matrix<K> forced(m_.dim(x), 0);
    for (int g : cat.generators_out_of(x)) {
      int t = cat.generator(g).target;
      if (p.basis[t].cols() > 0) forced = hstack(forced, m_.action(g) * p.basis[t]);
    }
    int r = forced.cols() ? rank(forced) : 0;
    std::vector<Matrix<K>> out;
    if (r > w_[x]) return out;
    Matrix<K> base = r ? image(forced) : Matrix<K>(m_.dim(x), 0);
    Quotient<K> quo = quotient(base, m_.dim(x));
    auto subs = all_subspaces<K>(quo.dim(), w_[x] - r);
    count(static_cast<long long>(subs.size()));
    for (const auto& s : subs) {
      Matrix<K> lift(m_.dim(x), s.cols());
      for (int c = 0; c < s.cols(); ++c)
        for (int i = 0; i < quo.dim(); ++i) lift(quo.kept[i], c) = s(i, c);
      out.push_back(canonical_span(hstack(base, lift), m_.dim(x)));
    }
    return out;
  }

  void descend(SubmodulePoint<K>& p, size_t depth, std::vector<SubmodulePoint<K>>& out) {
    if (depth == order_.size()) {
      out.push_back(p);
      return;
    }
    for (auto& c : choices(p, depth)) {
      p.basis[order_[depth]] = std::move(c);
      descend(p, depth + 1, out);
    }
    p.basis[order_[depth]] = Matrix<K>(m_.dim(order_[depth]), 0);
  }

  void count(long long k) {
    long long used = used_ += k;
    if (used > opt_.budget) throw BudgetExceeded(used);
  }

  const Module<K>& m_;
  std::vector<int> w_;
  GrassOptions opt_;
  std::vector<int> order_;
  int n_;
  std::atomic<long long> used_{0};
};

}  // namespace detail

/// Points of Gr_w(M)(K) in a deterministic order.
template <class K>
std::vector<SubmodulePoint<K>> enumerate_grassmannian(const Module<K>& m, const std::vector<int>& w,
                                                      const GrassOptions& opt = {}) {
  static_assert(FieldTraits<K>::characteristic > 0, "Grassmannians are enumerated over prime fields");
  return detail::GrassSearch<K>(m, w, opt).run();
}

template <class K>
Module<K> point_module(const Module<K>& m, const SubmodulePoint<K>& u) {
  return submodule(m, u.basis);
}

/// dim Hom(U, M/U), the tangent space of Gr_w(M) at U.
template <class K>
int tangent_dim(const Module<K>& m, const SubmodulePoint<K>& u) {
  return hom_dim(submodule(m, u.basis), quotient_module(m, u.basis).first);
}

/// Componentwise-maximal elements, in the input order.
inline std::vector<std::vector<int>> maximal_vectors(const std::vector<std::vector<int>>& vs) {
  auto leq = [](const std::vector<int>& a, const std::vector<int>& b) {
    for (size_t i = 0; i < a.size(); ++i)
      if (a[i] > b[i]) return false;
    return true;
  };
  std::vector<std::vector<int>> out;
  for (const auto& v : vs) {
    bool dominated = false;
    for (const auto& u : vs)
      if (u != v && leq(v, u)) dominated = true;
    if (!dominated && std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  }
  return out;
}

}  // namespace qgd
