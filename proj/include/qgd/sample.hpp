#pragma once

// Small module families for property checks: truncated representables,
// seeded random quotients, and bounded enumeration.

#include "qgd/module.hpp"

#include <functional>
#include <random>

namespace qgd {

/// Objects whose level lies in [lo, hi].
template <class K>
std::vector<int> objects_in_levels(const LinCategory<K>& cat, int lo, int hi) {
  std::vector<int> out;
  for (int x = 0; x < cat.size(); ++x)
    if (cat.vertex(x).level >= lo && cat.vertex(x).level <= hi) out.push_back(x);
  return out;
}

/// M with everything below `floor` divided out.
template <class K>
Module<K> truncate_below(const Module<K>& m, int floor) {
  const auto& cat = m.category();
  std::vector<Matrix<K>> low(cat.size());
  for (int x = 0; x < cat.size(); ++x)
    low[x] = cat.vertex(x).level < floor ? Matrix<K>::identity(m.dim(x)) : Matrix<K>(m.dim(x), 0);
  return quotient_module(m, low).first;
}

template <class K>
K random_scalar(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(-2, 2);
  return K(d(rng));
}

/// Random quotient of a sum of truncated representables with tops among
/// `tops`, cut down until its total dimension is at most `max_total`.
template <class K>
Module<K> random_module(std::shared_ptr<const LinCategory<K>> cat, const std::vector<int>& tops, int floor,
                        int max_total, std::mt19937_64& rng) {
  std::uniform_int_distribution<size_t> pick(0, tops.size() - 1);
  std::uniform_int_distribution<int> count(1, 2);
  Module<K> m(cat);
  int n = count(rng);
  for (int i = 0; i < n; ++i) m = direct_sum(m, truncate_below(projective_at(cat, tops[pick(rng)]), floor));
  while (m.total_dim() > max_total || (m.total_dim() > 1 && std::bernoulli_distribution(0.3)(rng))) {
    auto supp = m.support();
    std::uniform_int_distribution<size_t> at(0, supp.size() - 1);
    int x = supp[at(rng)];
    std::vector<Matrix<K>> gens(cat->size());
    Matrix<K> v(m.dim(x), 1);
    for (int r = 0; r < m.dim(x); ++r) v(r, 0) = random_scalar<K>(rng);
    if (rank(v) == 0) v(0, 0) = K{1};
    gens[x] = v;
    Module<K> next = quotient_module(m, generated_submodule(m, gens)).first;
    if (next.is_zero()) break;
    m = next;
  }
  return m;
}

/// Calls `visit` on every nonzero module supported on `objects` with total
/// dimension at most `max_total` whose action matrices have entries in
/// `coefficients`. Modules failing the relations are skipped.
template <class K>
void enumerate_modules(std::shared_ptr<const LinCategory<K>> cat, const std::vector<int>& objects, int max_total,
                       const std::vector<K>& coefficients, const std::function<void(const Module<K>&)>& visit) {
  std::vector<int> dims(cat->size(), 0);
  std::function<void(size_t, int)> dimvec = [&](size_t i, int left) {
    if (i == objects.size()) {
      if (left == max_total) return;
      std::vector<std::pair<int, int>> slots;  // (generator, entry)
      std::vector<int> active;
      for (int g = 0; g < static_cast<int>(cat->generators().size()); ++g) {
        const auto& gen = cat->generator(g);
        int e = dims[gen.source] * dims[gen.target];
        if (e > 0) active.push_back(g);
        for (int k = 0; k < e; ++k) slots.push_back({g, k});
      }
      std::vector<size_t> choice(slots.size(), 0);
      while (true) {
        std::vector<Matrix<K>> act(cat->generators().size());
        for (int g : active) act[g] = Matrix<K>(dims[cat->generator(g).source], dims[cat->generator(g).target]);
        for (size_t s = 0; s < slots.size(); ++s) {
          auto [g, k] = slots[s];
          int cols = dims[cat->generator(g).target];
          act[g](k / cols, k % cols) = coefficients[choice[s]];
        }
        Module<K> m(cat, dims, act, false);
        bool ok = true;
        try {
          m.check_relations();
        } catch (const std::exception&) {
          ok = false;
        }
        if (ok) visit(m);
        size_t s = 0;
        while (s < choice.size() && ++choice[s] == coefficients.size()) choice[s++] = 0;
        if (s == choice.size()) break;
      }
      return;
    }
    for (int d = 0; d <= left; ++d) {
      dims[objects[i]] = d;
      dimvec(i + 1, left - d);
    }
    dims[objects[i]] = 0;
  };
  dimvec(0, max_total);
}

/// Representatives of the isomorphism classes among `ms`.
template <class K>
std::vector<Module<K>> distinct_up_to_iso(const std::vector<Module<K>>& ms) {
  std::vector<Module<K>> out;
  for (const auto& m : ms) {
    bool seen = false;
    for (const auto& o : out)
      if (o.dims() == m.dims() && is_isomorphic(o, m)) {
        seen = true;
        break;
      }
    if (!seen) out.push_back(m);
  }
  return out;
}

}  // namespace qgd
