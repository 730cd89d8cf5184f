#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qgd/desing.hpp"
#include "qgd/io.hpp"
#include "qgd/sample.hpp"

using namespace qgd;

namespace {

template <class K>
struct Tilted {
  Json j = read_json_file(QGD_DATA_DIR "/modules/d4_tilted.json");
  Nakajima<K> nk = build_setup<K>(parse_setup(j.at("setup")));
  KanContext<K> kan{nk};
  DesingContext<K> dc{kan};
  Module<K> m = parse_module<K>(j, kan.S_ptr());
  std::vector<int> w = parse_dims(j.at("dimvec"), kan.S());

  Module<K> summand(int i) const { return parse_module<K>(j.at("summands").at(i), kan.S_ptr()); }
};

template <class K>
void check_theorems(const DesingContext<K>& dc, const Desingularization<K>& d) {
  for (const auto& f : d.fibers) CHECK(f.fiber == f.quotient);
  for (const auto& t : d.targets) {
    CHECK(t.lift_matches);
    CHECK(dc.restrict(t.lift) == t.point);
  }
  std::vector<int> hit(d.targets.size(), 0), bistable_hits(d.targets.size(), 0);
  for (const auto& piece : d.pieces) {
    if (!piece.component) continue;
    for (const auto& p : piece.points) {
      REQUIRE(p.image >= 0);
      ++hit[p.image];
      if (p.bistable) {
        ++bistable_hits[p.image];
        // a bistable point is generated by its restriction
        CHECK(dc.lift(d.klr, dc.restrict(p.point)) == p.point);
      }
    }
  }
  for (size_t t = 0; t < d.targets.size(); ++t) {
    CHECK(hit[t] >= 1);
    CHECK(bistable_hits[t] <= 1);
  }
  for (const auto& v : d.strata) {
    bool below = false;
    for (const auto& c : d.maximal) {
      bool le = true;
      for (size_t i = 0; i < v.size(); ++i) le = le && v[i] <= c[i];
      below = below || le;
    }
    CHECK(below);
  }
}

}  // namespace

TEST_CASE("tilted D4: the desingularization over F_3 and F_5") {
  auto run = [&]<class K>() {
    const long q = FieldTraits<K>::characteristic;
    Tilted<K> t;
    auto d = t.dc.run(t.m, t.w, {});
    CHECK(d.klr_ext1 == 0);
    CHECK(static_cast<long>(d.targets.size()) == 2 * q + 1);
    const auto v1 = t.dc.nonfrozen_part(t.kan.intermediate_extension(t.summand(0)).dims());
    const auto v2 = t.dc.nonfrozen_part(t.kan.intermediate_extension(direct_sum(t.summand(1), t.summand(2))).dims());
    CHECK(d.components == std::vector<std::vector<int>>{v1, v2});
    CHECK(d.maximal == std::vector<std::vector<int>>{v1});
    REQUIRE(d.pieces.size() == 2);
    for (const auto& piece : d.pieces) {
      CHECK(piece.component);
      CHECK(static_cast<long>(piece.points.size()) == q + 1);
      for (const auto& p : piece.points) CHECK(p.tangent == 1);
    }
    std::vector<int> total(d.targets.size(), 0);
    for (const auto& f : d.fibers) total[f.target] += static_cast<int>(f.fiber);
    int singular = 0;
    for (size_t i = 0; i < d.targets.size(); ++i) {
      const auto& tp = d.targets[i];
      if (total[i] == 2) {
        ++singular;
        CHECK(tp.tangent == 2);
        Module<K> l = point_module(t.m, tp.point);
        CHECK(hom_dim(l, quotient_module(t.m, tp.point.basis).first) == 2);
        CHECK(is_isomorphic(l, direct_sum(t.summand(1), t.summand(2))));
      } else {
        CHECK(total[i] == 1);
        CHECK(tp.tangent == 1);
      }
    }
    CHECK(singular == 1);
    // N: P2 (+) I3 embedded as itself has a one-dimensional tangent space
    int n_like = 0;
    for (const auto& tp : d.targets)
      if (is_isomorphic(point_module(t.m, tp.point), direct_sum(t.summand(1), t.summand(2))) && tp.tangent == 1) ++n_like;
    CHECK(n_like == q);
    check_theorems(t.dc, d);
  };
  run.operator()<Zp<3>>();
  run.operator()<Zp<5>>();
}

TEST_CASE("w = dim M gives a single point and a single fibre") {
  using K = Zp<3>;
  Tilted<K> t;
  auto d = t.dc.run(t.m, t.m.dims(), {});
  REQUIRE(d.targets.size() == 1);
  CHECK(d.components.size() == 1);
  CHECK(d.components[0] == t.dc.nonfrozen_part(d.klr.dims()));
  REQUIRE(d.pieces.size() == 1);
  CHECK(d.pieces[0].points.size() == 1);
  check_theorems(t.dc, d);
}

TEST_CASE("fibre formula on random modules over the repetitive D4 configuration") {
  using K = Zp<3>;
  Tilted<K> t;
  const auto& S = t.kan.S();
  std::mt19937_64 rng(2024);
  const auto tops = objects_in_levels(S, 6, 8);
  int instances = 0, points = 0, singular = 0;
  for (int attempt = 0; attempt < 400 && instances < 20; ++attempt) {
    Module<K> m = random_module<K>(t.kan.S_ptr(), tops, 4, 6, rng);
    if (m.is_zero()) continue;
    std::vector<int> w(S.size(), 0);
    for (int x = 0; x < S.size(); ++x)
      if (m.dim(x) > 0) w[x] = std::uniform_int_distribution<int>(0, m.dim(x))(rng);
    auto d = t.dc.run(m, w, {});
    if (d.targets.size() < 2) continue;
    REQUIRE(d.klr_ext1 == 0);
    check_theorems(t.dc, d);
    ++instances;
    points += static_cast<int>(d.targets.size());
    for (const auto& tp : d.targets)
      if (tp.tangent > 1) {
        ++singular;
        break;
      }
  }
  CHECK(instances == 20);
  MESSAGE("random instances: ", points, " points in total, ", singular, " with a singular target");
  CHECK(points >= 60);
}
