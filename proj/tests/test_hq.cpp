#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qgd/hq.hpp"

#include <set>

using namespace qgd;

namespace {

Quiver make(const char* type, const char* orientation) { return dynkin_quiver(parse_dynkin_type(type), orientation); }

// Tits form sum d_i^2 - sum_{a: i->j} d_i d_j; indecomposables of a Dynkin
// quiver are exactly its positive roots.
long tits(const Quiver& q, const std::vector<long>& d) {
  long s = 0;
  for (long x : d) s += x * x;
  for (const auto& a : q.arrows()) s -= d[a.source] * d[a.target];
  return s;
}

}  // namespace

TEST_CASE("indecomposables are the positive roots") {
  for (auto [t, o, count] : {std::tuple{"A2", "linear", 3}, {"A3", "linear", 6}, {"D4", "source", 12}, {"A3", "1->2,3->2", 6}}) {
    CAPTURE(t);
    CAPTURE(o);
    Quiver q = make(t, o);
    auto mods = indecomposables(q);
    CHECK(static_cast<int>(mods.size()) == count);
    std::set<std::vector<long>> roots;
    for (const auto& m : mods) {
      CHECK(tits(q, m.dims) == 1);
      roots.insert(m.dims);
    }
    CHECK(static_cast<int>(roots.size()) == count);
  }
}

TEST_CASE("knitted dimensions agree with Hom from the projectives") {
  Quiver q = make("D4", "source");
  HqContext<Zp<3>> hq(q);
  const auto& mods = hq.modules();
  for (size_t m = 0; m < mods.size(); ++m)
    for (int i = 0; i < q.vertex_count(); ++i) {
      const int p = hq.r_index(ZVertex{i, 0});
      CHECK(hq.kan().R().hom_dim(p, hq.r_index(mods[m].position)) == mods[m].dims[i]);
    }
}

TEST_CASE("M^ agrees with K_LR of the embedded module") {
  auto run = [](const char* t, const char* o) {
    CAPTURE(t);
    Quiver q = make(t, o);
    HqContext<Rational> hq(q);
    for (size_t m = 0; m < hq.modules().size(); ++m) {
      CAPTURE(m);
      auto c = hq.compare(static_cast<int>(m));
      CHECK(c.hat == c.klr);
      CHECK(c.stray.empty());
      CHECK(c.embed_supported_on_proj);
      CHECK(c.generated_isomorphic);
      CHECK_FALSE(c.touches_boundary);
    }
  };
  run("A2", "linear");
  run("A3", "linear");
  run("D4", "source");
}

TEST_CASE("M^ at an identity object is Hom from the projective") {
  Quiver q = make("A3", "linear");
  HqContext<Zp<2>> hq(q);
  for (size_t m = 0; m < hq.modules().size(); ++m)
    for (size_t o = 0; o < hq.objects().size(); ++o) {
      const auto& ob = hq.objects()[o];
      if (ob.kind != HqKind::Identity) continue;
      const int i = hq.modules()[ob.module].projective_index;
      CHECK(hq.hat_dim(static_cast<int>(m), ob) == hq.modules()[m].dims[i]);
      CHECK(hq.hom(ob.module, static_cast<int>(m)) == hq.modules()[m].dims[i]);
    }
}
