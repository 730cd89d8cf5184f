#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qgd/quiver.hpp"

using namespace qgd;

namespace {

Quiver a(int n) { return dynkin_quiver(parse_dynkin_type("A" + std::to_string(n)), "linear"); }

}  // namespace

TEST_CASE("framing adds one frozen vertex and one arrow per vertex") {
  Quiver f = build_framed(a(2));
  CHECK(f.vertex_count() == 4);
  CHECK(f.arrow_count() == 3);
  CHECK(f.frozen(2));
  CHECK(f.frozen(3));
  CHECK_FALSE(f.frozen(1));
  CHECK(f.name(2) == "1'");
  CHECK(f.partner(0) == 2);
  CHECK(f.partner(3) == 1);
  CHECK_THROWS_AS(build_framed(f), std::invalid_argument);

  Quiver d4 = build_framed(dynkin_quiver(parse_dynkin_type("D4"), "source"));
  CHECK(d4.vertex_count() == 8);
  CHECK(d4.arrow_count() == 7);
}

TEST_CASE("cycles and unknown vertices are rejected") {
  CHECK_THROWS_AS(Quiver({"1", "2"}, {{"a", 0, 1}, {"b", 1, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(Quiver({"1"}, {{"a", 0, 3}}), std::invalid_argument);
  CHECK_THROWS_AS(dynkin_quiver(parse_dynkin_type("A3"), "1->2,1->3,2->3"), std::invalid_argument);
}

TEST_CASE("window arrows and meshes") {
  RepetitionWindow w(build_framed(a(2)), 0, 2);
  CHECK(w.size() == 12);
  // three levels of 3 arrows plus two translated copies of 3 arrows
  CHECK(w.arrows().size() == 15);
  int x = w.index({1, 1});
  auto m = w.mesh(x);
  // vertex 2 of A2 framed: in-arrow 1->2 and out-arrow 2->2'
  CHECK(m.size() == 2);
  for (const auto& t : m) {
    CHECK(w.vertex(w.arrows()[t.first].source) == ZVertex{1, 0});
    CHECK(w.arrows()[t.second].target == x);
    CHECK(w.arrows()[t.first].target == t.middle);
  }
  CHECK(w.mesh(w.index({1, 0})).empty());
  CHECK(w.mesh(w.index({3, 2})).empty());
  CHECK(w.sigma({0, 1}) == ZVertex{2, 0});
  CHECK(w.sigma({2, 0}) == ZVertex{0, 0});
}

TEST_CASE("Dynkin classification") {
  CHECK(classify_dynkin(a(5)) == DynkinType{'A', 5});
  CHECK(classify_dynkin(dynkin_quiver(parse_dynkin_type("D5"), "source")) == DynkinType{'D', 5});
  CHECK(classify_dynkin(dynkin_quiver(parse_dynkin_type("E7"), "linear")) == DynkinType{'E', 7});
  Quiver star({"0", "1", "2", "3", "4"}, {{"a", 0, 1}, {"b", 0, 2}, {"c", 0, 3}, {"d", 0, 4}});
  CHECK_FALSE(classify_dynkin(star).has_value());
  CHECK(coxeter_number({'E', 8}) == 30);
  CHECK(coxeter_number({'D', 4}) == 6);
}

TEST_CASE("knitting reproduces the Auslander-Reiten quiver of A3") {
  auto dims = knit(a(3), 3);
  // positive part has n(n+1)/2 = 6 modules
  int positive = 0;
  for (const auto& [v, d] : dims) {
    bool pos = false, neg = false;
    for (long x : d) {
      pos |= x > 0;
      neg |= x < 0;
    }
    CHECK_FALSE((pos && neg));
    if (pos) ++positive;
  }
  CHECK(positive == 6);
  auto s = simple_positions(a(3));
  CHECK(s[0] == ZVertex{0, 0});
  CHECK(s[1] == ZVertex{0, 1});
  CHECK(s[2] == ZVertex{0, 2});
}

TEST_CASE("Serre and suspension on vertex positions") {
  for (const char* t : {"A1", "A2", "A3", "A4", "D4", "D5", "D6", "E6", "E7", "E8"}) {
    DynkinType ty = parse_dynkin_type(t);
    Quiver q = dynkin_quiver(ty, "linear");
    CoxeterData cd = coxeter_data(q);  // throws on internal disagreement
    CHECK(cd.h == coxeter_number(ty));
    for (int i = 0; i < q.vertex_count(); ++i) {
      ZVertex v{i, 3};
      CHECK(cd.suspension_inverse(cd.suspension(v)) == v);
      CHECK(cd.serre_inverse(cd.serre(v)) == v);
    }
  }
  CoxeterData d4 = coxeter_data(dynkin_quiver(parse_dynkin_type("D4"), "source"));
  for (int i = 0; i < 4; ++i) CHECK(d4.suspension({i, 0}) == ZVertex{i, 3});
  CoxeterData a3 = coxeter_data(a(3));
  CHECK(a3.suspension({0, 0}) == ZVertex{2, 1});
  CHECK(a3.suspension({1, 0}) == ZVertex{1, 2});
  CHECK(a3.suspension({2, 0}) == ZVertex{0, 3});
}

TEST_CASE("configurations of type kQ") {
  Quiver d4 = dynkin_quiver(parse_dynkin_type("D4"), "source");
  RepetitionWindow w(build_framed(d4), -6, 12);
  Configuration c = dynkin_configuration(w, d4);
  auto s = simple_positions(d4);
  // S = tau^{-2} for D4, so C = tau^{5k+2} s_i
  std::set<ZVertex> expected;
  for (int i = 0; i < 4; ++i)
    for (int k = -3; k <= 3; ++k) {
      ZVertex v{s[i].base, s[i].level - 2 + 5 * k};
      if (v.level >= -6 && v.level <= 13) expected.insert(v);
    }
  CHECK(c.members == expected);

  Quiver a3 = a(3);
  RepetitionWindow wa(build_framed(a3), 0, 5);
  Configuration ca = dynkin_configuration(wa, a3);
  for (int p = 0; p <= 6; ++p) CHECK(ca.members.count({2, p}) == 1);
  CHECK(ca.members.size() == 7);
  CHECK(ca.keeps_frozen(wa, {5, 3}));
  CHECK_FALSE(ca.keeps_frozen(wa, {3, 3}));
  CHECK(full_configuration().keeps_frozen(wa, {3, 3}));
  CHECK_THROWS_AS(explicit_configuration(wa, {{3, 1}}), std::invalid_argument);
}
