#include <doctest.h>

#include "helpers.hpp"
#include "pil/poset.hpp"

using namespace pil;
using pil::testing::Rng;

TEST_CASE("construction closes transitively and rejects cycles") {
  auto P = FinitePoset::from_relations({"x", "y", "z"}, {{"x", "y"}, {"y", "z"}});
  CHECK(P->leq(P->index_of("x"), P->index_of("z")));  // closure
  CHECK(!P->leq(P->index_of("z"), P->index_of("x")));
  CHECK(P->lt(0, 2));
  CHECK(!P->lt(0, 0));

  CHECK_THROWS_AS(FinitePoset::from_relations({"x", "y"}, {{"x", "y"}, {"y", "x"}}), CycleError);
  CHECK_THROWS_AS(FinitePoset::from_relations({"x"}, {{"x", "q"}}), UnknownLabel);
  CHECK_THROWS_AS(P->index_of("nope"), UnknownLabel);
}

TEST_CASE("hasse edges are exactly the covering pairs") {
  // diamond: bot ≤ l, r ≤ top, with the composite bot ≤ top implied
  auto D = FinitePoset::from_relations(
      {"bot", "l", "r", "top"},
      {{"bot", "l"}, {"bot", "r"}, {"l", "top"}, {"r", "top"}, {"bot", "top"}});
  auto H = D->hasse();
  CHECK(H.size() == 4);  // bot≤top is not a cover
  for (auto [a, b] : H) CHECK(D->lt(a, b));
  const auto& below_top = D->hasse_below(D->index_of("top"));
  CHECK(below_top.size() == 2);

  auto chain = FinitePoset::from_relations({"0", "1", "2"}, {{"0", "1"}, {"1", "2"}, {"0", "2"}});
  CHECK(chain->hasse().size() == 2);
}

TEST_CASE("up and down sets and topological order") {
  Rng g(21);
  for (int iter = 0; iter < 25; ++iter) {
    auto P = testing::random_poset(g, 6);
    const int n = P->size();
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) {
        CHECK(P->down_set(x)[y] == P->leq(y, x));
        CHECK(P->up_set(x)[y] == P->leq(x, y));
        if (P->leq(x, y)) CHECK(P->topo_pos(x) <= P->topo_pos(y));
      }
    // transitivity of the closure
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          if (P->leq(a, b) && P->leq(b, c)) CHECK(P->leq(a, c));
  }
}

TEST_CASE("monotone map validation and composition") {
  auto P = FinitePoset::from_relations({"a", "b"}, {{"a", "b"}});
  auto Q = FinitePoset::from_relations({"x", "y"}, {{"x", "y"}});

  MonotoneMap good{P, Q, {0, 1}};
  CHECK(good.is_monotone_valid());
  MonotoneMap bad{P, Q, {1, 0}};
  CHECK(!bad.is_monotone_valid());

  MonotoneMap id = MonotoneMap::identity(P);
  CHECK(id.is_monotone_valid());
  CHECK(id(0) == 0);
  MonotoneMap c = MonotoneMap::constant(P, Q, 1);
  CHECK(c.is_monotone_valid());
  CHECK(compose(c, id).image == c.image);

  CHECK(good.is_full());
  CHECK(good.is_injective());
  CHECK(!c.is_injective());
}

TEST_CASE("random monotone maps validate and inclusions are full and faithful") {
  Rng g(22);
  for (int iter = 0; iter < 30; ++iter) {
    auto P = testing::random_poset(g, 5);
    auto Q = testing::random_poset(g, 6);
    MonotoneMap f = testing::random_monotone(g, P, Q);
    CHECK(f.is_monotone_valid());

    auto inc = testing::random_inclusion(g, Q, 4);
    CHECK(inc.map.is_monotone_valid());
    CHECK(inc.map.is_full());
    CHECK(inc.map.is_injective());
    for (int x = 0; x < 4; ++x)
      for (int y = 0; y < 4; ++y)
        CHECK(inc.sub->leq(x, y) == Q->leq(inc.map(x), inc.map(y)));
  }
}

TEST_CASE("closures, sublevels and principal down sets") {
  auto P = FinitePoset::from_relations({"a", "b", "c", "d"},
                                       {{"a", "b"}, {"b", "d"}, {"c", "d"}});
  DownSet D = principal_down(P, P->index_of("d"));
  CHECK(D.members.count() == 4);
  CHECK(D.is_valid());

  Bitset s(P->size());
  s.set(P->index_of("b"));
  DownSet C = down_closure(P, s);
  CHECK(C.members[P->index_of("a")]);
  CHECK(!C.members[P->index_of("c")]);
  Bitset U = up_closure(P, s);
  CHECK(U[P->index_of("d")]);
  CHECK(!U[P->index_of("a")]);

  auto Q = FinitePoset::from_relations({"x", "y"}, {{"x", "y"}});
  MonotoneMap f{P, Q, {0, 0, 0, 1}};
  REQUIRE(f.is_monotone_valid());
  Bitset sub = sublevel(f, 0);
  CHECK(sub.count() == 3);  // everything sent to x
  Bitset sup = superlevel(f, 1);
  CHECK(sup.count() == 1);
}

TEST_CASE("down set lattice enumerates ideals with joins and meets") {
  // three-element antichain: the lattice is the full boolean cube
  auto A = FinitePoset::from_relations({"a", "b", "c"}, {});
  DownLattice L = down_lattice(A);
  CHECK(L.down_sets.size() == 8);
  // chain of three: ideals are prefixes
  auto C3 = FinitePoset::from_relations({"0", "1", "2"}, {{"0", "1"}, {"1", "2"}});
  CHECK(down_lattice(C3).down_sets.size() == 4);

  const int n = static_cast<int>(L.down_sets.size());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      int u = L.join(i, j), m = L.meet(i, j);
      CHECK(L.down_sets[u] == (L.down_sets[i] | L.down_sets[j]));
      CHECK(L.down_sets[m] == (L.down_sets[i] & L.down_sets[j]));
    }
  CHECK(L.down_sets[L.bottom()].none());
  CHECK(L.down_sets[L.top()].all());

  // iota sends p to its principal ideal, monotonically
  CHECK(L.iota.is_monotone_valid());
  for (int p = 0; p < A->size(); ++p)
    CHECK(L.down_sets[L.iota(p)] == principal_down(A, p).members);
}

TEST_CASE("lattice enumeration stops at the cap") {
  std::vector<std::string> labels;
  for (int i = 0; i < 14; ++i) labels.push_back("a" + std::to_string(i));
  auto big = FinitePoset::from_relations(labels, {});  // 2^14 ideals
  CHECK_THROWS_AS(down_lattice(big, 4096), ExplosionError);
}
