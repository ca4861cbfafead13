#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "rootposet/poset.hpp"
#include "rootposet/profiles.hpp"

using namespace rootposet;

namespace {

// Independent gradedness oracle: enumerate every inclusion-maximal chain by
// DFS over the full order relation and compare lengths.
bool graded_by_chain_enumeration(const GradedPoset& p) {
  std::vector<int> lengths;
  auto extend = [&](auto&& self, int x, int len) -> void {
    Mask up = p.above_of(x);
    if (!up) {
      lengths.push_back(len);
      return;
    }
    // Restrict to covers: chains through a non-cover are not maximal.
    Mask next = up;
    while (next) {
      const int y = first_element(next);
      next &= next - 1;
      if (p.covers_of(y) & bit(x)) self(self, y, len + 1);
    }
  };
  for (int x = 1; x <= p.size(); ++x)
    if (!p.covers_of(x)) extend(extend, x, 1);
  return std::adjacent_find(lengths.begin(), lengths.end(),
                            std::not_equal_to<>()) == lengths.end();
}

GradedPoset chain(int n) {
  CoverList c;
  for (int i = 1; i < n; ++i) c.push_back({i, i + 1});
  return build_poset(n, c);
}

}  // namespace

TEST_CASE("masks") {
  CHECK(bit(1) == 1);
  CHECK(bit(64) == (Mask{1} << 63));
  CHECK(first_element(bit(7)) == 7);
  CHECK(full_mask(3) == 0b111);
  CHECK(full_mask(64) == ~Mask{0});
  CHECK(popcount(full_mask(60)) == 60);
}

TEST_CASE("build_poset closes, reduces and rank-sorts") {
  // Input relation with a redundant pair (1,4) and labels out of rank order.
  GradedPoset p = build_poset(4, {{1, 3}, {3, 4}, {1, 4}, {2, 3}});
  CHECK(p.size() == 4);
  CHECK(p.rank_of(1) == 1);
  CHECK(p.rank_of(2) == 1);
  CHECK(p.rank_of(3) == 2);
  CHECK(p.rank_of(4) == 3);
  CHECK(p.cover_list() == CoverList{{1, 3}, {2, 3}, {3, 4}});
  CHECK(p.leq(1, 4));
  CHECK(!p.leq(4, 1));
  CHECK(!p.leq(1, 2));
  CHECK(p.below_of(4) == (bit(1) | bit(2) | bit(3)));
  CHECK(p.above_of(1) == (bit(3) | bit(4)));

  // Rank-sorting relabels: feed the same poset with reversed names.
  GradedPoset q = build_poset(4, {{4, 2}, {2, 1}, {4, 1}, {3, 2}});
  CHECK(q.cover_list() == p.cover_list());
}

TEST_CASE("build_poset rejects bad input") {
  CHECK_THROWS_AS(build_poset(2, {{1, 2}, {2, 1}}), poset_error);
  CHECK_THROWS_AS(build_poset(2, {{1, 3}}), poset_error);
  CHECK_THROWS_AS(build_poset(65, {}), poset_error);
  CHECK_THROWS_AS(build_poset(2, {{2, 2}}), poset_error);
}

TEST_CASE("is_graded matches chain enumeration on small posets") {
  // Every poset on <= 4 points, generated as all DAG edge subsets.
  const int n = 4;
  std::vector<std::pair<int, int>> pairs;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      if (i != j && i < j) pairs.push_back({i, j});  // acyclic by construction
  for (Mask sel = 0; sel < (Mask{1} << pairs.size()); ++sel) {
    CoverList c;
    for (size_t k = 0; k < pairs.size(); ++k)
      if (sel & (Mask{1} << k)) c.push_back(pairs[k]);
    GradedPoset p = build_poset(n, c);
    CHECK(is_graded(p) == graded_by_chain_enumeration(p));
  }
}

TEST_CASE("N poset is not graded, diamond is") {
  GradedPoset np = build_poset(4, {{1, 3}, {2, 3}, {2, 4}, {4, 3}});
  CHECK(!is_graded(np));
  GradedPoset diamond = build_poset(4, {{1, 2}, {1, 3}, {2, 4}, {3, 4}});
  CHECK(is_graded(diamond));
  CHECK(rank_vector(diamond) == std::vector<int>{1, 2, 1});
}

TEST_CASE("minimals maximals ideals crowns") {
  GradedPoset p = build_poset(5, {{1, 3}, {2, 3}, {3, 4}, {3, 5}});
  CHECK(minimals(p).members == (bit(1) | bit(2)));
  CHECK(maximals(p).members == (bit(4) | bit(5)));
  CHECK(ideal_of(p, Antichain{bit(4)}).members == (bit(1) | bit(2) | bit(3) | bit(4)));
  CHECK(crown(p, OrderIdeal{bit(1) | bit(2) | bit(3)}).members == bit(3));
  CHECK(is_antichain(p, bit(4) | bit(5)));
  CHECK(!is_antichain(p, bit(3) | bit(4)));
  CHECK(is_order_ideal(p, bit(1) | bit(2)));
  CHECK(!is_order_ideal(p, bit(3)));
}

TEST_CASE("antichain enumeration equals brute-force subset filter") {
  // All bundled small posets; brute force caps at 20 elements.
  for (const std::string name :
       {"I2(5)", "I2(7)", "I2(12)", "A2", "A3", "B3", "H3"}) {
    const GradedPoset p = reference_poset(name);
    REQUIRE(p.size() <= 20);
    std::set<Mask> brute;
    for (Mask s = 0; s < (Mask{1} << p.size()); ++s)
      if (is_antichain(p, s)) brute.insert(s);
    std::set<Mask> fast;
    for_each_antichain(p, [&](Mask a) { fast.insert(a); });
    CHECK(brute == fast);
    CHECK(count_antichains(p) == static_cast<long long>(brute.size()));
  }
}

TEST_CASE("antichain ideal round-trip on every bundled poset") {
  std::vector<GradedPoset> posets;
  for (const std::string name : {"I2(5)", "A3", "B4", "F4", "H3"})
    posets.push_back(reference_poset(name));
  for (int k = 1; k <= 4; ++k)
    posets.push_back(read_poset_file(data_directory() + "/fixtures/h4_fig6_" +
                                     std::to_string(k) + ".poset"));
  for (const GradedPoset& p : posets) {
    for_each_antichain(p, [&](Mask a) {
      const OrderIdeal i = ideal_of(p, Antichain{a});
      CHECK(is_order_ideal(p, i.members));
      CHECK(crown(p, i).members == a);
    });
  }
}

TEST_CASE("support and parabolic subposets") {
  const GradedPoset h3 = reference_poset("H3");
  const Mask simples = minimals(h3).members;
  CHECK(popcount(simples) == 3);
  for (int x = 1; x <= h3.size(); ++x) {
    const Mask s = support(h3, x);
    CHECK((s & simples) == s);
    CHECK(s != 0);
  }
  // Deleting one simple from H3 leaves rank-2 parabolics of sizes 5, 3+1, 2+2
  // depending on which simple goes (I2(5), A2 x A1 minus..., see profiles).
  std::multiset<int> sizes;
  for (Mask s = simples; s;) {
    const int x = first_element(s);
    s &= s - 1;
    sizes.insert(parabolic_subposet(h3, simples & ~bit(x)).size());
  }
  // |I2(5)| = 5, |A2| = 3, |A1 x A1| = 2: each plus nothing else.
  CHECK(sizes == std::multiset<int>{2, 3, 5});
}

TEST_CASE("induced subposet and delete_minimals") {
  GradedPoset p = build_poset(5, {{1, 3}, {2, 3}, {3, 4}, {3, 5}});
  GradedPoset top = induced_subposet(p, bit(3) | bit(4) | bit(5));
  CHECK(top.size() == 3);
  CHECK(top.cover_list() == CoverList{{1, 2}, {1, 3}});
  GradedPoset dm = delete_minimals(p);
  CHECK(dm.size() == 3);
  CHECK(is_isomorphic(dm, top));
}

TEST_CASE("disjoint union") {
  GradedPoset u = disjoint_union(chain(2), chain(3));
  CHECK(u.size() == 5);
  CHECK(count_antichains(u) == 3 * 4);  // product of chain antichain counts
  CHECK(!is_graded(u));                 // unequal chain lengths
}

TEST_CASE("canonical form is label-invariant and separates shapes") {
  // Two labelings of the same poset.
  GradedPoset a = build_poset(4, {{1, 3}, {2, 3}, {2, 4}});
  GradedPoset b = build_poset(4, {{2, 4}, {1, 4}, {1, 3}});
  CHECK(canonical_form(a) == canonical_form(b));
  CHECK(is_isomorphic(a, b));
  // Different shape, same rank vector.
  GradedPoset c = build_poset(4, {{1, 3}, {2, 3}, {1, 4}, {2, 4}});
  CHECK(canonical_form(a) != canonical_form(c));
  CHECK(!is_isomorphic(a, c));
}

TEST_CASE("canonical form distinguishes the four Fig. 6 posets") {
  std::vector<CoverList> forms;
  for (int k = 1; k <= 4; ++k) {
    const GradedPoset p = read_poset_file(
        data_directory() + "/fixtures/h4_fig6_" + std::to_string(k) + ".poset");
    CHECK(p.size() == 60);
    CHECK(is_graded(p));
    forms.push_back(canonical_form(p));
  }
  std::sort(forms.begin(), forms.end());
  CHECK(std::adjacent_find(forms.begin(), forms.end()) == forms.end());
}

TEST_CASE("text round-trip") {
  const GradedPoset h3 = reference_poset("H3");
  CHECK(poset_from_text(to_text(h3)) == h3);
  const std::string tmp = "/tmp/rootposet_test_roundtrip.poset";
  write_poset_file(h3, tmp);
  CHECK(read_poset_file(tmp) == h3);
  CHECK_THROWS_AS(read_poset_file("/nonexistent/x.poset"), poset_error);
  CHECK_THROWS_AS(poset_from_text("garbage"), poset_error);
}
