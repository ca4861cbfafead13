#include "rootposet/search.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <iterator>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>
#include <tuple>

namespace rootposet {

namespace {

// ---------------------------------------------------------------------------
// Certified Panyushev cycles on a partially decided poset.
//
// `states` holds, sorted ascending, every antichain mask for which one
// Panyushev step on the partial poset is provably the step on any valid
// completion.  Cycles of the step map that stay inside `states` are genuine
// orbits of every completion; walks that leave are discarded.  on_cycle
// receives (length, sum of antichain sizes) and returns false to abort.
template <class OnCycle>
bool certified_cycles(const GradedPoset& p, const std::vector<Mask>& states,
                      OnCycle&& on_cycle) {
  const int m = static_cast<int>(states.size());
  // 0 = unseen, 1 = on the current walk, 2 = settled.
  std::vector<char> status(m, 0);
  std::vector<int> path;
  for (int start = 0; start < m; ++start) {
    if (status[start] != 0) continue;
    path.clear();
    int j = start;
    while (true) {
      if (status[j] == 1) {
        // Found a cycle: the tail of `path` from the first occurrence of j.
        auto it = std::find(path.begin(), path.end(), j);
        int length = static_cast<int>(path.end() - it);
        long long total = 0;
        for (auto k = it; k != path.end(); ++k) total += popcount(states[*k]);
        for (int k : path) status[k] = 2;
        if (!on_cycle(length, total)) return false;
        break;
      }
      if (status[j] == 2) {
        for (int k : path) status[k] = 2;
        break;
      }
      status[j] = 1;
      path.push_back(j);
      const Mask next = panyushev_step(p, states[j]);
      auto it = std::lower_bound(states.begin(), states.end(), next);
      if (it == states.end() || *it != next) {
        // The walk reaches an uncertified antichain; nothing on it closes
        // into a certified cycle.
        for (int k : path) status[k] = 2;
        break;
      }
      j = static_cast<int>(it - states.begin());
    }
  }
  return true;
}

// Shared orbit-pruning data derived from the profile once per search.
struct OrbitRules {
  bool use_multiset = false;  // Property 5 multiset requested
  bool use_average = false;   // Property 5a requested
  std::map<int, int> multiplicity;
  int n = 0;  // rank of the root system; certified averages must equal n/2

  bool admit(const std::vector<Mask>& states, const GradedPoset& p) const {
    if (!use_multiset && !use_average) return true;
    std::map<int, int> seen;
    return certified_cycles(p, states, [&](int length, long long total) {
      if (use_average && 2 * total != static_cast<long long>(length) * n)
        return false;
      if (use_multiset) {
        auto it = multiplicity.find(length);
        if (it == multiplicity.end()) return false;
        if (++seen[length] > it->second) return false;
      }
      return true;
    });
  }
};

OrbitRules make_orbit_rules(const RootSystemProfile& profile,
                            const std::vector<Property>& filters) {
  OrbitRules r;
  r.n = profile.n;
  for (Property f : filters) {
    if (f == Property::P5Multiset) r.use_multiset = true;
    if (f == Property::P5a) r.use_average = true;
  }
  for (int len : profile.orbit_multiset) ++r.multiplicity[len];
  return r;
}

bool has_property(const std::vector<Property>& filters, Property p) {
  return std::find(filters.begin(), filters.end(), p) != filters.end();
}

// Count antichains of `p` by size with early abort once a size exceeds its
// bound (bounds[s] < 0 means unbounded, sizes past the vector are capped at
// zero).  Optionally collects every antichain avoiding `collect_avoid` into
// `collected`, counts 2-/3-antichains meeting `marked`, and tallies the sizes
// of the generated order ideals (antichains and ideals are in bijection, so
// this is the ideal-size generating function for free).
struct AntichainScan {
  bool within_bounds = true;
  std::vector<long long> by_size;
  long long marked2 = 0, marked3 = 0;
  std::vector<Mask> collected;
  std::vector<long long> ideal_sizes;
};

AntichainScan scan_antichains(const GradedPoset& p,
                              const std::vector<long long>& bounds,
                              bool use_bounds, Mask marked, Mask collect_avoid,
                              bool collect, bool want_ideals = false) {
  AntichainScan out;
  out.by_size.assign(std::max<size_t>(bounds.size(), 8), 0);
  if (want_ideals) out.ideal_sizes.assign(p.size() + 1, 0);
  auto rec = [&](auto&& self, Mask chosen, int size, Mask candidates,
                 Mask down) -> bool {
    if (static_cast<size_t>(size) >= out.by_size.size())
      out.by_size.resize(size + 1, 0);
    ++out.by_size[size];
    if (use_bounds) {
      const long long cap =
          static_cast<size_t>(size) < bounds.size() ? bounds[size] : 0;
      if (cap >= 0 && out.by_size[size] > cap) return false;
    }
    if (chosen & marked) {
      if (size == 2) ++out.marked2;
      if (size == 3) ++out.marked3;
    }
    if (collect && !(chosen & collect_avoid)) out.collected.push_back(chosen);
    if (want_ideals) ++out.ideal_sizes[popcount(down)];
    Mask rest = candidates;
    while (rest) {
      const int x = first_element(rest);
      rest &= rest - 1;
      if (!self(self, chosen | bit(x), size + 1,
                rest & ~(p.below_of(x) | p.above_of(x)),
                down | p.below_of(x) | bit(x)))
        return false;
    }
    return true;
  };
  out.within_bounds = rec(rec, Mask{0}, 0, full_mask(p.size()), Mask{0});
  if (collect) std::sort(out.collected.begin(), out.collected.end());
  return out;
}

// Column sums of the profile's H-triangle: the number of antichains of each
// size in any poset satisfying Property 4.
std::vector<long long> antichain_bounds(const RootSystemProfile& profile) {
  return profile.h_triangle.size_counts();
}

// Genfun target bookkeeping: a small bitset of still-live target indices.
struct LiveTargets {
  std::array<uint64_t, 4> bits{};
  int count = 0;

  static LiveTargets all(int n) {
    LiveTargets t;
    t.count = n;
    for (int i = 0; i < n; ++i) t.bits[i >> 6] |= uint64_t{1} << (i & 63);
    return t;
  }
  bool test(int i) const { return bits[i >> 6] >> (i & 63) & 1; }
  void clear(int i) {
    bits[i >> 6] &= ~(uint64_t{1} << (i & 63));
    --count;
  }
  bool empty() const { return count == 0; }
};

// A size-s order ideal lives in ranks <= s, so a partial poset holding the
// first r ranks already has the final ideal count for every size <= r, and a
// lower bound for larger sizes.  One more size is nearly decided: an ideal of
// size r+1 holds at most one rank-(r+1) element (its principal ideal alone
// has r+1 elements) and nothing higher, so the final count for size r+1
// exceeds the current one by at most the number of rank-(r+1) elements.
void filter_targets(const std::vector<long long>& counts, int ranks_built,
                    int next_rank_size,
                    const std::vector<UnivariatePolynomial>& targets,
                    LiveTargets& live) {
  const int got_top = static_cast<int>(counts.size()) - 1;
  for (int i = 0; i < static_cast<int>(targets.size()); ++i) {
    if (!live.test(i)) continue;
    const auto& t = targets[i];
    bool ok = true;
    const int top = std::max(got_top, t.degree());
    for (int s = 0; s <= top && ok; ++s) {
      const long long got = s <= got_top ? counts[s] : 0;
      if (s <= ranks_built) {
        if (got != t.coeff(s)) ok = false;
      } else if (got > t.coeff(s)) {
        ok = false;
      } else if (s == ranks_built + 1 &&
                 t.coeff(s) - got > next_rank_size) {
        ok = false;
      }
    }
    if (!ok) live.clear(i);
  }
}

// Ideals of the dual poset are complements of ideals of the original, so the
// ideal-size generating function of the dual is the original one reversed.
// A target of degree above n cannot be realized at all; reversing it to a
// constant -1 makes the very first admission check retire it.
UnivariatePolynomial reverse_target(const UnivariatePolynomial& t, int n) {
  std::vector<Integer> c(n + 1, 0);
  if (t.degree() > n) {
    c.assign(1, -1);
    return UnivariatePolynomial(std::move(c));
  }
  for (int s = 0; s <= n; ++s) c[s] = t.coeff(n - s);
  return UnivariatePolynomial(std::move(c));
}

// Sort found posets by canonical form and drop isomorphic duplicates,
// keeping matched-target indices aligned.
void finalize_results(SearchResult& result) {
  struct Row {
    GradedPoset p;
    CoverList canon;
    int matched;
  };
  std::vector<Row> rows;
  rows.reserve(result.posets.size());
  for (size_t i = 0; i < result.posets.size(); ++i) {
    CoverList canon = canonical_form(result.posets[i]);
    rows.push_back({std::move(result.posets[i]), std::move(canon),
                    result.matched_target[i]});
  }
  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    if (a.canon != b.canon) return a.canon < b.canon;
    return a.p.cover_list() < b.p.cover_list();
  });
  rows.erase(std::unique(rows.begin(), rows.end(),
                         [](const Row& a, const Row& b) { return a.canon == b.canon; }),
             rows.end());
  result.posets.clear();
  result.matched_target.clear();
  for (auto& r : rows) {
    result.posets.push_back(std::move(r.p));
    result.matched_target.push_back(r.matched);
  }
}

struct SharedCounters {
  std::atomic<long long> nodes{0};
  std::atomic<bool> aborted{false};
  long long limit = -1;

  // Returns false once the node budget is exhausted.
  bool tick() {
    const long long v = nodes.fetch_add(1, std::memory_order_relaxed) + 1;
    if (limit >= 0 && v > limit) {
      aborted.store(true, std::memory_order_relaxed);
      return false;
    }
    return true;
  }
};

}  // namespace

// ---------------------------------------------------------------------------
// H4 skeleton

PartialPoset h4_skeleton() {
  PartialPoset s;
  s.n = 60;
  s.ranks = {1,  1,  1,  1,  2,  2,  2,  3,  3,  3,  4,  4,  4,  5,  5,
             5,  6,  6,  6,  7,  7,  7,  8,  8,  8,  9,  9,  9,  10, 10,
             10, 11, 11, 11, 12, 12, 13, 13, 14, 14, 15, 15, 16, 16, 17,
             17, 18, 18, 19, 19, 20, 21, 22, 23, 24, 25, 26, 27, 28, 29};
  s.required = {
      {1, 5},   {2, 5},   {2, 6},   {3, 6},   {3, 7},   {4, 7},   {5, 8},
      {5, 9},   {6, 9},   {6, 10},  {7, 10},  {8, 11},  {8, 12},  {9, 12},
      {9, 13},  {10, 13}, {11, 14}, {12, 14}, {12, 15}, {13, 16}, {14, 17},
      {15, 17}, {16, 18}, {16, 19}, {17, 20}, {18, 21}, {19, 22}, {20, 23},
      {21, 24}, {22, 25}, {23, 26}, {24, 27}, {25, 28}, {26, 29}, {27, 30},
      {29, 32}, {30, 33}, {31, 34}, {35, 37}, {36, 38}, {37, 39}, {38, 40},
      {39, 41}, {40, 42}, {41, 43}, {42, 44}, {43, 45}, {44, 46}, {45, 47},
      {46, 48}, {47, 49}, {48, 50}, {49, 51}, {50, 51}, {51, 52}, {52, 53},
      {53, 54}, {54, 55}, {55, 56}, {56, 57}, {57, 58}, {58, 59}, {59, 60}};
  s.forbidden = {{4, 6},   {4, 5},   {3, 5},   {2, 7},   {1, 7},   {1, 6},
                 {7, 9},   {7, 8},   {6, 8},   {5, 10},  {10, 12}, {10, 11},
                 {9, 11},  {13, 15}, {13, 14}, {11, 15}, {16, 17}, {19, 20},
                 {18, 20}, {22, 23}, {21, 23}, {25, 26}, {24, 26}, {8, 13}};
  // Decision order: highest lower ranks first (c1..c37), then the covers
  // between the two-element ranks above (w1..w14).
  s.undecided = {
      {32, 35}, {32, 36}, {33, 35}, {33, 36}, {34, 35}, {34, 36},  // c1..c6
      {29, 33}, {29, 34}, {30, 32}, {30, 34}, {31, 32}, {31, 33},  // c7..c12
      {26, 30}, {26, 31}, {27, 29}, {27, 31}, {28, 29}, {28, 30},
      {28, 31},                                                    // c13..c19
      {23, 27}, {23, 28}, {24, 28}, {25, 27},                      // c20..c23
      {20, 24}, {20, 25}, {21, 25}, {22, 24},                      // c24..c27
      {17, 21}, {17, 22}, {18, 22}, {19, 21},                      // c28..c31
      {14, 18}, {14, 19}, {15, 18}, {15, 19},                      // c32..c35
      {11, 16}, {12, 16},                                          // c36..c37
      {35, 38}, {36, 37}, {37, 40}, {38, 39}, {39, 42}, {40, 41},
      {41, 44}, {42, 43}, {43, 46}, {44, 45}, {45, 48}, {46, 47},
      {47, 50}, {48, 49}};  // w1..w14
  return s;
}

// ---------------------------------------------------------------------------
// Upper parts

namespace {

constexpr int kLowerVars = 37;
constexpr int kUpperVars = 14;

// Certified orbit lengths of the H4 root poset; any other certified length
// rules a completion out.
constexpr int kH4OrbitLengths[] = {2, 3, 5, 30};

bool h4_orbit_length_ok(int len) {
  return std::find(std::begin(kH4OrbitLengths), std::end(kH4OrbitLengths),
                   len) != std::end(kH4OrbitLengths);
}

}  // namespace

std::vector<UpperPartRecord> enumerate_upper_parts(const PartialPoset& skeleton) {
  // Relabel elements 35..60 to 1..26 and ranks 12..29 to 1..18.
  const int n = 26, shift = 34;
  std::vector<int> rank(n);
  for (int e = 1; e <= n; ++e) rank[e - 1] = skeleton.ranks[e + shift - 1] - 11;
  std::vector<Mask> base(n, 0);
  for (auto [x, y] : skeleton.required)
    if (x > shift) base[y - shift - 1] |= bit(x - shift);
  std::vector<std::pair<int, int>> vars;
  for (int i = kLowerVars; i < kLowerVars + kUpperVars; ++i) {
    auto [x, y] = skeleton.undecided[i];
    vars.push_back({x - shift, y - shift});
  }

  std::vector<UpperPartRecord> records;
  for (Mask chosen = 0; chosen < (Mask{1} << kUpperVars); ++chosen) {
    std::vector<Mask> covers = base;
    for (int i = 0; i < kUpperVars; ++i)
      if (chosen >> i & 1) covers[vars[i].second - 1] |= bit(vars[i].first);
    GradedPoset p = build_from_reduced(n, covers, rank);

    // A Panyushev step is decided here as soon as the ideal contains both
    // bottom elements (35 and 36): everything below them is then inside the
    // ideal of any completion, so the complement lives in the upper part.
    std::vector<Mask> states;
    long long a2 = 0;
    for_each_antichain(p, [&](Mask a) {
      if (popcount(a) == 2) ++a2;
      Mask ideal = a;
      for (Mask m = a; m;) {
        const int x = first_element(m);
        m &= m - 1;
        ideal |= p.below_of(x);
      }
      if ((ideal & 0b11) == 0b11) states.push_back(a);
    });
    std::sort(states.begin(), states.end());
    const bool ok = certified_cycles(
        p, states, [&](int len, long long) { return h4_orbit_length_ok(len); });
    if (!ok) continue;

    UpperPartRecord rec;
    rec.chosen = chosen;
    rec.upper_poset = std::move(p);
    rec.a2 = a2;
    for (int y = 3; y <= n; ++y) {
      if (!(rec.upper_poset.below_of(y) & bit(1))) ++rec.g35;
      if (!(rec.upper_poset.below_of(y) & bit(2))) ++rec.g36;
    }
    records.push_back(std::move(rec));
  }
  return records;
}

// ---------------------------------------------------------------------------
// Rank configurations

std::vector<RankConfiguration> rank_configurations(int lower_size, int upper_size) {
  return rank_configurations(
      lower_size, upper_size, [](int, int s) { return s <= 3; }, false);
}

std::vector<RankConfiguration> rank_configurations(int lower_size, int upper_size,
                                                   const WindowAntichainRule& allowed,
                                                   bool lower_is_minimals) {
  if (lower_size < 1 || lower_size > 10 || upper_size < 1 || upper_size > 10)
    throw search_error("rank_configurations: sizes out of range");
  const Mask full = full_mask(lower_size);

  auto window_ok = [&](const std::vector<Mask>& covers) {
    // Enumerate subsets A of lower and B of upper vertices; A u B is an
    // antichain iff no member of B covers a member of A.
    for (Mask a = 0; a <= full; ++a) {
      for (Mask b = 0; b < (Mask{1} << upper_size); ++b) {
        const int s = popcount(a) + popcount(b);
        if (s < 2) continue;
        Mask covered = 0;
        for (int j = 0; j < upper_size; ++j)
          if (b >> j & 1) covered |= covers[j];
        if (covered & a) continue;
        const int k = lower_is_minimals ? popcount(a) : 0;
        if (!allowed(k, s)) return false;
      }
    }
    return true;
  };

  std::vector<RankConfiguration> out;
  std::vector<Mask> covers(upper_size);
  auto rec = [&](auto&& self, int j, Mask lo, Mask used) -> void {
    if (j == upper_size) {
      if (used == full && window_ok(covers)) {
        RankConfiguration c;
        c.lower_size = lower_size;
        c.upper_size = upper_size;
        c.upper_covers = covers;
        out.push_back(std::move(c));
      }
      return;
    }
    // Ascending masks per vertex keep the tuple canonical under upper
    // permutations; every vertex must cover something.
    for (Mask m = lo; m <= full; ++m) {
      if (!m) continue;
      covers[j] = m;
      self(self, j + 1, m, used | m);
    }
  };
  rec(rec, 0, 1, 0);
  return out;
}

// ---------------------------------------------------------------------------
// Algorithm 1: the two-phase H4 search

namespace {

struct V1Engine {
  const PartialPoset& skeleton;
  const std::vector<UpperPartRecord>& records;
  const RootSystemProfile& profile;
  const SearchOptions& opts;
  SharedCounters& counters;

  std::vector<Mask> below, above, covers;  // over elements 1..36
  std::vector<int> rank36;
  std::vector<char> chosen;
  std::vector<long long> bounds;
  OrbitRules orbit;
  long long join_target = 0;
  bool prune = true;
  long long leaves = 0;
  std::vector<GradedPoset> found;

  explicit V1Engine(const PartialPoset& sk, const std::vector<UpperPartRecord>& rec,
                    const RootSystemProfile& prof, const SearchOptions& o,
                    SharedCounters& ctr)
      : skeleton(sk), records(rec), profile(prof), opts(o), counters(ctr) {
    below.assign(36, 0);
    above.assign(36, 0);
    covers.assign(36, 0);
    rank36.assign(skeleton.ranks.begin(), skeleton.ranks.begin() + 36);
    chosen.assign(kLowerVars, 0);
    bounds = antichain_bounds(profile);
    orbit = make_orbit_rules(profile, opts.filters);
    // Joined pairs across the cut plus pairs inside each part must add up to
    // the profile's antichain-pair count; the bottom pair of the upper part
    // is counted on both sides, hence the +1.
    join_target = profile.h_triangle.at(0, 2) + 1;
    prune = !opts.disable_pruning;
  }

  void add_cover(int x, int y) {
    const Mask add = (below[x - 1] | bit(x)) & ~below[y - 1];
    const Mask ups = above[y - 1] | bit(y);
    for (Mask m = ups; m;) {
      const int z = first_element(m);
      m &= m - 1;
      below[z - 1] |= add;
    }
    for (Mask m = add; m;) {
      const int w = first_element(m);
      m &= m - 1;
      above[w - 1] |= ups;
    }
    covers[y - 1] |= bit(x);
  }

  bool comparable(int x, int y) const {
    return (below[y - 1] & bit(x)) || (below[x - 1] & bit(y));
  }

  bool has_four_antichain(std::initializer_list<int> elems) const {
    std::vector<int> v(elems);
    const int k = static_cast<int>(v.size());
    for (int mask = 0; mask < (1 << k); ++mask) {
      if (std::popcount(static_cast<unsigned>(mask)) != 4) continue;
      bool anti = true;
      for (int i = 0; i < k && anti; ++i)
        for (int j = i + 1; j < k && anti; ++j)
          if ((mask >> i & 1) && (mask >> j & 1) && comparable(v[i], v[j]))
            anti = false;
      if (anti) return true;
    }
    return false;
  }

  // Checkpoints, placed at the earliest variable index where their data is
  // complete.  `p` is the next variable to assign, 1-based.
  bool checkpoint(int p) {
    if (p == 7) {
      // 35 and 36 each cover something; 32, 33, 34 are each covered.
      if (!(chosen[0] || chosen[2] || chosen[4])) return false;
      if (!(chosen[1] || chosen[3] || chosen[5])) return false;
      if (!(chosen[0] || chosen[1])) return false;
      if (!(chosen[2] || chosen[3])) return false;
      if (!(chosen[4] || chosen[5])) return false;
    } else if (p == 20) {
      if (!(chosen[14] || chosen[16])) return false;  // 27<29 or 28<29
      if (!(chosen[15] || chosen[18])) return false;  // 27<31 or 28<31
      if (prune && has_four_antichain({26, 27, 28, 29, 30, 31})) return false;
    } else if (p == 36) {
      if (prune && !comparable(14, 18) && !comparable(14, 19) &&
          !comparable(15, 18) && !comparable(15, 19))
        return false;  // {14,15,18,19} must not be an antichain
    }
    return true;
  }

  void leaf() {
    ++leaves;
    GradedPoset lower = build_from_reduced(36, covers, rank36);

    long long b2 = 0;
    if (prune) {
      const Mask pair35 = bit(35) | bit(36);
      std::vector<Mask> states;
      long long three = 0;
      const long long cap3 = bounds.size() > 3 ? bounds[3] : 0;
      bool ok = true;
      for_each_antichain(lower, [&](Mask a) {
        const int s = popcount(a);
        if (s == 3 && ++three > cap3) ok = false;
        if (!(a & pair35)) states.push_back(a);
      });
      if (!ok) return;
      std::sort(states.begin(), states.end());
      if (!orbit.admit(states, lower)) return;
    }
    for (int x = 5; x <= 36; ++x)
      for (int y = x + 1; y <= 36; ++y)
        if (!(below[y - 1] & bit(x)) && !(below[x - 1] & bit(y))) ++b2;
    int l35 = 0, l36 = 0;
    for (int x = 5; x <= 34; ++x) {
      if (!(below[34] & bit(x))) ++l35;
      if (!(below[35] & bit(x))) ++l36;
    }

    for (const auto& rec : records) {
      if (rec.a2 + b2 + l35 * rec.g36 + l36 * rec.g35 != join_target) continue;
      // Join: lower covers as decided, upper covers shifted back to 35..60.
      std::vector<Mask> covers60(60, 0);
      for (int i = 0; i < 36; ++i) covers60[i] = covers[i];
      for (int u = 3; u <= 26; ++u)
        covers60[u + 33] = rec.upper_poset.covers_of(u) << 34;
      GradedPoset joined = build_from_reduced(60, covers60, skeleton.ranks);
      if (!check_properties(joined, profile, opts.filters).all_pass()) continue;
      if (!opts.genfun_targets.empty()) {
        const auto g = ideal_size_genfun(joined);
        if (std::none_of(opts.genfun_targets.begin(), opts.genfun_targets.end(),
                         [&](const auto& t) { return g == t; }))
          continue;
      }
      found.push_back(std::move(joined));
    }
  }

  void descend(int p, const std::vector<int>& prefix) {
    if (!counters.tick()) return;
    if (!checkpoint(p)) return;
    if (p == kLowerVars + 1) {
      leaf();
      return;
    }
    const auto [x, y] = skeleton.undecided[p - 1];
    const bool forced = p <= static_cast<int>(prefix.size());
    for (int b = 0; b <= 1; ++b) {
      if (forced && b != prefix[p - 1]) continue;
      chosen[p - 1] = static_cast<char>(b);
      if (b == 0) {
        descend(p + 1, prefix);
      } else {
        const auto saved_below = below;
        const auto saved_above = above;
        const Mask saved_cover = covers[y - 1];
        add_cover(x, y);
        descend(p + 1, prefix);
        below = saved_below;
        above = saved_above;
        covers[y - 1] = saved_cover;
      }
    }
    chosen[p - 1] = 0;
  }
};

// Initialize a V1Engine's state from the skeleton's required lower covers.
void seed_lower_required(V1Engine& eng) {
  for (auto [x, y] : eng.skeleton.required)
    if (y <= 36) eng.add_cover(x, y);
}

}  // namespace

std::vector<WorkUnit> split_work_v1(const PartialPoset& skeleton, int prefix_depth) {
  if (prefix_depth < 0 || prefix_depth > kLowerVars)
    throw search_error("split_work_v1: bad prefix depth");
  static const RootSystemProfile dummy = [] {
    RootSystemProfile p;  // checkpoints below the leaf are profile-free
    p.n = 4;
    return p;
  }();
  static const std::vector<UpperPartRecord> no_records;
  SearchOptions opts;
  opts.disable_pruning = true;
  SharedCounters ctr;
  V1Engine eng(skeleton, no_records, dummy, opts, ctr);
  seed_lower_required(eng);

  std::vector<WorkUnit> units;
  std::vector<int> assignment;
  auto rec = [&](auto&& self, int p) -> void {
    if (!eng.checkpoint(p)) return;
    if (p == prefix_depth + 1) {
      units.push_back({assignment});
      return;
    }
    const auto [x, y] = skeleton.undecided[p - 1];
    for (int b = 0; b <= 1; ++b) {
      eng.chosen[p - 1] = static_cast<char>(b);
      assignment.push_back(b);
      if (b == 0) {
        self(self, p + 1);
      } else {
        const auto sb = eng.below;
        const auto sa = eng.above;
        const Mask sc = eng.covers[y - 1];
        eng.add_cover(x, y);
        self(self, p + 1);
        eng.below = sb;
        eng.above = sa;
        eng.covers[y - 1] = sc;
      }
      assignment.pop_back();
      eng.chosen[p - 1] = 0;
    }
  };
  rec(rec, 1);
  return units;
}

SearchResult search_v1(const PartialPoset& skeleton,
                       const std::vector<UpperPartRecord>& upper_records,
                       const RootSystemProfile& profile, const SearchOptions& options) {
  if (!has_property(options.filters, Property::P4))
    throw search_error("search_v1 needs Property 4 among the filters");
  SearchResult result;
  SharedCounters counters;
  counters.limit = options.node_limit;

  std::vector<WorkUnit> units;
  if (options.unit) {
    if (static_cast<int>(options.unit->prefix.size()) > kLowerVars)
      throw search_error("search_v1: unit prefix too long");
    units.push_back(*options.unit);
  } else {
    const int depth = options.seed_prefix_depth >= 0 ? options.seed_prefix_depth : 6;
    units = split_work_v1(skeleton, depth);
  }
  result.units = static_cast<int>(units.size());

  struct Outcome {
    std::vector<GradedPoset> found;
    long long leaves = 0;
  };
  std::vector<Outcome> outcomes(units.size());
  std::atomic<size_t> next{0};
  std::mutex progress_mutex;

  auto run_unit = [&](size_t u) {
    V1Engine eng(skeleton, upper_records, profile, options, counters);
    seed_lower_required(eng);
    eng.descend(1, units[u].prefix);
    outcomes[u].found = std::move(eng.found);
    outcomes[u].leaves = eng.leaves;
    if (options.progress) {
      std::lock_guard<std::mutex> lock(progress_mutex);
      std::ostringstream msg;
      msg << "v1 unit " << u + 1 << "/" << units.size() << " done, nodes="
          << counters.nodes.load() << ", found=" << outcomes[u].found.size();
      options.progress(msg.str());
    }
  };

  const int workers = std::max(1, options.workers);
  if (workers == 1) {
    for (size_t u = 0; u < units.size(); ++u) run_unit(u);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (size_t u; (u = next.fetch_add(1)) < units.size();) run_unit(u);
      });
    for (auto& t : pool) t.join();
  }

  for (auto& o : outcomes) {
    for (auto& p : o.found) {
      result.posets.push_back(std::move(p));
      result.matched_target.push_back(-1);
    }
    result.leaves += o.leaves;
  }
  result.nodes = counters.nodes.load();
  result.complete = !counters.aborted.load();
  finalize_results(result);
  return result;
}

// ---------------------------------------------------------------------------
// Algorithm 2: rank-by-rank search from the profile

namespace {

// Reverses the order: label n+1-x keeps labels sorted by rank, and every
// cover pair flips.  Covers still join consecutive ranks, so the reduced
// builder applies.
GradedPoset dual_poset_of(const GradedPoset& p) {
  const int n = p.size();
  const int top = p.rank_of(n);
  std::vector<Mask> covers(n, 0);
  std::vector<int> rank(n, 0);
  for (int x = 1; x <= n; ++x) rank[n - x] = top + 1 - p.rank_of(x);
  for (int y = 1; y <= n; ++y) {
    for (Mask m = p.covers_of(y); m;) {
      const int x = first_element(m);
      m &= m - 1;
      covers[n - x] |= Mask{1} << (n - y);
    }
  }
  return build_from_reduced(n, covers, rank);
}

struct V2Engine {
  const RootSystemProfile& profile;
  const SearchOptions& opts;
  SharedCounters& counters;

  std::vector<int> rank_sizes;
  int d = 0;
  bool dual = false;  // build the rank-reversed poset, un-dualize at leaves
  Mask simples = 0;
  std::vector<long long> bounds;
  long long simple2_target = 0, simple3_target = 0;
  bool p4_active = false;
  OrbitRules orbit;
  std::vector<UnivariatePolynomial> targets;
  std::vector<UnivariatePolynomial> final_targets;  // original orientation
  bool report_match = false;  // targets came from options, report their index
  bool prune = true;

  std::vector<Mask> covers;
  std::vector<int> rank;
  long long leaves = 0;
  std::vector<GradedPoset> found;
  std::vector<int> found_match;

  // Configurations per window, cached.  Mode 0 is a generic window, 1 the
  // window above the simple roots, 2 the top window of a dual build.
  std::map<std::tuple<int, int, int>, std::vector<RankConfiguration>> config_cache;

  V2Engine(const RootSystemProfile& prof, const SearchOptions& o, SharedCounters& ctr,
           bool dual_mode = false)
      : profile(prof), opts(o), counters(ctr), dual(dual_mode) {
    rank_sizes = profile.expected_rank_vector;
    if (rank_sizes.empty()) throw search_error("search_v2: profile has no rank vector");
    d = static_cast<int>(rank_sizes.size());
    bounds = antichain_bounds(profile);
    p4_active = has_property(opts.filters, Property::P4);
    for (const auto& [km, c] : profile.h_triangle.counts) {
      if (km.first >= 1 && km.second == 2) simple2_target += c;
      if (km.first >= 1 && km.second == 3) simple3_target += c;
    }
    orbit = make_orbit_rules(profile, opts.filters);
    prune = !opts.disable_pruning;
    if (!opts.genfun_targets.empty()) {
      targets = opts.genfun_targets;
      report_match = true;
    } else if (has_property(opts.filters, Property::P6)) {
      targets = {eval_t1(profile.qt_catalan())};
    }
    if (targets.size() > 256) throw search_error("search_v2: too many genfun targets");
    final_targets = targets;
    if (dual) {
      std::reverse(rank_sizes.begin(), rank_sizes.end());
      const int n =
          std::accumulate(rank_sizes.begin(), rank_sizes.end(), 0);
      for (auto& t : targets) t = reverse_target(t, n);
    }
    simples = full_mask(rank_sizes[0]);
  }

  const std::vector<RankConfiguration>& configs(int window) {
    const int l = rank_sizes[window - 1], u = rank_sizes[window];
    const int mode = dual ? (window == d - 1 ? 2 : 0) : (window == 1 ? 1 : 0);
    auto key = std::make_tuple(l, u, mode);
    auto it = config_cache.find(key);
    if (it != config_cache.end()) return it->second;
    WindowAntichainRule rule;
    if (p4_active && prune && mode != 2) {
      HTriangle tri = profile.h_triangle;
      rule = [tri](int k, int s) { return s == 1 || tri.at(k, s) > 0; };
    } else if (p4_active && prune) {
      // The top dual window holds the simple roots of the original poset, so
      // only the per-size antichain totals apply.
      std::vector<long long> cols = bounds;
      rule = [cols](int, int s) {
        return s == 1 || (s < static_cast<int>(cols.size()) && cols[s] > 0);
      };
    } else {
      rule = [](int, int) { return true; };
    }
    return config_cache.emplace(key, rank_configurations(l, u, rule, mode == 1))
        .first->second;
  }

  // Node admission: antichain bounds, the one-shot simple-antichain counts,
  // certified orbits, live genfun targets.  `r` ranks are built.  A dual
  // build keeps the size bounds (antichains are self-dual) but has neither
  // the simple roots nor the orbit structure of the original at its bottom,
  // so those two checks wait for the full poset.
  bool admit(const GradedPoset& p, int r, bool& simple_done, LiveTargets& live) {
    const bool want_orbit =
        prune && !dual && (orbit.use_multiset || orbit.use_average);
    const bool want_ideals = !targets.empty() && prune;
    const Mask top =
        full_mask(p.size()) & ~full_mask(p.size() - rank_sizes[r - 1]);
    AntichainScan scan;
    if (prune && p4_active) {
      scan = scan_antichains(p, bounds, true, dual ? Mask{0} : simples, top,
                             want_orbit, want_ideals);
      if (!scan.within_bounds) return false;
      if (!dual && !simple_done && r >= 2) {
        bool all_above = true;
        for (Mask m = top; m && all_above;) {
          const int x = first_element(m);
          m &= m - 1;
          if ((p.below_of(x) & simples) != simples) all_above = false;
        }
        if (all_above) {
          // No later element can add an antichain through a simple, so the
          // counts are final.
          if (scan.marked2 != simple2_target || scan.marked3 != simple3_target)
            return false;
          simple_done = true;
        }
      }
    } else if (want_orbit) {
      scan.collected.clear();
      for_each_antichain(p, [&](Mask a) {
        if (!(a & top)) scan.collected.push_back(a);
      });
      std::sort(scan.collected.begin(), scan.collected.end());
    }
    if (want_orbit && !orbit.admit(scan.collected, p)) return false;
    if (want_ideals) {
      if (scan.ideal_sizes.empty()) {
        const auto g = ideal_size_genfun(p);
        scan.ideal_sizes.assign(g.degree() + 1, 0);
        for (int s = 0; s <= g.degree(); ++s)
          scan.ideal_sizes[s] = static_cast<long long>(g.coeff(s));
      }
      filter_targets(scan.ideal_sizes, r == d ? p.size() : r,
                     r < d ? rank_sizes[r] : 0, targets, live);
      if (live.empty()) return false;
    }
    return true;
  }

  void leaf(const GradedPoset& p, const LiveTargets& live) {
    ++leaves;
    const GradedPoset out = dual ? dual_poset_of(p) : p;
    if (!check_properties(out, profile, opts.filters).all_pass()) return;
    int match = -1;
    if (!final_targets.empty()) {
      const auto g = ideal_size_genfun(out);
      for (int i = 0; i < static_cast<int>(final_targets.size()); ++i)
        if (live.test(i) && g == final_targets[i]) {
          match = i;
          break;
        }
      if (match < 0) return;
    }
    found.push_back(out);
    found_match.push_back(report_match ? match : -1);
  }

  void descend(int r, bool simple_done, LiveTargets live,
               const std::vector<int>& prefix, int prefix_base) {
    if (!counters.tick()) return;
    const int m_in = static_cast<int>(rank.size());
    GradedPoset p = build_from_reduced(m_in, covers, rank);
    if (!admit(p, r, simple_done, live)) return;
    // A run of forced windows (a single admissible configuration each) is
    // applied in one step; one admission check at its end prunes as well as
    // one per rank and saves the intermediate scans.
    int forced = 0;
    while (r < d && configs(r).size() == 1) {
      const auto& cfg = configs(r)[0];
      const int m = static_cast<int>(rank.size());
      const int l = rank_sizes[r - 1], u = rank_sizes[r];
      for (int j = 0; j < u; ++j) {
        covers.push_back(cfg.upper_covers[j] << (m - l));
        rank.push_back(r + 1);
      }
      ++r;
      ++forced;
    }
    if (forced) {
      p = build_from_reduced(static_cast<int>(rank.size()), covers, rank);
      if (!admit(p, r, simple_done, live)) {
        covers.resize(m_in);
        rank.resize(m_in);
        return;
      }
    }
    if (r == d) {
      leaf(p, live);
      covers.resize(m_in);
      rank.resize(m_in);
      return;
    }
    const int window = r;  // connects rank r to rank r+1
    const auto& cfgs = configs(window);
    const int pi = window - 1 - prefix_base;
    const int m = static_cast<int>(rank.size());
    const int l = rank_sizes[r - 1], u = rank_sizes[r];
    for (int ci = 0; ci < static_cast<int>(cfgs.size()); ++ci) {
      if (pi >= 0 && pi < static_cast<int>(prefix.size()) && ci != prefix[pi])
        continue;
      const auto& cfg = cfgs[ci];
      for (int j = 0; j < u; ++j) {
        covers.push_back(cfg.upper_covers[j] << (m - l));
        rank.push_back(r + 1);
      }
      descend(r + 1, simple_done, live, prefix, prefix_base);
      covers.resize(m);
      rank.resize(m);
    }
    covers.resize(m_in);
    rank.resize(m_in);
  }
};

// Builds the engine start state: either the bare rank-1 antichain or the
// caller's seed.  Returns the number of ranks already present.
int v2_start(V2Engine& eng, const std::optional<GradedPoset>& seed) {
  if (!seed) {
    for (int i = 0; i < eng.rank_sizes[0]; ++i) {
      eng.covers.push_back(0);
      eng.rank.push_back(1);
    }
    return 1;
  }
  const auto rv = rank_vector(*seed);
  if (static_cast<int>(rv.size()) > eng.d ||
      !std::equal(rv.begin(), rv.end(), eng.rank_sizes.begin()))
    throw search_error("search_v2: seed ranks disagree with the profile");
  for (int x = 1; x <= seed->size(); ++x) {
    eng.covers.push_back(seed->covers_of(x));
    eng.rank.push_back(seed->rank_of(x));
  }
  return static_cast<int>(rv.size());
}

std::vector<WorkUnit> split_units_v2(const RootSystemProfile& profile,
                                     const SearchOptions& options, int depth,
                                     const std::optional<GradedPoset>& seed) {
  SharedCounters ctr;
  V2Engine eng(profile, options, ctr);
  const int r0 = v2_start(eng, seed);
  depth = std::min(depth, eng.d - r0);

  std::vector<WorkUnit> units;
  std::vector<int> assignment;
  LiveTargets live = LiveTargets::all(static_cast<int>(eng.targets.size()));
  auto rec = [&](auto&& self, int r, bool simple_done, LiveTargets lv) -> void {
    const int m = static_cast<int>(eng.rank.size());
    GradedPoset p = build_from_reduced(m, eng.covers, eng.rank);
    if (!eng.admit(p, r, simple_done, lv)) return;
    if (r == r0 + depth || r == eng.d) {
      units.push_back({assignment});
      return;
    }
    const auto& cfgs = eng.configs(r);
    const int l = eng.rank_sizes[r - 1], u = eng.rank_sizes[r];
    for (int ci = 0; ci < static_cast<int>(cfgs.size()); ++ci) {
      for (int j = 0; j < u; ++j) {
        eng.covers.push_back(cfgs[ci].upper_covers[j] << (m - l));
        eng.rank.push_back(r + 1);
      }
      assignment.push_back(ci);
      self(self, r + 1, simple_done, lv);
      assignment.pop_back();
      eng.covers.resize(m);
      eng.rank.resize(m);
    }
  };
  rec(rec, r0, false, live);
  return units;
}

}  // namespace

std::vector<WorkUnit> split_work_v2(const RootSystemProfile& profile, int prefix_depth) {
  if (prefix_depth < 0) throw search_error("split_work_v2: bad prefix depth");
  SearchOptions opts;
  opts.filters = {Property::P1, Property::P2, Property::P3, Property::P4};
  return split_units_v2(profile, opts, prefix_depth, std::nullopt);
}

SearchResult search_v2(const RootSystemProfile& profile, const SearchOptions& options) {
  SearchResult result;
  SharedCounters counters;
  counters.limit = options.node_limit;

  // Generating-function targets carry their scarce counts at the large-ideal
  // end (the top of the poset is nearly a chain), where a bottom-up build
  // sees them only at full depth.  Building rank-reversed puts them at the
  // bottom, so the per-rank equality check prunes immediately; leaves are
  // un-dualized and fully verified.  Explicit units and seeds describe
  // bottom-up prefixes and keep the original direction.
  const bool dual = !options.genfun_targets.empty() ||
                    has_property(options.filters, Property::P6);
  const bool run_dual = dual && !options.disable_pruning && !options.unit &&
                        !options.seed;

  std::vector<WorkUnit> units;
  if (run_dual) {
    units.push_back({});
  } else if (options.unit) {
    units.push_back(*options.unit);
  } else {
    const int depth = options.seed_prefix_depth >= 0 ? options.seed_prefix_depth : 2;
    units = split_units_v2(profile, options, depth, options.seed);
  }
  result.units = static_cast<int>(units.size());

  struct Outcome {
    std::vector<GradedPoset> found;
    std::vector<int> match;
    long long leaves = 0;
  };
  std::vector<Outcome> outcomes(units.size());
  std::atomic<size_t> next{0};
  std::mutex progress_mutex;

  auto run_unit = [&](size_t u) {
    V2Engine eng(profile, options, counters, run_dual);
    const int r0 = v2_start(eng, options.seed);
    LiveTargets live = LiveTargets::all(static_cast<int>(eng.targets.size()));
    eng.descend(r0, false, live, units[u].prefix, r0 - 1);
    outcomes[u].found = std::move(eng.found);
    outcomes[u].match = std::move(eng.found_match);
    outcomes[u].leaves = eng.leaves;
    if (options.progress) {
      std::lock_guard<std::mutex> lock(progress_mutex);
      std::ostringstream msg;
      msg << "v2 unit " << u + 1 << "/" << units.size() << " done, nodes="
          << counters.nodes.load() << ", found=" << outcomes[u].found.size();
      options.progress(msg.str());
    }
  };

  const int workers = std::max(1, options.workers);
  if (workers == 1) {
    for (size_t u = 0; u < units.size(); ++u) run_unit(u);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (size_t u; (u = next.fetch_add(1)) < units.size();) run_unit(u);
      });
    for (auto& t : pool) t.join();
  }

  for (auto& o : outcomes) {
    for (size_t i = 0; i < o.found.size(); ++i) {
      result.posets.push_back(std::move(o.found[i]));
      result.matched_target.push_back(o.match[i]);
    }
    result.leaves += o.leaves;
  }
  result.nodes = counters.nodes.load();
  result.complete = !counters.aborted.load();
  finalize_results(result);
  return result;
}

}  // namespace rootposet
