#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rootposet/invariants.hpp"
#include "rootposet/poset.hpp"
#include "rootposet/qt_poly.hpp"

namespace rootposet {

struct search_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A graded poset with some covers decided (present or absent) and the rest
// open, rank assignment fixed in advance.
struct PartialPoset {
  int n = 0;
  std::vector<int> ranks;  // ranks[i] is the rank of element i+1
  CoverList required;
  CoverList forbidden;
  CoverList undecided;  // decision order: c1..c37 below, then the 14 above

  int rank_of(int x) const { return ranks[x - 1]; }
};

// The H4 skeleton: Fig. 4 solid/wavy covers plus 9<13 required, 8<13
// forbidden.  37 undecided covers among elements 1..36, 14 among 35..60.
PartialPoset h4_skeleton();

// One of the 2^14 completions of the covers above rank 12 that survives
// the certified-orbit filter.
struct UpperPartRecord {
  Mask chosen = 0;         // subset of the 14 undecided upper covers, by index
  GradedPoset upper_poset;  // elements 35..60 relabeled 1..26
  long long a2 = 0;         // 2-antichains inside the upper part
  int g35 = 0;              // elements of 35..60 not above-or-equal 35
  int g36 = 0;
};

std::vector<UpperPartRecord> enumerate_upper_parts(const PartialPoset& skeleton);

// Bipartite cover pattern between consecutive ranks, lower vertices labeled,
// canonical under permutations of the upper vertices.
struct RankConfiguration {
  int lower_size = 0;
  int upper_size = 0;
  std::vector<Mask> upper_covers;  // per upper vertex: mask of lower vertices, ascending

  friend bool operator==(const RankConfiguration&, const RankConfiguration&) = default;
};

// Antichain admissibility inside a two-rank window: a set with s elements,
// k of them minimal elements of the whole poset, is allowed iff the
// profile's H-triangle has n_{k,s} > 0 (singletons always allowed).
using WindowAntichainRule = std::function<bool(int k, int s)>;

// The paper's counts (51/13/4/1) use the interior H4 rule: sizes up to 3,
// no window 4-antichains.
std::vector<RankConfiguration> rank_configurations(int lower_size, int upper_size);

std::vector<RankConfiguration> rank_configurations(int lower_size, int upper_size,
                                                   const WindowAntichainRule& allowed,
                                                   bool lower_is_minimals);

// A fixed assignment of the first decision variables of a search:
// cover bits for the v1 recursion, configuration indices for v2.
struct WorkUnit {
  std::vector<int> prefix;
};

struct SearchOptions {
  std::vector<Property> filters;  // property selection for leaf verification
  int workers = 1;
  // Decision depth used to split into work units; -1 picks the engine default.
  int seed_prefix_depth = -1;
  bool disable_pruning = false;  // for soundness cross-checks on small types
  // When nonempty, Property 6 runs in multi-target mode: a leaf survives if
  // its ideal-size generating function equals any target.
  std::vector<UnivariatePolynomial> genfun_targets;
  std::optional<WorkUnit> unit;  // run only this unit
  // Optional seed for v2: start from this partial poset instead of the bare
  // antichain of simples.  Ranks must agree with the profile's rank vector.
  std::optional<GradedPoset> seed;
  std::function<void(const std::string&)> progress;
  long long node_limit = -1;  // abort knob for exploratory runs
};

struct SearchResult {
  std::vector<GradedPoset> posets;  // sorted by canonical form, deduplicated
  std::vector<int> matched_target;  // per poset, index into genfun_targets (or -1)
  long long nodes = 0;
  long long leaves = 0;
  int units = 1;
  bool complete = true;  // false when node_limit aborted the run
};

std::vector<WorkUnit> split_work_v1(const PartialPoset& skeleton, int prefix_depth);
std::vector<WorkUnit> split_work_v2(const RootSystemProfile& profile, int prefix_depth);

// Algorithm 1: the H4 cover-variable recursion over the skeleton's lower
// part, joined against precomputed upper parts.
SearchResult search_v1(const PartialPoset& skeleton,
                       const std::vector<UpperPartRecord>& upper_records,
                       const RootSystemProfile& profile, const SearchOptions& options);

// Algorithm 2: generic rank-by-rank recursion driven by the profile's rank
// vector and H-triangle.
SearchResult search_v2(const RootSystemProfile& profile, const SearchOptions& options);

}  // namespace rootposet
