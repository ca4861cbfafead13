#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rootposet {

// Element sets are bit masks over 1..n with element i stored at bit i-1.
// Everything here assumes n <= 64 (one machine word per set).
using Mask = std::uint64_t;

constexpr int max_elements = 64;

inline int popcount(Mask m) { return std::popcount(m); }

inline Mask bit(int element) { return Mask{1} << (element - 1); }

// Lowest set bit as a 1-based element id; m must be nonzero.
inline int first_element(Mask m) { return std::countr_zero(m) + 1; }

inline Mask full_mask(int n) { return n == 64 ? ~Mask{0} : (Mask{1} << n) - 1; }

struct poset_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Antichain {
  Mask members = 0;
  friend bool operator==(const Antichain&, const Antichain&) = default;
};

struct OrderIdeal {
  Mask members = 0;
  friend bool operator==(const OrderIdeal&, const OrderIdeal&) = default;
};

using CoverList = std::vector<std::pair<int, int>>;

// Immutable graded poset. Elements are 1..n, rank-sorted (rank(i) <= rank(j)
// whenever i < j); cover lists are kept transitively reduced.
class GradedPoset {
public:
  GradedPoset() = default;

  int size() const { return n_; }

  // Mask of elements covered by x (lower neighbors in the Hasse diagram).
  Mask covers_of(int x) const { return covers_[x - 1]; }
  // Mask of all elements strictly below x.
  Mask below_of(int x) const { return below_[x - 1]; }
  // Mask of all elements strictly above x.
  Mask above_of(int x) const { return above_[x - 1]; }
  int rank_of(int x) const { return rank_[x - 1]; }

  bool leq(int x, int y) const { return x == y || (below_[y - 1] & bit(x)); }

  CoverList cover_list() const;

  friend bool operator==(const GradedPoset&, const GradedPoset&) = default;

private:
  friend GradedPoset build_poset(int n, const CoverList& cover_list);
  friend GradedPoset build_from_reduced(int n, const std::vector<Mask>& covers,
                                        const std::vector<int>& rank);

  int n_ = 0;
  std::vector<Mask> covers_;
  std::vector<Mask> below_;
  std::vector<Mask> above_;
  std::vector<int> rank_;
};

// Builds a poset from an arbitrary acyclic relation given as (lower, upper)
// pairs. Computes the transitive closure, reduces to covering relations,
// assigns longest-path ranks (minimal elements get rank 1) and relabels the
// elements rank-sorted, stable by input id within a rank.
// Throws poset_error on cycles, out-of-range indices or n > 64.
GradedPoset build_poset(int n, const CoverList& cover_list);

// Trusted fast path used by the search: covers must already be transitively
// reduced, ranks consistent and labels rank-sorted. No validation.
GradedPoset build_from_reduced(int n, const std::vector<Mask>& covers,
                               const std::vector<int>& rank);

// True iff all inclusion-maximal chains have the same length; with
// longest-path ranks this is: every cover raises rank by exactly one and all
// maximal elements share one rank.
bool is_graded(const GradedPoset& p);

// rank_vector(p)[i-1] = number of elements of rank i.
std::vector<int> rank_vector(const GradedPoset& p);

Antichain minimals(const GradedPoset& p);
Antichain maximals(const GradedPoset& p);

// Antichain <-> order ideal bijection: ideal_of(A) is the downward closure of
// A, crown(I) = max(I). They are mutually inverse.
OrderIdeal ideal_of(const GradedPoset& p, const Antichain& a);
Antichain crown(const GradedPoset& p, const OrderIdeal& i);

bool is_antichain(const GradedPoset& p, Mask members);
bool is_order_ideal(const GradedPoset& p, Mask members);

// Calls visit(mask) once for every antichain of p (the empty one included) in
// increasing mask order.
template <typename Visit>
void for_each_antichain(const GradedPoset& p, Visit&& visit);

std::vector<Antichain> enumerate_antichains(const GradedPoset& p);
long long count_antichains(const GradedPoset& p);

// Mask of minimal elements below-or-equal x.
Mask support(const GradedPoset& p, int x);

// Induced subposet on {x : support(x) subset of s}; s must consist of minimal
// elements. Covers are recomputed from the induced order.
GradedPoset parabolic_subposet(const GradedPoset& p, Mask s);

// Induced subposet on an arbitrary subset of elements (order restriction,
// covers recomputed, labels rank-sorted).
GradedPoset induced_subposet(const GradedPoset& p, Mask keep);

GradedPoset delete_minimals(const GradedPoset& p);

GradedPoset disjoint_union(const GradedPoset& p, const GradedPoset& q);

// Label-invariant canonical cover list: the lexicographically smallest cover
// list over all rank-preserving relabelings. Two posets are isomorphic iff
// their canonical forms coincide.
CoverList canonical_form(const GradedPoset& p);

bool is_isomorphic(const GradedPoset& p, const GradedPoset& q);

// Poset text format: first line "n <count>", then one line "i j" per cover
// (i < j after rank-sorting), sorted lexicographically. The writer emits the
// transitive reduction; the reader accepts any acyclic relation.
std::string to_text(const GradedPoset& p);
GradedPoset poset_from_text(const std::string& text);
GradedPoset read_poset_file(const std::string& path);
void write_poset_file(const GradedPoset& p, const std::string& path);

// Preorder DFS choosing elements in increasing id, which yields the
// antichains in lexicographic order of their sorted element lists.
template <typename Visit>
void for_each_antichain(const GradedPoset& p, Visit&& visit) {
  auto rec = [&](auto&& self, Mask chosen, Mask candidates) -> void {
    visit(chosen);
    while (candidates) {
      const int x = first_element(candidates);
      candidates &= candidates - 1;
      self(self, chosen | bit(x),
           candidates & ~(p.below_of(x) | p.above_of(x)));
    }
  };
  rec(rec, Mask{0}, full_mask(p.size()));
}

}  // namespace rootposet
