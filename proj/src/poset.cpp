#include "rootposet/poset.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

namespace rootposet {

namespace {

// Closure/rank/relabel pipeline shared by build_poset and the induced-poset
// operations. Input: strict-order adjacency "lower -> set of uppers" as an
// arbitrary acyclic relation on 1..n.
struct RawRelation {
  int n;
  std::vector<Mask> above;  // above[i] = elements known greater than i+1
};

// Transitive closure in place; throws on cycles.
void close(RawRelation& r) {
  // Repeated squaring over the bit matrix is overkill at n <= 64; a simple
  // DFS-free iteration converges in at most n passes and each pass is cheap.
  bool changed = true;
  while (changed) {
    changed = false;
    for (int i = 0; i < r.n; ++i) {
      Mask acc = r.above[i];
      Mask todo = acc;
      while (todo) {
        const int j = std::countr_zero(todo);
        todo &= todo - 1;
        acc |= r.above[j];
      }
      if (acc != r.above[i]) {
        r.above[i] = acc;
        changed = true;
      }
    }
  }
  for (int i = 0; i < r.n; ++i)
    if (r.above[i] & (Mask{1} << i)) throw poset_error("cycle detected");
}

}  // namespace

GradedPoset build_poset(int n, const CoverList& cover_list) {
  if (n < 1 || n > max_elements)
    throw poset_error("element count must be in 1..64");
  RawRelation r{n, std::vector<Mask>(n, 0)};
  for (const auto& [lo, hi] : cover_list) {
    if (lo < 1 || lo > n || hi < 1 || hi > n || lo == hi)
      throw poset_error("cover index out of range");
    r.above[lo - 1] |= Mask{1} << (hi - 1);
  }
  close(r);

  // Longest-path ranks: rank = 1 + max rank over strictly smaller elements.
  std::vector<Mask> below(n, 0);
  for (int i = 0; i < n; ++i) {
    Mask m = r.above[i];
    while (m) {
      const int j = std::countr_zero(m);
      m &= m - 1;
      below[j] |= Mask{1} << i;
    }
  }
  std::vector<int> rank(n, 0);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return popcount(below[a]) < popcount(below[b]);
  });
  for (const int i : order) {
    int rk = 1;
    Mask m = below[i];
    while (m) {
      const int j = std::countr_zero(m);
      m &= m - 1;
      rk = std::max(rk, rank[j] + 1);
    }
    rank[i] = rk;
  }
  // |below| sorting is not a topological order in general, but below[j] of a
  // proper subset is always processed first since x < y implies
  // below(x) strictly inside below(y).

  // Relabel rank-sorted, stable by input id.
  std::vector<int> ids(n);
  std::iota(ids.begin(), ids.end(), 0);
  std::stable_sort(ids.begin(), ids.end(),
                   [&](int a, int b) { return rank[a] < rank[b]; });
  std::vector<int> new_of(n);
  for (int k = 0; k < n; ++k) new_of[ids[k]] = k;

  auto remap = [&](Mask m) {
    Mask out = 0;
    while (m) {
      const int j = std::countr_zero(m);
      m &= m - 1;
      out |= Mask{1} << new_of[j];
    }
    return out;
  };

  GradedPoset p;
  p.n_ = n;
  p.below_.resize(n);
  p.above_.resize(n);
  p.covers_.resize(n);
  p.rank_.resize(n);
  for (int k = 0; k < n; ++k) {
    const int i = ids[k];
    p.below_[k] = remap(below[i]);
    p.rank_[k] = rank[i];
  }
  for (int k = 0; k < n; ++k) {
    Mask m = p.below_[k];
    while (m) {
      const int j = std::countr_zero(m);
      m &= m - 1;
      p.above_[j] |= Mask{1} << k;
    }
  }
  // Transitive reduction: y covers x iff x < y and no z with x < z < y.
  for (int k = 0; k < n; ++k) {
    Mask cov = p.below_[k];
    Mask m = p.below_[k];
    while (m) {
      const int j = std::countr_zero(m);
      m &= m - 1;
      cov &= ~p.below_[j];
    }
    p.covers_[k] = cov;
  }
  return p;
}

GradedPoset build_from_reduced(int n, const std::vector<Mask>& covers,
                               const std::vector<int>& rank) {
  GradedPoset p;
  p.n_ = n;
  p.covers_ = covers;
  p.rank_ = rank;
  p.below_.assign(n, 0);
  p.above_.assign(n, 0);
  // Labels are rank-sorted, so a single ascending pass closes the order.
  for (int k = 0; k < n; ++k) {
    Mask m = covers[k];
    Mask acc = m;
    while (m) {
      const int j = std::countr_zero(m);
      m &= m - 1;
      acc |= p.below_[j];
    }
    p.below_[k] = acc;
    m = acc;
    while (m) {
      const int j = std::countr_zero(m);
      m &= m - 1;
      p.above_[j] |= Mask{1} << k;
    }
  }
  return p;
}

CoverList GradedPoset::cover_list() const {
  CoverList out;
  for (int y = 1; y <= n_; ++y) {
    Mask m = covers_of(y);
    while (m) {
      const int x = first_element(m);
      m &= m - 1;
      out.emplace_back(x, y);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool is_graded(const GradedPoset& p) {
  int top_rank = 0;
  for (int x = 1; x <= p.size(); ++x) {
    Mask m = p.covers_of(x);
    while (m) {
      const int y = first_element(m);
      m &= m - 1;
      if (p.rank_of(x) != p.rank_of(y) + 1) return false;
    }
    if (!p.above_of(x)) top_rank = std::max(top_rank, p.rank_of(x));
  }
  for (int x = 1; x <= p.size(); ++x)
    if (!p.above_of(x) && p.rank_of(x) != top_rank) return false;
  return true;
}

std::vector<int> rank_vector(const GradedPoset& p) {
  int h = 0;
  for (int x = 1; x <= p.size(); ++x) h = std::max(h, p.rank_of(x));
  std::vector<int> out(h, 0);
  for (int x = 1; x <= p.size(); ++x) ++out[p.rank_of(x) - 1];
  return out;
}

Antichain minimals(const GradedPoset& p) {
  Mask m = 0;
  for (int x = 1; x <= p.size(); ++x)
    if (!p.below_of(x)) m |= bit(x);
  return {m};
}

Antichain maximals(const GradedPoset& p) {
  Mask m = 0;
  for (int x = 1; x <= p.size(); ++x)
    if (!p.above_of(x)) m |= bit(x);
  return {m};
}

bool is_antichain(const GradedPoset& p, Mask members) {
  Mask m = members;
  while (m) {
    const int x = first_element(m);
    m &= m - 1;
    if ((p.below_of(x) | p.above_of(x)) & members) return false;
  }
  return true;
}

bool is_order_ideal(const GradedPoset& p, Mask members) {
  Mask m = members;
  while (m) {
    const int x = first_element(m);
    m &= m - 1;
    if (p.below_of(x) & ~members) return false;
  }
  return true;
}

OrderIdeal ideal_of(const GradedPoset& p, const Antichain& a) {
  if (!is_antichain(p, a.members)) throw poset_error("not an antichain");
  Mask out = a.members;
  Mask m = a.members;
  while (m) {
    const int x = first_element(m);
    m &= m - 1;
    out |= p.below_of(x);
  }
  return {out};
}

Antichain crown(const GradedPoset& p, const OrderIdeal& i) {
  if (!is_order_ideal(p, i.members)) throw poset_error("not an order ideal");
  Mask out = 0;
  Mask m = i.members;
  while (m) {
    const int x = first_element(m);
    m &= m - 1;
    if (!(p.above_of(x) & i.members)) out |= bit(x);
  }
  return {out};
}

std::vector<Antichain> enumerate_antichains(const GradedPoset& p) {
  std::vector<Antichain> out;
  for_each_antichain(p, [&](Mask m) { out.push_back({m}); });
  return out;
}

long long count_antichains(const GradedPoset& p) {
  long long c = 0;
  for_each_antichain(p, [&](Mask) { ++c; });
  return c;
}

Mask support(const GradedPoset& p, int x) {
  const Mask mins = minimals(p).members;
  return (p.below_of(x) | bit(x)) & mins;
}

GradedPoset induced_subposet(const GradedPoset& p, Mask keep) {
  std::vector<int> elems;
  Mask m = keep;
  while (m) {
    elems.push_back(first_element(m));
    m &= m - 1;
  }
  const int n = static_cast<int>(elems.size());
  if (n == 0) throw poset_error("empty subposet");
  std::vector<int> idx(p.size() + 1, 0);
  for (int k = 0; k < n; ++k) idx[elems[k]] = k + 1;
  CoverList rel;
  for (int k = 0; k < n; ++k) {
    Mask lower = p.below_of(elems[k]) & keep;
    while (lower) {
      const int x = first_element(lower);
      lower &= lower - 1;
      rel.emplace_back(idx[x], k + 1);
    }
  }
  return build_poset(n, rel);
}

GradedPoset parabolic_subposet(const GradedPoset& p, Mask s) {
  if (s & ~minimals(p).members)
    throw poset_error("support set contains a non-minimal element");
  Mask keep = 0;
  for (int x = 1; x <= p.size(); ++x)
    if ((support(p, x) & ~s) == 0) keep |= bit(x);
  return induced_subposet(p, keep);
}

GradedPoset delete_minimals(const GradedPoset& p) {
  return induced_subposet(p, full_mask(p.size()) & ~minimals(p).members);
}

GradedPoset disjoint_union(const GradedPoset& p, const GradedPoset& q) {
  const int n = p.size() + q.size();
  CoverList rel = p.cover_list();
  for (const auto& [lo, hi] : q.cover_list())
    rel.emplace_back(lo + p.size(), hi + p.size());
  return build_poset(n, rel);
}

namespace {

// Canonical labeling: backtracking over rank-preserving relabelings, one rank
// at a time bottom-up, minimizing the sequence of per-label lower-cover masks
// lexicographically. Exploration order is guided by an iterated neighbor-hash
// refinement (heuristic only; it never prunes), while the sound prune is the
// comparison against the best complete row sequence found so far plus a
// transposition-automorphism dedup among interchangeable elements.
struct Canonizer {
  const GradedPoset& p;
  std::vector<std::vector<int>> by_rank;  // rank -> elements
  std::vector<std::uint64_t> color;       // heuristic refinement class
  std::vector<Mask> upcovers;             // per element: elements covering it
  std::vector<Mask> best_rows;
  bool have_best = false;

  std::vector<int> cur_label;  // element -> assigned label, 0 = none
  std::vector<Mask> cur_rows;

  explicit Canonizer(const GradedPoset& poset) : p(poset) {
    const int n = p.size();
    upcovers.assign(n + 1, 0);
    for (int y = 1; y <= n; ++y) {
      Mask m = p.covers_of(y);
      while (m) {
        upcovers[first_element(m)] |= bit(y);
        m &= m - 1;
      }
    }
    refine();
  }

  void refine() {
    const int n = p.size();
    std::vector<std::uint64_t> c(n + 1, 0);
    for (int x = 1; x <= n; ++x)
      c[x] = (std::uint64_t(p.rank_of(x)) << 32) |
             (std::uint64_t(popcount(p.covers_of(x))) << 24) |
             (std::uint64_t(popcount(p.below_of(x))) << 12) |
             std::uint64_t(popcount(p.above_of(x)));
    for (int round = 0; round < 4; ++round) {
      std::vector<std::uint64_t> next(n + 1, 0);
      for (int x = 1; x <= n; ++x) {
        std::uint64_t h = c[x] * 0x9e3779b97f4a7c15ULL;
        std::vector<std::uint64_t> nb;
        for (Mask m = p.covers_of(x); m; m &= m - 1)
          nb.push_back(c[first_element(m)]);
        std::sort(nb.begin(), nb.end());
        for (auto v : nb) h = h * 1099511628211ULL + v;
        nb.clear();
        for (Mask m = upcovers[x]; m; m &= m - 1)
          nb.push_back(c[first_element(m)]);
        std::sort(nb.begin(), nb.end());
        h = h * 0x100000001b3ULL + 0x51ed270b;
        for (auto v : nb) h = h * 1099511628211ULL + v;
        next[x] = h;
      }
      c = next;
    }
    color = c;
    int max_rank = 0;
    for (int x = 1; x <= n; ++x) max_rank = std::max(max_rank, p.rank_of(x));
    by_rank.assign(max_rank + 1, {});
    for (int x = 1; x <= n; ++x) by_rank[p.rank_of(x)].push_back(x);
  }

  void run() {
    cur_label.assign(p.size() + 1, 0);
    cur_rows.clear();
    place_rank(1);
  }

  Mask remap_covers(int x) const {
    Mask out = 0;
    for (Mask m = p.covers_of(x); m; m &= m - 1)
      out |= Mask{1} << (cur_label[first_element(m)] - 1);
    return out;
  }

  // -1: cur_rows is lexicographically ahead of best, 0: equal so far, 1: worse.
  int compare_to_best() const {
    if (!have_best) return -1;
    for (size_t i = 0; i < cur_rows.size(); ++i) {
      if (cur_rows[i] < best_rows[i]) return -1;
      if (cur_rows[i] > best_rows[i]) return 1;
    }
    return 0;
  }

  void place_rank(int rank) {
    if (rank >= static_cast<int>(by_rank.size())) {
      if (compare_to_best() < 0) {
        best_rows = cur_rows;
        have_best = true;
      }
      return;
    }
    std::vector<int> perm(by_rank[rank]);
    std::sort(perm.begin(), perm.end(), [&](int a, int b) {
      const Mask ma = remap_covers(a), mb = remap_covers(b);
      if (ma != mb) return ma < mb;
      return color[a] != color[b] ? color[a] < color[b] : a < b;
    });
    try_orders(perm, 0, rank);
  }

  void try_orders(std::vector<int>& perm, int pos, int rank) {
    const int k = static_cast<int>(perm.size());
    if (pos == k) {
      if (compare_to_best() > 0) return;
      place_rank(rank + 1);
      return;
    }
    // Only an element whose remapped mask is the smallest among the remaining
    // ones can sit at this position in a lexicographically minimal labeling.
    Mask least = ~Mask{0};
    for (int i = pos; i < k; ++i)
      least = std::min(least, remap_covers(perm[i]));
    // Dedup: if the transposition of two candidates is an automorphism (same
    // lower covers and same covering elements), their branches coincide.
    std::vector<std::pair<Mask, Mask>> tried;
    for (int i = pos; i < k; ++i) {
      const int x = perm[i];
      if (remap_covers(x) != least) continue;
      const std::pair<Mask, Mask> key{p.covers_of(x), upcovers[x]};
      if (std::find(tried.begin(), tried.end(), key) != tried.end()) continue;
      tried.push_back(key);
      std::swap(perm[pos], perm[i]);
      cur_label[x] = static_cast<int>(cur_rows.size()) + 1;
      cur_rows.push_back(least);
      if (compare_to_best() <= 0) try_orders(perm, pos + 1, rank);
      cur_rows.pop_back();
      cur_label[x] = 0;
      std::swap(perm[pos], perm[i]);
    }
  }
};

}  // namespace

CoverList canonical_form(const GradedPoset& p) {
  Canonizer c(p);
  c.run();
  CoverList out;
  for (int lbl = 0; lbl < p.size(); ++lbl) {
    Mask m = c.best_rows[lbl];
    while (m) {
      out.emplace_back(first_element(m), lbl + 1);
      m &= m - 1;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool is_isomorphic(const GradedPoset& p, const GradedPoset& q) {
  if (p.size() != q.size()) return false;
  if (rank_vector(p) != rank_vector(q)) return false;
  return canonical_form(p) == canonical_form(q);
}

std::string to_text(const GradedPoset& p) {
  std::ostringstream os;
  os << "n " << p.size() << "\n";
  for (const auto& [lo, hi] : p.cover_list()) os << lo << " " << hi << "\n";
  return os.str();
}

GradedPoset poset_from_text(const std::string& text) {
  std::istringstream is(text);
  std::string tag;
  int n = 0;
  if (!(is >> tag >> n) || tag != "n")
    throw poset_error("poset parse error: expected 'n <count>' header");
  CoverList covers;
  int a, b;
  while (is >> a) {
    if (!(is >> b)) throw poset_error("poset parse error: dangling index");
    covers.emplace_back(a, b);
  }
  if (!is.eof()) {
    is.clear();
    std::string rest;
    is >> rest;
    if (!rest.empty()) throw poset_error("poset parse error: trailing junk");
  }
  return build_poset(n, covers);
}

GradedPoset read_poset_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw poset_error("cannot open poset file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return poset_from_text(buf.str());
}

void write_poset_file(const GradedPoset& p, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw poset_error("cannot write poset file: " + path);
  out << to_text(p);
  if (!out) throw poset_error("write failed: " + path);
}

}  // namespace rootposet
