#include "rootposet/h3_from_d6.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include <boost/rational.hpp>

namespace rootposet {

namespace {

using Rat = boost::rational<long long>;

// Simple roots a1..a6 of D6 in the coordinates of v1..v6.
constexpr std::array<std::array<int, 6>, 6> simple_roots = {{
    {1, -1, 0, 0, 0, 0},
    {0, 1, -1, 0, 0, 0},
    {0, 0, 1, -1, 0, 0},
    {0, 0, 0, 1, -1, 0},
    {0, 0, 0, 0, 1, -1},
    {0, 0, 0, 0, 1, 1},
}};

// Inverse of the column matrix of the simple roots, computed once by
// Gauss-Jordan elimination. Row r of the result gives the r-th
// alpha-coordinate as a rational combination of v-coordinates.
const std::array<std::array<Rat, 6>, 6>& base_change_matrix() {
  static const auto inverse = [] {
    std::array<std::array<Rat, 12>, 6> work{};
    for (int i = 0; i < 6; ++i) {
      for (int j = 0; j < 6; ++j) work[i][j] = simple_roots[j][i];
      work[i][6 + i] = 1;
    }
    for (int col = 0; col < 6; ++col) {
      int piv = col;
      while (work[piv][col].numerator() == 0) ++piv;
      std::swap(work[col], work[piv]);
      Rat lead = work[col][col];
      for (auto& x : work[col]) x /= lead;
      for (int row = 0; row < 6; ++row) {
        if (row == col || work[row][col].numerator() == 0) continue;
        Rat f = work[row][col];
        for (int j = 0; j < 12; ++j) work[row][j] -= f * work[col][j];
      }
    }
    std::array<std::array<Rat, 6>, 6> out{};
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j) out[i][j] = work[i][6 + j];
    return out;
  }();
  return inverse;
}

GoldenInteger tau_times(GoldenInteger g) { return GoldenInteger{0, 1} * g; }

GoldenVector tau_times(const GoldenVector& v) {
  return {tau_times(v[0]), tau_times(v[1]), tau_times(v[2])};
}

std::string v_coords_string(const std::array<int, 6>& v) {
  std::ostringstream out;
  out << '(';
  for (int i = 0; i < 6; ++i) out << (i ? "," : "") << v[i];
  out << ')';
  return out.str();
}

std::string golden_vector_string(const GoldenVector& g) {
  return "(" + g[0].to_string() + ", " + g[1].to_string() + ", " +
         g[2].to_string() + ")";
}

}  // namespace

std::string GoldenInteger::to_string() const {
  if (b == 0) return std::to_string(a);
  std::string taupart = b == 1    ? "tau"
                        : b == -1 ? "-tau"
                                  : std::to_string(b) + "tau";
  if (a == 0) return taupart;
  if (b < 0) return std::to_string(a) + taupart;
  return std::to_string(a) + "+" + taupart;
}

std::array<int, 6> epsilon(const std::array<int, 6>& v_coords) {
  const auto& m = base_change_matrix();
  std::array<int, 6> out{};
  for (int i = 0; i < 6; ++i) {
    Rat acc;
    for (int j = 0; j < 6; ++j) acc += m[i][j] * Rat(v_coords[j]);
    if (acc.denominator() != 1)
      throw construction_error("epsilon: vector " + v_coords_string(v_coords) +
                               " is not in the root lattice");
    out[i] = static_cast<int>(acc.numerator());
  }
  return out;
}

GoldenVector gamma(const std::array<int, 6>& a) {
  return {GoldenInteger{a[0], a[1]}, GoldenInteger{a[2], a[3]},
          GoldenInteger{a[4], a[5]}};
}

// The grouping under which the positive roots pair up as (root, tau*root).
// Found by checking all coordinate pairings for consistency with the tau
// matching; it differs from gamma by the transposition of slots for a2/a6
// and a3/a4 (the simple roots pair as {a1,a6}, {a2,a4}, {a3,a5}).
GoldenVector restriction_coordinates(const std::array<int, 6>& a) {
  return {GoldenInteger{a[0], a[5]}, GoldenInteger{a[1], a[3]},
          GoldenInteger{a[4], a[2]}};
}

std::vector<D6Root> d6_positive_roots() {
  std::vector<D6Root> roots;
  for (int i = 0; i < 6; ++i) {
    for (int j = i + 1; j < 6; ++j) {
      for (int sign : {-1, 1}) {
        D6Root r{};
        r.v[i] = 1;
        r.v[j] = sign;
        r.alpha = epsilon(r.v);
        roots.push_back(r);
      }
    }
  }
  return roots;
}

std::vector<TauPair> tau_pairs() {
  std::vector<D6Root> roots = d6_positive_roots();
  std::map<GoldenVector, int> by_image;
  std::vector<GoldenVector> image(roots.size());
  for (std::size_t i = 0; i < roots.size(); ++i) {
    image[i] = restriction_coordinates(roots[i].alpha);
    by_image[image[i]] = static_cast<int>(i);
  }

  std::vector<TauPair> pairs;
  std::vector<bool> used(roots.size(), false);
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (used[i]) continue;
    auto partner = by_image.find(tau_times(image[i]));
    if (partner != by_image.end()) {
      // image[i] is the plain root, the partner carries tau times it.
      int j = partner->second;
      used[i] = used[j] = true;
      TauPair pair{roots[j], roots[i], roots[i].v > roots[j].v};
      pairs.push_back(pair);
      continue;
    }
    bool tau_side = std::any_of(
        image.begin(), image.end(),
        [&](const GoldenVector& g) { return tau_times(g) == image[i]; });
    if (!tau_side)
      throw construction_error("tau pairing: root " +
                               v_coords_string(roots[i].v) +
                               " has no partner (coordinate convention)");
    // The pair is recorded when its root side comes up in the loop.
  }
  if (pairs.size() * 2 != roots.size())
    throw construction_error("tau pairing is not a perfect matching");
  std::sort(pairs.begin(), pairs.end(),
            [](const TauPair& x, const TauPair& y) {
              return x.alpha.v < y.alpha.v;
            });
  return pairs;
}

H3Construction build_h3_construction() {
  H3Construction c;
  c.pairs = tau_pairs();
  for (const TauPair& pair : c.pairs) {
    const D6Root& pick = pair.sigma_beta ? pair.beta : pair.alpha;
    c.chosen.push_back(restriction_coordinates(pick.alpha));
  }

  int n = static_cast<int>(c.chosen.size());
  CoverList relation;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      GoldenVector d;
      bool leq = true;
      for (int k = 0; k < 3; ++k) {
        d[k] = c.chosen[j][k] - c.chosen[i][k];
        leq = leq && d[k].nonnegative();
      }
      if (leq) relation.emplace_back(i + 1, j + 1);
    }
  }
  c.poset = build_poset(n, relation);
  if (!is_graded(c.poset))
    throw construction_error(
        "restricted root order is not graded (coordinate convention)");
  return c;
}

GradedPoset build_h3_poset() { return build_h3_construction().poset; }

std::string H3Construction::trace() const {
  std::ostringstream out;
  out << "pair (alpha = tau side, beta)          sigma   chosen image\n";
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const TauPair& p = pairs[i];
    std::string left = v_coords_string(p.alpha.v);
    std::string right = v_coords_string(p.beta.v);
    out << left << std::string(left.size() < 16 ? 16 - left.size() : 1, ' ')
        << right << std::string(right.size() < 16 ? 16 - right.size() : 1, ' ')
        << (p.sigma_beta ? "beta " : "alpha") << "   "
        << golden_vector_string(chosen[i]) << "\n";
  }
  return out.str();
}

}  // namespace rootposet
