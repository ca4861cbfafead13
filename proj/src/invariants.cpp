#include "rootposet/invariants.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

#include "rootposet/profiles.hpp"

namespace rootposet {

long long HTriangle::at(int k, int m) const {
  auto it = counts.find({k, m});
  return it == counts.end() ? 0 : it->second;
}

Integer HTriangle::total() const {
  Integer s = 0;
  for (const auto& [km, c] : counts) s += c;
  return s;
}

std::vector<long long> HTriangle::size_counts() const {
  int max_m = 0;
  for (const auto& [km, c] : counts) max_m = std::max(max_m, km.second);
  std::vector<long long> by_size(max_m + 1, 0);
  for (const auto& [km, c] : counts) by_size[km.second] += c;
  return by_size;
}

std::string HTriangle::to_string() const {
  // Paper layout: ascending antichain size, descending simple count.
  std::vector<std::pair<std::pair<int, int>, long long>> entries(counts.begin(), counts.end());
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
    if (a.first.second != b.first.second) return a.first.second < b.first.second;
    return a.first.first > b.first.first;
  });
  std::ostringstream os;
  bool first = true;
  for (const auto& [km, c] : entries) {
    const auto [k, m] = km;
    if (!first) os << " + ";
    first = false;
    if (c != 1 || (k == 0 && m == 0)) os << c;
    if (k == 1)
      os << 's';
    else if (k > 1)
      os << "s^" << k;
    if (m == 1)
      os << 't';
    else if (m > 1)
      os << "t^" << m;
  }
  return first ? "0" : os.str();
}

int RootSystemProfile::positive_roots() const {
  return std::accumulate(expected_rank_vector.begin(), expected_rank_vector.end(), 0);
}

BivariatePolynomial RootSystemProfile::qt_catalan() const {
  if (!qt_summands)
    throw invariant_error(type_name + ": no q,t-Catalan data in this profile");
  BivariatePolynomial p;
  for (const auto& [shift, length] : *qt_summands)
    p += BivariatePolynomial::monomial(shift, shift) * qt_bracket(length);
  return p;
}

Rational RootSystemProfile::panyushev_average() const { return {n, 2}; }

Rational RootSystemProfile::restricted_average() const {
  return {static_cast<long long>(n) * (h - 2), 2LL * (h - 1)};
}

std::vector<int> rank_vector_from_degrees(const std::vector<int>& degrees) {
  if (degrees.empty()) throw invariant_error("empty degree list");
  const int h = *std::max_element(degrees.begin(), degrees.end());
  std::vector<int> ranks;
  for (int i = 1; i < h; ++i) {
    int count = 0;
    for (int d : degrees) count += d > i;
    ranks.push_back(count);
  }
  return ranks;
}

Integer catalan_number(const std::vector<int>& degrees, int h) {
  Integer num = 1, den = 1;
  for (int d : degrees) {
    num *= d + h;
    den *= d;
  }
  if (num % den != 0) throw invariant_error("non-integral Catalan number");
  return num / den;
}

HTriangle h_triangle(const GradedPoset& p, Mask simples) {
  HTriangle t;
  for_each_antichain(p, [&](Mask a) {
    const int k = popcount(a & simples);
    const int m = popcount(a);
    t.counts[{k, m}] += 1;
  });
  return t;
}

HTriangle h_triangle(const GradedPoset& p) { return h_triangle(p, minimals(p).members); }

Mask panyushev_step(const GradedPoset& p, Mask antichain) {
  const Mask ideal = ideal_of(p, Antichain{antichain}).members;
  const Mask complement = full_mask(p.size()) & ~ideal;
  Mask result = 0;
  for (Mask rest = complement; rest;) {
    const int x = first_element(rest);
    rest &= rest - 1;
    if ((p.below_of(x) & complement) == 0) result |= bit(x);
  }
  return result;
}

Rational PanyushevOrbit::average_size() const {
  long long total = 0;
  for (Mask a : antichains) total += popcount(a);
  return {total, static_cast<long long>(antichains.size())};
}

std::vector<int> OrbitDecomposition::lengths() const {
  std::vector<int> out;
  for (const auto& o : orbits) out.push_back(o.length());
  std::sort(out.begin(), out.end());
  return out;
}

bool OrbitDecomposition::all_averages_equal(const Rational& r) const {
  for (const auto& o : orbits)
    if (o.average_size() != r) return false;
  return true;
}

namespace {

OrbitDecomposition orbit_decomposition(const GradedPoset& p) {
  std::vector<Mask> all;
  for_each_antichain(p, [&](Mask a) { all.push_back(a); });
  std::sort(all.begin(), all.end());
  auto index_of = [&](Mask a) {
    return static_cast<std::size_t>(
        std::lower_bound(all.begin(), all.end(), a) - all.begin());
  };
  std::vector<bool> visited(all.size(), false);
  OrbitDecomposition d;
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (visited[i]) continue;
    PanyushevOrbit orbit;
    Mask a = all[i];
    while (true) {
      const std::size_t j = index_of(a);
      if (visited[j]) break;
      visited[j] = true;
      orbit.antichains.push_back(a);
      a = panyushev_step(p, a);
    }
    d.orbits.push_back(std::move(orbit));
  }
  return d;
}

}  // namespace

OrbitDecomposition panyushev_orbits(const GradedPoset& p) { return orbit_decomposition(p); }

OrbitDecomposition restricted_panyushev_orbits(const GradedPoset& p) {
  if (popcount(minimals(p).members) == p.size()) {
    // Deleting the simple roots leaves nothing; the only antichain is empty.
    OrbitDecomposition d;
    d.orbits.push_back(PanyushevOrbit{{Mask{0}}});
    return d;
  }
  return orbit_decomposition(delete_minimals(p));
}

UnivariatePolynomial ideal_size_genfun(const GradedPoset& p) {
  std::vector<Integer> coeff(p.size() + 1, 0);
  for_each_antichain(p, [&](Mask a) {
    coeff[popcount(ideal_of(p, Antichain{a}).members)] += 1;
  });
  return UnivariatePolynomial(std::move(coeff));
}

Property parse_property(const std::string& s) {
  if (s == "1") return Property::P1;
  if (s == "2") return Property::P2;
  if (s == "3") return Property::P3;
  if (s == "4") return Property::P4;
  if (s == "5a") return Property::P5a;
  if (s == "5b") return Property::P5b;
  if (s == "5m" || s == "5-multiset" || s == "5multiset") return Property::P5Multiset;
  if (s == "6") return Property::P6;
  throw invariant_error("unknown property selector: " + s);
}

std::string property_name(Property p) {
  switch (p) {
    case Property::P1: return "1";
    case Property::P2: return "2";
    case Property::P3: return "3";
    case Property::P4: return "4";
    case Property::P5a: return "5a";
    case Property::P5b: return "5b";
    case Property::P5Multiset: return "5-multiset";
    case Property::P6: return "6";
  }
  return "?";
}

std::vector<Property> all_properties() {
  return {Property::P1, Property::P2,  Property::P3,        Property::P4,
          Property::P5a, Property::P5b, Property::P5Multiset, Property::P6};
}

bool PropertyReport::all_pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

std::string PropertyReport::to_text() const {
  std::ostringstream os;
  for (const auto& c : checks) {
    os << "property " << property_name(c.property) << ": " << (c.pass ? "pass" : "FAIL");
    if (!c.detail.empty()) os << " (" << c.detail << ")";
    os << '\n';
  }
  return os.str();
}

namespace {

std::string cover_key(int n, const CoverList& covers) {
  std::ostringstream os;
  os << n;
  for (const auto& [a, b] : covers) os << ';' << a << ',' << b;
  return os.str();
}

std::string canonical_key(const GradedPoset& p) {
  return cover_key(p.size(), canonical_form(p));
}

const std::string& reference_canonical_key(const std::vector<std::string>& components) {
  static std::mutex mutex;
  static std::map<std::string, std::string> cache;
  std::string name;
  for (const auto& c : components) name += c + "*";
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(name);
  if (it == cache.end()) {
    const GradedPoset ref = reference_product(components);
    it = cache.emplace(name, canonical_key(ref)).first;
  }
  return it->second;
}

std::string join_ints(const std::vector<int>& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ')';
  return os.str();
}

PropertyCheck check_p1(const GradedPoset& p, const RootSystemProfile& profile) {
  PropertyCheck c{Property::P1, false, ""};
  const Mask mins = minimals(p).members;
  if (popcount(mins) != profile.n) {
    c.detail = "expected " + std::to_string(profile.n) + " minimal elements, found " +
               std::to_string(popcount(mins));
    return c;
  }
  if (popcount(maximals(p).members) != 1) {
    c.detail = "maximal element not unique";
    return c;
  }
  if (!is_graded(p)) {
    c.detail = "poset is not graded";
    return c;
  }
  std::vector<std::string> expected;
  for (const auto& components : profile.parabolic_references)
    expected.push_back(reference_canonical_key(components));
  std::sort(expected.begin(), expected.end());

  std::vector<std::string> actual;
  for (Mask rest = mins; rest;) {
    const int drop = first_element(rest);
    rest &= rest - 1;
    const GradedPoset sub = parabolic_subposet(p, mins & ~bit(drop));
    actual.push_back(canonical_key(sub));
  }
  std::sort(actual.begin(), actual.end());
  if (actual != expected) {
    c.detail = "rank " + std::to_string(profile.n - 1) +
               " parabolic subposets do not match the reference types";
    return c;
  }
  c.pass = true;
  return c;
}

}  // namespace

PropertyReport check_properties(const GradedPoset& p, const RootSystemProfile& profile,
                                const std::vector<Property>& selection) {
  PropertyReport report;
  for (Property prop : selection) {
    PropertyCheck c{prop, false, ""};
    switch (prop) {
      case Property::P1:
        c = check_p1(p, profile);
        break;
      case Property::P2: {
        const std::vector<int> rv = rank_vector(p);
        c.pass = rv == profile.expected_rank_vector;
        if (!c.pass)
          c.detail = "rank vector " + join_ints(rv) + " != expected " +
                     join_ints(profile.expected_rank_vector);
        break;
      }
      case Property::P3: {
        const Integer count = count_antichains(p);
        c.pass = count == profile.catalan;
        if (!c.pass)
          c.detail = count.str() + " antichains, expected " + profile.catalan.str();
        break;
      }
      case Property::P4: {
        const HTriangle t = h_triangle(p);
        c.pass = t == profile.h_triangle;
        if (!c.pass) c.detail = "H-triangle " + t.to_string();
        break;
      }
      case Property::P5a: {
        const OrbitDecomposition d = panyushev_orbits(p);
        const Rational want = profile.panyushev_average();
        c.pass = d.all_averages_equal(want);
        if (!c.pass) {
          for (const auto& o : d.orbits) {
            if (o.average_size() != want) {
              std::ostringstream os;
              os << "orbit of length " << o.length() << " has average "
                 << o.average_size().numerator() << "/" << o.average_size().denominator()
                 << ", expected " << want.numerator() << "/" << want.denominator();
              c.detail = os.str();
              break;
            }
          }
        }
        break;
      }
      case Property::P5b: {
        const OrbitDecomposition d = restricted_panyushev_orbits(p);
        const Rational want = profile.restricted_average();
        c.pass = d.all_averages_equal(want);
        if (!c.pass) {
          for (const auto& o : d.orbits) {
            if (o.average_size() != want) {
              std::ostringstream os;
              os << "restricted orbit of length " << o.length() << " has average "
                 << o.average_size().numerator() << "/" << o.average_size().denominator()
                 << ", expected " << want.numerator() << "/" << want.denominator();
              c.detail = os.str();
              break;
            }
          }
        }
        break;
      }
      case Property::P5Multiset: {
        const std::vector<int> lengths = panyushev_orbits(p).lengths();
        c.pass = lengths == profile.orbit_multiset;
        if (!c.pass)
          c.detail = "orbit lengths " + join_ints(lengths) + " != expected " +
                     join_ints(profile.orbit_multiset);
        break;
      }
      case Property::P6: {
        const UnivariatePolynomial want = eval_t1(profile.qt_catalan());
        const UnivariatePolynomial got = ideal_size_genfun(p);
        c.pass = got == want;
        if (!c.pass) c.detail = "ideal sizes " + got.to_string();
        break;
      }
    }
    report.checks.push_back(std::move(c));
  }
  return report;
}

}  // namespace rootposet
