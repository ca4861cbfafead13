#pragma once

#include <boost/rational.hpp>

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rootposet/poset.hpp"
#include "rootposet/qt_poly.hpp"

namespace rootposet {

using Rational = boost::rational<long long>;

struct invariant_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Counts n_{k,m} of antichains with m elements, k of them simple.
struct HTriangle {
  std::map<std::pair<int, int>, long long> counts;

  long long at(int k, int m) const;
  Integer total() const;
  // Column sums over k: number of antichains of each size m.
  std::vector<long long> size_counts() const;
  std::string to_string() const;

  friend bool operator==(const HTriangle&, const HTriangle&) = default;
};

// Static data describing one root system, from bundled tables or from
// crystallographic root-data oracles.
struct RootSystemProfile {
  std::string type_name;
  int n = 0;
  std::vector<int> degrees;  // descending
  int h = 0;
  std::vector<int> expected_rank_vector;
  Integer catalan = 0;
  HTriangle h_triangle;
  std::vector<int> orbit_multiset;  // sorted ascending
  // (shift i, bracket length n) summands of Cat(q,t); absent for oracles.
  std::optional<std::vector<std::pair<int, int>>> qt_summands;
  // Component type names of the rank n-1 standard parabolics.
  std::vector<std::vector<std::string>> parabolic_references;
  bool oracle = false;

  int positive_roots() const;
  BivariatePolynomial qt_catalan() const;  // throws if qt_summands is absent
  Rational panyushev_average() const;      // n/2
  Rational restricted_average() const;     // n(h-2)/(2(h-1))
};

std::vector<int> rank_vector_from_degrees(const std::vector<int>& degrees);
Integer catalan_number(const std::vector<int>& degrees, int h);

HTriangle h_triangle(const GradedPoset& p, Mask simples);
HTriangle h_triangle(const GradedPoset& p);  // simples = minimals

// Pan(A) = min(P \ I(A)).
Mask panyushev_step(const GradedPoset& p, Mask antichain);

struct PanyushevOrbit {
  std::vector<Mask> antichains;
  int length() const { return static_cast<int>(antichains.size()); }
  Rational average_size() const;
};

struct OrbitDecomposition {
  std::vector<PanyushevOrbit> orbits;
  std::vector<int> lengths() const;  // sorted ascending
  bool all_averages_equal(const Rational& r) const;
};

OrbitDecomposition panyushev_orbits(const GradedPoset& p);
// Orbits of the Panyushev map on delete_minimals(p).
OrbitDecomposition restricted_panyushev_orbits(const GradedPoset& p);

// Coefficient of q^s counts order ideals of size s.
UnivariatePolynomial ideal_size_genfun(const GradedPoset& p);

enum class Property { P1, P2, P3, P4, P5a, P5b, P5Multiset, P6 };

// Accepts "1".."4", "6", "5a", "5b", "5m", "5-multiset"; a bare "5" is not a
// single property (callers expand it to the three rank-5 checks).
Property parse_property(const std::string& s);
std::string property_name(Property p);
std::vector<Property> all_properties();

struct PropertyCheck {
  Property property;
  bool pass = false;
  std::string detail;
};

struct PropertyReport {
  std::vector<PropertyCheck> checks;
  bool all_pass() const;
  std::string to_text() const;
};

PropertyReport check_properties(const GradedPoset& p, const RootSystemProfile& profile,
                                const std::vector<Property>& selection);

}  // namespace rootposet
