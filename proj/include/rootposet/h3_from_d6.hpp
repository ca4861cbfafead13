#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "rootposet/poset.hpp"

namespace rootposet {

// a + b*tau with tau^2 = tau + 1, exact integer arithmetic.
struct GoldenInteger {
  long long a = 0;
  long long b = 0;

  friend GoldenInteger operator+(GoldenInteger x, GoldenInteger y) {
    return {x.a + y.a, x.b + y.b};
  }
  friend GoldenInteger operator-(GoldenInteger x, GoldenInteger y) {
    return {x.a - y.a, x.b - y.b};
  }
  friend GoldenInteger operator*(GoldenInteger x, GoldenInteger y) {
    return {x.a * y.a + x.b * y.b, x.a * y.b + x.b * y.a + x.b * y.b};
  }
  friend bool operator==(GoldenInteger, GoldenInteger) = default;
  friend auto operator<=>(GoldenInteger, GoldenInteger) = default;

  bool nonnegative() const { return a >= 0 && b >= 0; }  // in N + N*tau
  double approx() const { return a + b * 1.6180339887498948482; }
  std::string to_string() const;
};

using GoldenVector = std::array<GoldenInteger, 3>;

struct D6Root {
  std::array<int, 6> v;      // coordinates in the basis v1..v6
  std::array<int, 6> alpha;  // coordinates in the simple-root basis

  friend bool operator==(const D6Root&, const D6Root&) = default;
};

// The 30 positive roots v_i - v_j and v_i + v_j (i < j), simple roots
// a1 = v1-v2, ..., a5 = v5-v6, a6 = v5+v6.
std::vector<D6Root> d6_positive_roots();

// Base change from v- to alpha-coordinates (exact, derived by inversion).
std::array<int, 6> epsilon(const std::array<int, 6>& v_coords);

// gamma(a1,...,a6) = (a1 + a2*tau, a3 + a4*tau, a5 + a6*tau).
GoldenVector gamma(const std::array<int, 6>& alpha_coords);

struct construction_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The 15 pairs (alpha, beta) of positive roots whose golden images under the
// restriction coordinates differ by a factor of tau (alpha on the tau side).
struct TauPair {
  D6Root alpha;
  D6Root beta;
  bool sigma_beta = false;  // true if beta is the lexicographically greater root
};

// Golden coordinates used for the tau-pairing and the final order. The
// plain gamma grouping does not pair the roots; this one does (see
// restriction_coordinates in the implementation for the derivation).
GoldenVector restriction_coordinates(const std::array<int, 6>& alpha_coords);

std::vector<TauPair> tau_pairs();

struct H3Construction {
  std::vector<TauPair> pairs;
  std::vector<GoldenVector> chosen;  // sigma-scaled golden images, one per pair
  GradedPoset poset;

  std::string trace() const;  // Fig. 3-style pair table
};

H3Construction build_h3_construction();
GradedPoset build_h3_poset();

}  // namespace rootposet
