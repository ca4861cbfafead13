#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rootposet {

using Integer = boost::multiprecision::cpp_int;

struct qt_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Dense polynomial in q with exact integer coefficients.
class UnivariatePolynomial {
 public:
  UnivariatePolynomial() = default;
  explicit UnivariatePolynomial(std::vector<Integer> coeffs) : c_(std::move(coeffs)) { trim(); }

  static UnivariatePolynomial monomial(int degree, Integer coeff = 1);

  // Degree of the zero polynomial is -1.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  Integer coeff(int k) const;
  const std::vector<Integer>& coeffs() const { return c_; }

  Integer eval_one() const;
  bool is_palindromic() const;

  UnivariatePolynomial& operator+=(const UnivariatePolynomial& o);
  UnivariatePolynomial& operator-=(const UnivariatePolynomial& o);
  UnivariatePolynomial& operator*=(const UnivariatePolynomial& o);
  friend UnivariatePolynomial operator+(UnivariatePolynomial a, const UnivariatePolynomial& b) {
    return a += b;
  }
  friend UnivariatePolynomial operator-(UnivariatePolynomial a, const UnivariatePolynomial& b) {
    return a -= b;
  }
  friend UnivariatePolynomial operator*(UnivariatePolynomial a, const UnivariatePolynomial& b) {
    return a *= b;
  }
  friend bool operator==(const UnivariatePolynomial&, const UnivariatePolynomial&) = default;

  // Throws qt_error unless the division is remainder-free.
  UnivariatePolynomial divide_exact(const UnivariatePolynomial& d) const;

  std::string to_string() const;

 private:
  void trim();
  std::vector<Integer> c_;  // c_[k] is the coefficient of q^k
};

// Sparse polynomial in q and t, keyed by (q-exponent, t-exponent).
class BivariatePolynomial {
 public:
  BivariatePolynomial() = default;

  static BivariatePolynomial monomial(int qexp, int texp, Integer coeff = 1);

  bool is_zero() const { return c_.empty(); }
  Integer coeff(int qexp, int texp) const;
  const std::map<std::pair<int, int>, Integer>& terms() const { return c_; }

  Integer eval_one_one() const;
  bool is_qt_symmetric() const;

  BivariatePolynomial& operator+=(const BivariatePolynomial& o);
  BivariatePolynomial& operator-=(const BivariatePolynomial& o);
  BivariatePolynomial& operator*=(const BivariatePolynomial& o);
  friend BivariatePolynomial operator+(BivariatePolynomial a, const BivariatePolynomial& b) {
    return a += b;
  }
  friend BivariatePolynomial operator-(BivariatePolynomial a, const BivariatePolynomial& b) {
    return a -= b;
  }
  friend BivariatePolynomial operator*(BivariatePolynomial a, const BivariatePolynomial& b) {
    return a *= b;
  }
  friend bool operator==(const BivariatePolynomial&, const BivariatePolynomial&) = default;

  std::string to_string() const;

 private:
  void add_term(int qexp, int texp, const Integer& coeff);
  std::map<std::pair<int, int>, Integer> c_;
};

// [n]_{q,t} = q^{n-1} + q^{n-2}t + ... + t^{n-1}.  Throws qt_error for n < 1.
BivariatePolynomial qt_bracket(int n);

// [n]_q = 1 + q + ... + q^{n-1}.
UnivariatePolynomial q_bracket(int n);

// [n]_{q^2} = 1 + q^2 + ... + q^{2(n-1)}.
UnivariatePolynomial q2_bracket(int n);

// p(q, 1).
UnivariatePolynomial eval_t1(const BivariatePolynomial& p);

// q^N * p(q, q^{-1}).  Throws qt_error if a negative exponent survives the shift.
UnivariatePolynomial eval_t_qinv_shift(const BivariatePolynomial& p, int N);

// [32][42][50][60] / ([2][12][20][30]) over [n]_q, reduced exactly.
UnivariatePolynomial h4_product_formula();

// Writes u as sum of q^a[b]_{q^2} with a increasing and b decreasing
// (equal consecutive pairs allowed).  Greedy from the lowest exponent,
// always taking the longest available bracket.  Throws qt_error if the
// greedy decomposition violates the shape constraint.
std::vector<std::pair<int, int>> decompose_q2_brackets(const UnivariatePolynomial& u);

// The conjectured Cat(H4;q,t):
// [61] + qt[49] + qt[41] + q^2t^2[37] + qt[31] + q^3t^3[25] + q^2t^2[21]
//      + q^4t^4[13] + q^6t^6 + q^10t^10.
BivariatePolynomial conjecture_h4_polynomial();

// A polynomial of the form sum a_{i,n} q^i t^i [n]_{q,t}.
struct HilbertCandidate {
  struct Summand {
    int shift = 0;
    int length = 1;
    int multiplicity = 1;
  };
  std::vector<Summand> summands;  // sorted by length descending, then shift ascending

  BivariatePolynomial expand() const;
  std::string bracket_notation() const;

  friend bool operator==(const HilbertCandidate&, const HilbertCandidate&) = default;
};

// All sums of q^i t^i [n] with length multiset {61,49,41,37,31,25,21,13,1,1},
// top q-degree 60 at t=1, and the t=1 boundary coefficients
// 1,4,6,7,8,8,9,8,8,8,9 (low) and 2,1,...,1 (degrees 49..60).
std::vector<HilbertCandidate> enumerate_hilbert_candidates();

}  // namespace rootposet
