#include "rootposet/qt_poly.hpp"

#include <algorithm>
#include <array>
#include <sstream>

namespace rootposet {

namespace {

std::string power_string(const char* var, int e) {
  std::ostringstream os;
  if (e == 1)
    os << var;
  else if (e > 1)
    os << var << '^' << e;
  return os.str();
}

std::string qt_shift_string(int i) {
  if (i == 0) return "";
  if (i == 1) return "qt";
  std::ostringstream os;
  os << "q^" << i << "t^" << i;
  return os.str();
}

}  // namespace

void UnivariatePolynomial::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

UnivariatePolynomial UnivariatePolynomial::monomial(int degree, Integer coeff) {
  if (degree < 0) throw qt_error("monomial degree must be nonnegative");
  std::vector<Integer> c(degree + 1);
  c[degree] = std::move(coeff);
  return UnivariatePolynomial(std::move(c));
}

Integer UnivariatePolynomial::coeff(int k) const {
  if (k < 0 || k >= static_cast<int>(c_.size())) return 0;
  return c_[k];
}

Integer UnivariatePolynomial::eval_one() const {
  Integer s = 0;
  for (const auto& c : c_) s += c;
  return s;
}

bool UnivariatePolynomial::is_palindromic() const {
  const int d = degree();
  for (int k = 0; 2 * k <= d; ++k)
    if (c_[k] != c_[d - k]) return false;
  return true;
}

UnivariatePolynomial& UnivariatePolynomial::operator+=(const UnivariatePolynomial& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
  trim();
  return *this;
}

UnivariatePolynomial& UnivariatePolynomial::operator-=(const UnivariatePolynomial& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
  trim();
  return *this;
}

UnivariatePolynomial& UnivariatePolynomial::operator*=(const UnivariatePolynomial& o) {
  if (is_zero() || o.is_zero()) {
    c_.clear();
    return *this;
  }
  std::vector<Integer> r(c_.size() + o.c_.size() - 1);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  }
  c_ = std::move(r);
  trim();
  return *this;
}

UnivariatePolynomial UnivariatePolynomial::divide_exact(const UnivariatePolynomial& d) const {
  if (d.is_zero()) throw qt_error("division by zero polynomial");
  std::vector<Integer> rem = c_;
  const int dd = d.degree();
  const Integer& lead = d.c_.back();
  int rd = static_cast<int>(rem.size()) - 1;
  while (rd >= 0 && rem[rd] == 0) --rd;
  std::vector<Integer> quot(rd >= dd ? rd - dd + 1 : 0);
  while (rd >= dd) {
    if (rem[rd] % lead != 0) throw qt_error("polynomial division leaves a remainder");
    Integer f = rem[rd] / lead;
    quot[rd - dd] = f;
    for (int k = 0; k <= dd; ++k) rem[rd - dd + k] -= f * d.c_[k];
    while (rd >= 0 && rem[rd] == 0) --rd;
  }
  if (rd >= 0) throw qt_error("polynomial division leaves a remainder");
  return UnivariatePolynomial(std::move(quot));
}

std::string UnivariatePolynomial::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int k = 0; k < static_cast<int>(c_.size()); ++k) {
    if (c_[k] == 0) continue;
    Integer a = c_[k];
    if (first) {
      if (a < 0) {
        os << '-';
        a = -a;
      }
      first = false;
    } else {
      os << (a < 0 ? " - " : " + ");
      if (a < 0) a = -a;
    }
    if (k == 0 || a != 1) os << a;
    os << power_string("q", k);
  }
  return os.str();
}

void BivariatePolynomial::add_term(int qexp, int texp, const Integer& coeff) {
  if (coeff == 0) return;
  auto key = std::make_pair(qexp, texp);
  auto it = c_.find(key);
  if (it == c_.end()) {
    c_.emplace(key, coeff);
  } else {
    it->second += coeff;
    if (it->second == 0) c_.erase(it);
  }
}

BivariatePolynomial BivariatePolynomial::monomial(int qexp, int texp, Integer coeff) {
  if (qexp < 0 || texp < 0) throw qt_error("monomial exponents must be nonnegative");
  BivariatePolynomial p;
  p.add_term(qexp, texp, coeff);
  return p;
}

Integer BivariatePolynomial::coeff(int qexp, int texp) const {
  auto it = c_.find({qexp, texp});
  return it == c_.end() ? Integer(0) : it->second;
}

Integer BivariatePolynomial::eval_one_one() const {
  Integer s = 0;
  for (const auto& [e, c] : c_) s += c;
  return s;
}

bool BivariatePolynomial::is_qt_symmetric() const {
  for (const auto& [e, c] : c_)
    if (coeff(e.second, e.first) != c) return false;
  return true;
}

BivariatePolynomial& BivariatePolynomial::operator+=(const BivariatePolynomial& o) {
  for (const auto& [e, c] : o.c_) add_term(e.first, e.second, c);
  return *this;
}

BivariatePolynomial& BivariatePolynomial::operator-=(const BivariatePolynomial& o) {
  for (const auto& [e, c] : o.c_) add_term(e.first, e.second, -c);
  return *this;
}

BivariatePolynomial& BivariatePolynomial::operator*=(const BivariatePolynomial& o) {
  BivariatePolynomial r;
  for (const auto& [e1, c1] : c_)
    for (const auto& [e2, c2] : o.c_)
      r.add_term(e1.first + e2.first, e1.second + e2.second, c1 * c2);
  c_ = std::move(r.c_);
  return *this;
}

std::string BivariatePolynomial::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, coeff] : c_) {
    Integer a = coeff;
    if (first) {
      if (a < 0) {
        os << '-';
        a = -a;
      }
      first = false;
    } else {
      os << (a < 0 ? " - " : " + ");
      if (a < 0) a = -a;
    }
    const bool unit = e.first == 0 && e.second == 0;
    if (unit || a != 1) os << a;
    os << power_string("q", e.first) << power_string("t", e.second);
  }
  return os.str();
}

BivariatePolynomial qt_bracket(int n) {
  if (n < 1) throw qt_error("bracket length must be at least 1");
  BivariatePolynomial p;
  for (int j = 0; j < n; ++j) p += BivariatePolynomial::monomial(n - 1 - j, j);
  return p;
}

UnivariatePolynomial q_bracket(int n) {
  if (n < 1) throw qt_error("bracket length must be at least 1");
  return UnivariatePolynomial(std::vector<Integer>(n, 1));
}

UnivariatePolynomial q2_bracket(int n) {
  if (n < 1) throw qt_error("bracket length must be at least 1");
  std::vector<Integer> c(2 * (n - 1) + 1);
  for (int j = 0; j < n; ++j) c[2 * j] = 1;
  return UnivariatePolynomial(std::move(c));
}

UnivariatePolynomial eval_t1(const BivariatePolynomial& p) {
  std::vector<Integer> c;
  for (const auto& [e, coeff] : p.terms()) {
    if (e.first >= static_cast<int>(c.size())) c.resize(e.first + 1);
    c[e.first] += coeff;
  }
  return UnivariatePolynomial(std::move(c));
}

UnivariatePolynomial eval_t_qinv_shift(const BivariatePolynomial& p, int N) {
  std::map<int, Integer> acc;
  for (const auto& [e, coeff] : p.terms()) {
    const int k = e.first - e.second + N;
    if (k < 0) throw qt_error("negative exponent after t=q^{-1} shift");
    acc[k] += coeff;
  }
  std::vector<Integer> c;
  for (const auto& [k, coeff] : acc) {
    if (k >= static_cast<int>(c.size())) c.resize(k + 1);
    c[k] = coeff;
  }
  return UnivariatePolynomial(std::move(c));
}

UnivariatePolynomial h4_product_formula() {
  UnivariatePolynomial num = q_bracket(32) * q_bracket(42) * q_bracket(50) * q_bracket(60);
  UnivariatePolynomial den = q_bracket(2) * q_bracket(12) * q_bracket(20) * q_bracket(30);
  return num.divide_exact(den);
}

std::vector<std::pair<int, int>> decompose_q2_brackets(const UnivariatePolynomial& u) {
  for (const auto& c : u.coeffs())
    if (c < 0) throw qt_error("decomposition requires nonnegative coefficients");
  std::vector<Integer> rem = u.coeffs();
  std::vector<std::pair<int, int>> out;
  std::size_t a = 0;
  while (true) {
    while (a < rem.size() && rem[a] == 0) ++a;
    if (a >= rem.size()) break;
    std::size_t b = 1;
    while (a + 2 * b < rem.size() && rem[a + 2 * b] > 0) ++b;
    for (std::size_t j = 0; j < b; ++j) rem[a + 2 * j] -= 1;
    out.emplace_back(static_cast<int>(a), static_cast<int>(b));
  }
  for (std::size_t k = 1; k < out.size(); ++k) {
    const auto& [pa, pb] = out[k - 1];
    const auto& [ca, cb] = out[k];
    const bool ordered = pa < ca && pb > cb;
    const bool repeat = pa == ca && pb == cb;
    if (!ordered && !repeat)
      throw qt_error("no valid q^a[b]_{q^2} decomposition with decreasing bracket lengths");
  }
  return out;
}

BivariatePolynomial conjecture_h4_polynomial() {
  HilbertCandidate c;
  c.summands = {{0, 61, 1}, {1, 49, 1}, {1, 41, 1}, {2, 37, 1}, {1, 31, 1},
                {3, 25, 1}, {2, 21, 1}, {4, 13, 1}, {6, 1, 1},  {10, 1, 1}};
  return c.expand();
}

BivariatePolynomial HilbertCandidate::expand() const {
  BivariatePolynomial p;
  for (const auto& s : summands) {
    BivariatePolynomial term = BivariatePolynomial::monomial(s.shift, s.shift, s.multiplicity);
    term *= qt_bracket(s.length);
    p += term;
  }
  return p;
}

std::string HilbertCandidate::bracket_notation() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& s : summands) {
    if (!first) os << " + ";
    first = false;
    if (s.multiplicity != 1) os << s.multiplicity;
    const std::string shift = qt_shift_string(s.shift);
    if (s.length == 1) {
      os << (shift.empty() ? (s.multiplicity == 1 ? "1" : "") : shift);
    } else {
      os << shift << '[' << s.length << ']';
    }
  }
  return os.str();
}

namespace {

// t=1 boundary coefficients of Cat(H4;q,t): degrees 0..10 and 49..60.
struct CandidateTargets {
  static constexpr int top = 60;
  std::array<int, 61> target{};
  std::array<bool, 61> constrained{};

  CandidateTargets() {
    constexpr std::array<int, 11> low = {1, 4, 6, 7, 8, 8, 9, 8, 8, 8, 9};
    for (int k = 0; k <= 10; ++k) {
      target[k] = low[k];
      constrained[k] = true;
    }
    target[49] = 2;
    constrained[49] = true;
    for (int k = 50; k <= 60; ++k) {
      target[k] = 1;
      constrained[k] = true;
    }
  }
};

struct CandidateSearch {
  static constexpr std::array<int, 10> lengths = {61, 49, 41, 37, 31, 25, 21, 13, 1, 1};
  CandidateTargets tg;
  std::array<int, 61> cnt{};
  std::array<int, 10> shift{};
  std::vector<HilbertCandidate> found;

  bool feasible(std::size_t next) const {
    const int remaining = static_cast<int>(lengths.size() - next);
    long deficit_sum = 0;
    for (int k = 0; k <= CandidateTargets::top; ++k) {
      if (!tg.constrained[k]) continue;
      const int d = tg.target[k] - cnt[k];
      if (d < 0) return false;
      if (d > remaining) return false;
      deficit_sum += d;
    }
    // Every summand covers a contiguous run: at most 10 constrained points
    // from the low block (degree 0 is full after [61]) or 12 from the top.
    long capacity = 0;
    for (std::size_t i = next; i < lengths.size(); ++i)
      capacity += lengths[i] == 1 ? 1 : 12;
    return deficit_sum <= capacity;
  }

  void emit() {
    for (int k = 0; k <= CandidateTargets::top; ++k)
      if (tg.constrained[k] && cnt[k] != tg.target[k]) return;
    HilbertCandidate c;
    for (std::size_t i = 0; i < lengths.size(); ++i) {
      if (!c.summands.empty() && c.summands.back().length == lengths[i] &&
          c.summands.back().shift == shift[i]) {
        c.summands.back().multiplicity += 1;
      } else {
        c.summands.push_back({shift[i], lengths[i], 1});
      }
    }
    found.push_back(std::move(c));
  }

  void rec(std::size_t i) {
    if (i == lengths.size()) {
      emit();
      return;
    }
    const int n = lengths[i];
    const int lo = (i > 0 && lengths[i - 1] == n) ? shift[i - 1] : 0;
    for (int s = lo; s + n - 1 <= CandidateTargets::top; ++s) {
      shift[i] = s;
      for (int k = s; k < s + n; ++k) ++cnt[k];
      if (feasible(i + 1)) rec(i + 1);
      for (int k = s; k < s + n; ++k) --cnt[k];
    }
  }
};

}  // namespace

std::vector<HilbertCandidate> enumerate_hilbert_candidates() {
  CandidateSearch search;
  search.rec(0);
  return search.found;
}

}  // namespace rootposet
