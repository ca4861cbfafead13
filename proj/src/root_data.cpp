#include "rootposet/root_data.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <stdexcept>

namespace rootposet {

namespace {

// Symmetrized Cartan data: bilin[i][j] = 2*(alpha_i, alpha_j), doubled so
// the short-short products of F4 stay integral.
struct CartanData {
  int n = 0;
  std::vector<std::vector<int>> bilin;

  CartanData(int rank, int) : n(rank), bilin(rank, std::vector<int>(rank, 0)) {}

  void set_norm(int i, int doubled_norm) { bilin[i][i] = doubled_norm; }
  void set_product(int i, int j, int doubled_product) {
    bilin[i][j] = bilin[j][i] = doubled_product;
  }
};

CartanData simply_laced_chain(int n) {
  CartanData c(n, 0);
  for (int i = 0; i < n; ++i) c.set_norm(i, 4);
  for (int i = 0; i + 1 < n; ++i) c.set_product(i, i + 1, -2);
  return c;
}

CartanData cartan_data(char family, int n) {
  switch (family) {
    case 'A':
      if (n < 1) throw poset_error("rank too small for type A");
      return simply_laced_chain(n);
    case 'B': {
      if (n < 2) throw poset_error("rank too small for type B");
      CartanData c = simply_laced_chain(n);
      c.set_norm(n - 1, 2);  // short last simple root
      return c;
    }
    case 'C': {
      if (n < 2) throw poset_error("rank too small for type C");
      CartanData c(n, 0);
      for (int i = 0; i + 1 < n; ++i) c.set_norm(i, 4);
      c.set_norm(n - 1, 8);  // long last simple root
      for (int i = 0; i + 2 < n; ++i) c.set_product(i, i + 1, -2);
      if (n >= 2) c.set_product(n - 2, n - 1, -4);
      return c;
    }
    case 'D': {
      if (n < 4) throw poset_error("rank too small for type D");
      CartanData c(n, 0);
      for (int i = 0; i < n; ++i) c.set_norm(i, 4);
      for (int i = 0; i + 1 < n - 1; ++i) c.set_product(i, i + 1, -2);
      c.set_product(n - 3, n - 1, -2);  // fork: both n-2 and n-1 attach to n-3
      return c;
    }
    case 'F': {
      if (n != 4) throw poset_error("type F exists only in rank 4");
      CartanData c(4, 0);
      c.set_norm(0, 4);
      c.set_norm(1, 4);
      c.set_norm(2, 2);
      c.set_norm(3, 2);
      c.set_product(0, 1, -2);
      c.set_product(1, 2, -2);
      c.set_product(2, 3, -1);
      return c;
    }
    default:
      throw poset_error("unsupported root system family");
  }
}

// s_i(beta) in simple-root coordinates: only coordinate i changes, by the
// Cartan integer 2(beta, alpha_i)/(alpha_i, alpha_i).
std::vector<int> reflect(const CartanData& c, const std::vector<int>& beta, int i) {
  long long num = 0;
  for (int j = 0; j < c.n; ++j) num += static_cast<long long>(beta[j]) * c.bilin[i][j];
  num *= 2;
  const int den = c.bilin[i][i];
  if (num % den != 0) throw poset_error("non-integral Cartan pairing");
  std::vector<int> out = beta;
  out[i] -= static_cast<int>(num / den);
  return out;
}

}  // namespace

std::vector<std::vector<int>> positive_roots_alpha(const std::string& type_name) {
  if (type_name.size() < 2) throw poset_error("bad root system name: " + type_name);
  const char family = type_name[0];
  int n = 0;
  for (std::size_t k = 1; k < type_name.size(); ++k) {
    if (type_name[k] < '0' || type_name[k] > '9')
      throw poset_error("bad root system name: " + type_name);
    n = 10 * n + (type_name[k] - '0');
  }
  const CartanData c = cartan_data(family, n);

  std::set<std::vector<int>> roots;
  std::vector<std::vector<int>> queue;
  for (int i = 0; i < n; ++i) {
    std::vector<int> simple(n, 0);
    simple[i] = 1;
    roots.insert(simple);
    queue.push_back(std::move(simple));
  }
  while (!queue.empty()) {
    std::vector<int> beta = std::move(queue.back());
    queue.pop_back();
    for (int i = 0; i < n; ++i) {
      std::vector<int> img = reflect(c, beta, i);
      if (roots.insert(img).second) queue.push_back(std::move(img));
    }
  }

  std::vector<std::vector<int>> positive;
  for (const auto& r : roots) {
    bool nonneg = true;
    for (int x : r) nonneg = nonneg && x >= 0;
    if (nonneg) positive.push_back(r);
  }
  if (2 * positive.size() != roots.size())
    throw poset_error("root generation out of balance for " + type_name);
  return positive;
}

GradedPoset poset_from_roots(const std::vector<std::vector<int>>& roots) {
  const int n = static_cast<int>(roots.size());
  CoverList relation;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      bool leq = true;
      for (std::size_t k = 0; k < roots[i].size() && leq; ++k)
        leq = roots[i][k] <= roots[j][k];
      if (leq) relation.emplace_back(i + 1, j + 1);
    }
  }
  return build_poset(n, relation);
}

}  // namespace rootposet
