#include "rootposet/profiles.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <map>
#include <mutex>
#include <numeric>

#include "rootposet/root_data.hpp"

namespace rootposet {

namespace {

using nlohmann::json;

std::mutex cache_mutex;

bool parse_i2(const std::string& name, int& m) {
  if (name.size() < 5 || name.rfind("I2(", 0) != 0 || name.back() != ')') return false;
  m = 0;
  for (std::size_t k = 3; k + 1 < name.size(); ++k) {
    if (name[k] < '0' || name[k] > '9') return false;
    m = 10 * m + (name[k] - '0');
  }
  return m >= 3;
}

GradedPoset build_i2_poset(int m) {
  CoverList covers = {{1, 3}, {2, 3}};
  for (int i = 3; i < m; ++i) covers.emplace_back(i, i + 1);
  return build_poset(m, covers);
}

GradedPoset build_h3_reference() {
  const CoverList covers = {{1, 4},   {2, 4},   {2, 5},  {3, 5},   {4, 6},   {4, 7},
                            {5, 7},   {6, 8},   {6, 9},  {7, 9},   {8, 10},  {9, 10},
                            {9, 11},  {10, 12}, {11, 12}, {12, 13}, {13, 14}, {14, 15}};
  return build_poset(15, covers);
}

const json& profiles_json() {
  static json data = [] {
    const std::string path = data_directory() + "/profiles.json";
    std::ifstream in(path);
    if (!in) throw profile_error("cannot open profile data: " + path);
    json j;
    in >> j;
    return j;
  }();
  return data;
}

void validate_profile(const RootSystemProfile& p) {
  if (p.degrees.empty() || p.h != p.degrees.front())
    throw profile_error(p.type_name + ": h must be the largest degree");
  int pos_roots = 0;  // the number of positive roots is sum(d_i - 1)
  for (int d : p.degrees) pos_roots += d - 1;
  if (p.positive_roots() != pos_roots)
    throw profile_error(p.type_name + ": rank vector does not sum to the root count");
  const Integer orbit_total = std::accumulate(p.orbit_multiset.begin(), p.orbit_multiset.end(),
                                              Integer(0), std::plus<Integer>());
  if (p.h_triangle.total() != p.catalan || orbit_total != p.catalan)
    throw profile_error(p.type_name + ": H-triangle or orbit data inconsistent with Catalan number");
}

RootSystemProfile make_i2_profile(int m) {
  RootSystemProfile p;
  p.type_name = "I2(" + std::to_string(m) + ")";
  p.n = 2;
  p.degrees = {m, 2};
  p.h = m;
  p.expected_rank_vector = rank_vector_from_degrees(p.degrees);
  p.catalan = catalan_number(p.degrees, p.h);
  p.h_triangle.counts[{0, 0}] = 1;
  p.h_triangle.counts[{1, 1}] = 2;
  if (m > 2) p.h_triangle.counts[{0, 1}] = m - 2;
  p.h_triangle.counts[{2, 2}] = 1;
  p.orbit_multiset = {2, m};
  std::sort(p.orbit_multiset.begin(), p.orbit_multiset.end());
  p.qt_summands = {{{0, m + 1}, {1, 1}}};
  p.parabolic_references = {{"A1"}, {"A1"}};
  validate_profile(p);
  return p;
}

RootSystemProfile profile_from_json(const std::string& name, const json& entry) {
  RootSystemProfile p;
  p.type_name = name;
  p.n = entry.at("n").get<int>();
  p.degrees = entry.at("degrees").get<std::vector<int>>();
  std::sort(p.degrees.rbegin(), p.degrees.rend());
  p.h = p.degrees.front();
  p.expected_rank_vector = rank_vector_from_degrees(p.degrees);
  p.catalan = catalan_number(p.degrees, p.h);
  p.oracle = entry.value("oracle", false);
  p.parabolic_references = entry.at("parabolic_references").get<std::vector<std::vector<std::string>>>();

  if (p.oracle) {
    const GradedPoset poset = reference_poset(name);
    if (rank_vector(poset) != p.expected_rank_vector)
      throw profile_error(name + ": oracle poset contradicts the declared degrees");
    p.h_triangle = h_triangle(poset);
    p.orbit_multiset = panyushev_orbits(poset).lengths();
  } else {
    for (const auto& row : entry.at("h_triangle")) {
      const int k = row.at(0).get<int>();
      const int m = row.at(1).get<int>();
      const long long count = row.at(2).get<long long>();
      if (count != 0) p.h_triangle.counts[{k, m}] = count;
    }
    p.orbit_multiset = entry.at("orbit_multiset").get<std::vector<int>>();
    std::sort(p.orbit_multiset.begin(), p.orbit_multiset.end());
    std::vector<std::pair<int, int>> summands;
    for (const auto& row : entry.at("qt_summands"))
      summands.emplace_back(row.at(0).get<int>(), row.at(1).get<int>());
    p.qt_summands = std::move(summands);
  }
  validate_profile(p);
  return p;
}

}  // namespace

std::string data_directory() {
  if (const char* env = std::getenv("ROOTPOSET_DATA_DIR"); env && *env) return env;
#ifdef ROOTPOSET_SOURCE_DATA_DIR
  return ROOTPOSET_SOURCE_DATA_DIR;
#else
  return "data";
#endif
}

std::vector<std::string> bundled_profile_names() {
  std::vector<std::string> names;
  for (const auto& [key, value] : profiles_json().items()) names.push_back(key);
  std::sort(names.begin(), names.end());
  return names;
}

RootSystemProfile profile_for(const std::string& type_name) {
  int m = 0;
  if (parse_i2(type_name, m)) return make_i2_profile(m);
  static std::map<std::string, RootSystemProfile> cache;
  {
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto it = cache.find(type_name);
    if (it != cache.end()) return it->second;
  }
  const json& all = profiles_json();
  auto it = all.find(type_name);
  if (it == all.end()) throw profile_error("unknown profile: " + type_name);
  RootSystemProfile p = profile_from_json(type_name, *it);
  std::lock_guard<std::mutex> lock(cache_mutex);
  cache.emplace(type_name, p);
  return p;
}

GradedPoset reference_poset(const std::string& type_name) {
  static std::map<std::string, GradedPoset> cache;
  {
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto it = cache.find(type_name);
    if (it != cache.end()) return it->second;
  }
  GradedPoset p = [&] {
    int m = 0;
    if (parse_i2(type_name, m)) return build_i2_poset(m);
    if (type_name == "H3") return build_h3_reference();
    return poset_from_roots(positive_roots_alpha(type_name));
  }();
  std::lock_guard<std::mutex> lock(cache_mutex);
  cache.emplace(type_name, p);
  return p;
}

GradedPoset reference_product(const std::vector<std::string>& components) {
  if (components.empty()) throw profile_error("empty parabolic component list");
  GradedPoset p = reference_poset(components.front());
  for (std::size_t k = 1; k < components.size(); ++k)
    p = disjoint_union(p, reference_poset(components[k]));
  return p;
}

}  // namespace rootposet
