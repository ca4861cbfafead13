// Python bindings for the main operations: poset handling, verification,
// the searches, orbit structure, the q,t computations and the D6
// restriction.  Built as _rootposet.
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "rootposet/h3_from_d6.hpp"
#include "rootposet/invariants.hpp"
#include "rootposet/poset.hpp"
#include "rootposet/profiles.hpp"
#include "rootposet/qt_poly.hpp"
#include "rootposet/search.hpp"

namespace py = pybind11;
using namespace rootposet;

namespace {

std::vector<Property> parse_properties(const std::vector<std::string>& names) {
  std::vector<Property> out;
  out.reserve(names.size());
  for (const auto& s : names) out.push_back(parse_property(s));
  return out;
}

std::vector<long long> coeffs_of(const UnivariatePolynomial& p) {
  std::vector<long long> out;
  for (int s = 0; s <= p.degree(); ++s)
    out.push_back(static_cast<long long>(p.coeff(s)));
  return out;
}

UnivariatePolynomial poly_from(const std::vector<long long>& coeffs) {
  std::vector<Integer> c(coeffs.begin(), coeffs.end());
  return UnivariatePolynomial(std::move(c));
}

}  // namespace

PYBIND11_MODULE(_rootposet, m) {
  m.doc() = "root poset enumeration and verification for noncrystallographic types";

  py::class_<GradedPoset>(m, "Poset")
      .def(py::init([](int n, const CoverList& covers) {
             return build_poset(n, covers);
           }),
           py::arg("n"), py::arg("covers"))
      .def_property_readonly("n", &GradedPoset::size)
      .def_property_readonly("covers", &GradedPoset::cover_list)
      .def("rank", &GradedPoset::rank_of, py::arg("x"))
      .def_property_readonly("rank_vector",
                             [](const GradedPoset& p) {
                               std::vector<int> v;
                               for (int x = 1; x <= p.size(); ++x) {
                                 const int r = p.rank_of(x);
                                 if (static_cast<int>(v.size()) < r) v.resize(r, 0);
                                 ++v[r - 1];
                               }
                               return v;
                             })
      .def("canonical", [](const GradedPoset& p) { return canonical_form(p); })
      .def("isomorphic", &is_isomorphic, py::arg("other"))
      .def("antichain_count",
           [](const GradedPoset& p) {
             long long c = 0;
             for_each_antichain(p, [&](Mask) { ++c; });
             return c;
           })
      .def("ideal_size_genfun",
           [](const GradedPoset& p) { return coeffs_of(ideal_size_genfun(p)); })
      .def("orbit_lengths",
           [](const GradedPoset& p) { return panyushev_orbits(p).lengths(); })
      .def("restricted_orbit_lengths",
           [](const GradedPoset& p) {
             return restricted_panyushev_orbits(p).lengths();
           })
      .def("__str__", [](const GradedPoset& p) { return to_text(p); })
      .def("__eq__",
           [](const GradedPoset& a, const GradedPoset& b) { return a == b; })
      .def("__repr__", [](const GradedPoset& p) {
        return "Poset(n=" + std::to_string(p.size()) + ")";
      });

  m.def("profile_names", &bundled_profile_names);
  m.def("data_directory", &data_directory);
  m.def("reference_poset", &reference_poset, py::arg("type_name"));
  m.def("read_poset_file", &read_poset_file, py::arg("path"));
  m.def("write_poset_file", &write_poset_file, py::arg("poset"), py::arg("path"));
  m.def("catalan", [](const std::string& type_name) {
    return static_cast<long long>(profile_for(type_name).catalan);
  });

  m.def(
      "verify",
      [](const GradedPoset& p, const std::string& profile_name,
         const std::vector<std::string>& properties) {
        const RootSystemProfile profile = profile_for(profile_name);
        const std::vector<Property> selection =
            properties.empty() ? all_properties() : parse_properties(properties);
        py::dict out;
        for (const auto& check : check_properties(p, profile, selection).checks) {
          out[py::str(property_name(check.property))] =
              py::make_tuple(check.pass, check.detail);
        }
        return out;
      },
      py::arg("poset"), py::arg("profile"),
      py::arg("properties") = std::vector<std::string>{});

  m.def(
      "search",
      [](const std::string& profile_name, const std::vector<std::string>& properties,
         int workers, long long node_limit, bool disable_pruning,
         const std::vector<std::vector<long long>>& genfun_targets) {
        SearchOptions o;
        o.filters = parse_properties(properties);
        o.workers = workers;
        o.node_limit = node_limit;
        o.disable_pruning = disable_pruning;
        for (const auto& t : genfun_targets) o.genfun_targets.push_back(poly_from(t));
        const SearchResult r = search_v2(profile_for(profile_name), o);
        py::dict stats;
        stats["nodes"] = r.nodes;
        stats["leaves"] = r.leaves;
        stats["units"] = r.units;
        stats["complete"] = r.complete;
        stats["matched_target"] = r.matched_target;
        return py::make_tuple(r.posets, stats);
      },
      py::arg("profile"), py::arg("properties"), py::arg("workers") = 1,
      py::arg("node_limit") = -1, py::arg("disable_pruning") = false,
      py::arg("genfun_targets") = std::vector<std::vector<long long>>{});

  m.def("h4_product_coeffs",
        [] { return coeffs_of(h4_product_formula()); });
  m.def("h4_conjecture_t1_coeffs",
        [] { return coeffs_of(eval_t1(conjecture_h4_polynomial())); });
  m.def("bracket_lengths", [] {
    std::vector<int> lengths;
    for (const auto& [shift, length] : decompose_q2_brackets(h4_product_formula()))
      lengths.push_back(length);
    return lengths;
  });
  m.def("hilbert_candidates", [] {
    std::vector<py::tuple> out;
    for (const auto& c : enumerate_hilbert_candidates())
      out.push_back(py::make_tuple(c.bracket_notation(), coeffs_of(eval_t1(c.expand()))));
    return out;
  });

  m.def("build_h3_poset", &build_h3_poset);
  m.def("h3_construction_trace", [] { return build_h3_construction().trace(); });
}
