#pragma once

#include <string>
#include <vector>

#include "rootposet/poset.hpp"

namespace rootposet {

// Positive roots in simple-root coordinates, generated from the Cartan
// data by reflection closure.  Supported: An, Bn, Cn, Dn (n bounded by
// the 64-element poset limit) and F4.
std::vector<std::vector<int>> positive_roots_alpha(const std::string& type_name);

// Root order: beta <= beta' iff beta' - beta is componentwise nonnegative.
GradedPoset poset_from_roots(const std::vector<std::vector<int>>& roots);

}  // namespace rootposet
