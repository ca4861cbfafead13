#pragma once

#include <string>
#include <vector>

#include "rootposet/invariants.hpp"
#include "rootposet/poset.hpp"

namespace rootposet {

struct profile_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Directory holding profiles.json and fixtures/.  Resolution order:
// ROOTPOSET_DATA_DIR environment variable, then the source-tree default.
std::string data_directory();

// Names with bundled profile data (noncrystallographic tables plus
// crystallographic oracle types).  I2(m) profiles are synthesized for
// any m >= 3 and are not listed here.
std::vector<std::string> bundled_profile_names();

// Profile by type name, e.g. "H4" or "I2(7)".  Oracle profiles get their
// H-triangle and orbit multiset computed from the root-data poset.
RootSystemProfile profile_for(const std::string& type_name);

// A root poset by type name: crystallographic types from root data,
// I2(m) and H3 from their known unique posets.
GradedPoset reference_poset(const std::string& type_name);

// Disjoint union of reference posets, for parabolic component lists.
GradedPoset reference_product(const std::vector<std::string>& components);

}  // namespace rootposet
