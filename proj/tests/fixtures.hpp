#pragma once

#include <string>

#include "stunted/serialize.hpp"

namespace stunted::testing {

inline std::string fixture_path(const std::string& name) {
  return std::string(STUNTED_FIXTURE_DIR) + "/" + name + ".json";
}

inline SimplicialSetFile load_fixture(const std::string& name) { return load_simplicial_set(fixture_path(name)); }

}  // namespace stunted::testing
