#pragma once

#include <doctest.h>

#include <filesystem>

#include "ecte/instances.hpp"

namespace testing {

inline ecte::Instance fixture(const char* name) {
  return ecte::load_instance(std::filesystem::path(ECTE_FIXTURE_DIR) / name);
}

inline ecte::NodeId node(const ecte::Instance& t, const char* name) { return t.at(name); }

}  // namespace testing
