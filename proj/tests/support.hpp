#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "symflow/word.hpp"

namespace doctest {
template <>
struct StringMaker<std::vector<std::uint16_t>> {
  static String convert(const std::vector<std::uint16_t>& w) { return symflow::to_string(w).c_str(); }
};
template <>
struct StringMaker<std::vector<std::vector<std::uint16_t>>> {
  static String convert(const std::vector<std::vector<std::uint16_t>>& ws) {
    std::string s = "{";
    for (const auto& w : ws) s += symflow::to_string(w) + " ";
    return (s + "}").c_str();
  }
};
}  // namespace doctest
