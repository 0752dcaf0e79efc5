#pragma once

#include <fstream>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "sqdiff/rational.hpp"

namespace sqdiff::testing {

inline const nlohmann::json& oracle() {
  static const nlohmann::json data = [] {
    std::ifstream in(std::string(SQDIFF_TEST_DATA) + "/oracle.json");
    return nlohmann::json::parse(in);
  }();
  return data;
}

inline ReducedRational rr(const std::string& s) {
  const auto slash = s.find('/');
  return reduce(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
}

inline RationalSet rset(const std::vector<std::string>& v) {
  std::vector<ReducedRational> out;
  for (const auto& s : v) out.push_back(rr(s));
  return RationalSet::from_elements(out);
}

inline RationalSet rset_json(const nlohmann::json& arr) { return rset(arr.get<std::vector<std::string>>()); }

}  // namespace sqdiff::testing
