#pragma once

// Adapters between library values and the reference oracles, plus a parser
// for compositions written as 0^z1^w.

#include <cctype>
#include <regex>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "polycomp/composition.hpp"

namespace support {

inline oracle::Multiset as_multiset(const polycomp::LengthClass& c) {
  oracle::Multiset out;
  for (const auto& [comp, mult] : c.entries()) {
    for (int i = 0; i < mult; ++i) out.emplace_back(comp.zeros, comp.ones);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// All entries of a readout as one sorted multiset.
inline oracle::Multiset flatten(const polycomp::Readout& r) {
  oracle::Multiset out;
  for (const auto& [k, c] : r.classes()) {
    const auto part = as_multiset(c);
    out.insert(out.end(), part.begin(), part.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

// "0^41^3", "0^2", "1", "01^2", "0^21"...
inline oracle::Comp parse_comp(const std::string& token) {
  static const std::regex form(R"((0(?:\^(\d+?))?)?(1(?:\^(\d+))?)?)");
  std::smatch m;
  if (token.empty() || !std::regex_match(token, m, form)) throw std::invalid_argument("bad composition " + token);
  const int zeros = m[1].matched ? (m[2].matched ? std::stoi(m[2]) : 1) : 0;
  const int ones = m[3].matched ? (m[4].matched ? std::stoi(m[4]) : 1) : 0;
  return {zeros, ones};
}

// Comma separated, whitespace ignored.
inline oracle::Multiset parse_list(const std::string& text) {
  oracle::Multiset out;
  std::stringstream in(text);
  std::string token;
  while (std::getline(in, token, ',')) {
    token.erase(std::remove_if(token.begin(), token.end(), [](unsigned char c) { return std::isspace(c); }), token.end());
    if (!token.empty()) out.push_back(parse_comp(token));
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline polycomp::BitString bs(const std::string& s) { return polycomp::BitString::parse(s); }

}  // namespace support
