#pragma once

#include <string>

#include <json.hpp>

#include "ellk3/lattice.hpp"

namespace ellk3 {

// Wire schema for a Chern vector, rationals as decimal-free "p/q" strings:
//   {"n": "1", "theta": "-3/2", "fiber": "0", "ch2": "1/2"}
nlohmann::json chern_to_json(const ChernVector& v);
ChernVector chern_from_json(const nlohmann::json& j);

ChernVector chern_from_string(const std::string& text);
std::string chern_to_string(const ChernVector& v);

// Divisors on the command line are "a,b" meaning a*Theta + b*f.
DivisorClass divisor_from_string(const std::string& text);
std::string divisor_to_string(const DivisorClass& d);

}  // namespace ellk3
