#pragma once
// Parsers for the canonical display formats, inverse to the str() methods.

#include <string>

#include "spets/ratfun.hpp"

namespace spets {

CycloNum parse_cyclo(const std::string& s);
LaurentX parse_laurent(const std::string& s, const std::string& var = "x");
RatFun parse_ratfun(const std::string& s, const std::string& var = "x");

}  // namespace spets
