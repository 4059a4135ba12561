#pragma once

#include <cstdint>
#include <string>

#include <boost/rational.hpp>

namespace fraisse {

// Compare only against Rational values: mixed comparisons with int recurse
// forever under C++20 rewritten operators in this boost version.
using Rational = boost::rational<std::int64_t>;

// "p/q" or "p"; throws InputError on malformed text.
Rational parse_rational(const std::string& text);
std::string to_string(const Rational& r);

}  // namespace fraisse
