#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace iospec {

// Unbounded integers; sums over long histories must never wrap.
using Integer = boost::multiprecision::cpp_int;

enum class Sort { Integer, IntegerList, Boolean };

std::string_view sortName(Sort sort);

// Result of evaluating a term. The alternative always matches the term's sort.
using Value = std::variant<Integer, std::vector<Integer>, bool>;

Sort sortOf(const Value& value);

std::string toString(const Integer& value);

// Parses an optionally signed decimal literal. Throws std::invalid_argument.
Integer parseInteger(std::string_view text);

}  // namespace iospec
