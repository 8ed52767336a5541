#include "iospec/value.hpp"

#include <cctype>
#include <stdexcept>

namespace iospec {

std::string_view sortName(Sort sort) {
  switch (sort) {
    case Sort::Integer:
      return "int";
    case Sort::IntegerList:
      return "[int]";
    case Sort::Boolean:
      return "bool";
  }
  return "?";
}

Sort sortOf(const Value& value) {
  switch (value.index()) {
    case 0:
      return Sort::Integer;
    case 1:
      return Sort::IntegerList;
    default:
      return Sort::Boolean;
  }
}

std::string toString(const Integer& value) { return value.str(); }

Integer parseInteger(std::string_view text) {
  std::size_t pos = 0;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
    negative = text[pos] == '-';
    ++pos;
  }
  if (pos == text.size()) {
    throw std::invalid_argument("not an integer: '" + std::string(text) + "'");
  }
  Integer result = 0;
  for (; pos < text.size(); ++pos) {
    const auto c = static_cast<unsigned char>(text[pos]);
    if (!std::isdigit(c)) {
      throw std::invalid_argument("not an integer: '" + std::string(text) + "'");
    }
    result = result * 10 + (c - '0');
  }
  return negative ? Integer(-result) : result;
}

}  // namespace iospec
