#include "liftlab/error.hpp"

namespace liftlab {

namespace {

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ", ";
    out += '\'' + items[i] + '\'';
  }
  return out;
}

}  // namespace

ParseError::ParseError(std::size_t offset, std::vector<std::string> expected,
                       const std::string& found)
    : Error("parse error at offset " + std::to_string(offset) + ": expected one of " +
            join(expected) + ", found '" + found + "'"),
      offset_(offset),
      expected_(std::move(expected)) {}

UnknownVariable::UnknownVariable(std::size_t offset, const std::string& name)
    : Error("unknown variable '" + name + "' at offset " + std::to_string(offset)),
      offset_(offset) {}

UnknownFunction::UnknownFunction(std::size_t offset, const std::string& name)
    : Error("unknown function '" + name + "' at offset " + std::to_string(offset)),
      offset_(offset) {}

}  // namespace liftlab
