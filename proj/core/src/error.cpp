#include "samestats/error.hpp"

namespace samestats {

ParseError::ParseError(const std::string& what, std::size_t offset)
    : Error(what + " (at offset " + std::to_string(offset) + ")"), offset_(offset) {}

}  // namespace samestats
