#include "mfrac/error.hpp"

namespace mfrac {

ParseError::ParseError(const std::string& message, std::size_t offset)
    : Error(message + " at offset " + std::to_string(offset)),
      offset_(offset),
      detail_(message) {}

}  // namespace mfrac
