#pragma once

#include <cstdint>

#include "chronograph/error.hpp"

namespace chronograph {

// Malformed or truncated XML. `last_page_end` is the byte length of the
// intact prefix: the offset just past the final complete </page>.
class XmlParseError : public Error {
  public:
    XmlParseError(const std::string& what, std::uint64_t error_offset,
                  std::uint64_t last_page_end)
        : Error(ErrorKind::Input, what),
          error_offset(error_offset),
          last_page_end(last_page_end) {}

    std::uint64_t error_offset = 0;
    std::uint64_t last_page_end = 0;
};

}  // namespace chronograph
