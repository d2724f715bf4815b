#pragma once

#include <string>
#include <string_view>

namespace chronograph {

// Hex-encoded SHA-256; used for the run manifest's input/output digests.
std::string sha256_hex(std::string_view bytes);
std::string sha256_file_hex(const std::string& path);

}  // namespace chronograph
