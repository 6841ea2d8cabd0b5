#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace cam::util {

std::string read_file(const std::filesystem::path& path);

/// Writes via a sibling temp file and rename, so readers never observe a
/// half-written file. The temp file is removed on failure.
void write_file_atomic(const std::filesystem::path& path, std::string_view data);

}  // namespace cam::util
