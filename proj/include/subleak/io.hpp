#pragma once

#include <filesystem>
#include <string>

namespace subleak {

// Writes to a sibling temp file, then renames into place, so readers never
// observe a partial artifact.
void write_text_atomic(const std::filesystem::path& path,
                       const std::string& content);

std::string read_text(const std::filesystem::path& path);

} // namespace subleak
