#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace msp {

// Throws Error(kIoError) when the file cannot be opened.
std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view content);

}  // namespace msp
