// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The Logoscope Authors

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace logoscope {

namespace fs = std::filesystem;

// Throws Error(kIo, "MissingFile") when the file cannot be opened.
std::string read_file(const fs::path& path);

// Writes to a sibling temporary file and renames it into place.
void write_file_atomic(const fs::path& path, std::string_view content);

void append_to_file(const fs::path& path, std::string_view content);

// Splits on '\n', dropping a trailing '\r' from each line. A final empty line
// after the last newline is not returned.
std::vector<std::string> split_lines(std::string_view text);

std::vector<std::string_view> split(std::string_view text, char sep);

std::string_view trim(std::string_view s);

// 64-bit FNV-1a, used for stable opaque identifiers.
std::uint64_t fnv1a64(std::string_view data);
std::string hex64(std::uint64_t v);

}  // namespace logoscope
