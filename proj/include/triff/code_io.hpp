#pragma once

// Code file format: UTF-8 text, a required header line "b=<b> k=<k> n=<n>",
// then one codeword per line as contiguous digits. Lines starting with '#'
// are comments.

#include <filesystem>
#include <string>
#include <string_view>

#include "triff/code.hpp"

namespace triff {

// Throws std::runtime_error with a "line N:" prefix on malformed input.
Code parse_code(std::string_view text);

std::string render_code(const Code& code);

Code read_code_file(const std::filesystem::path& path);
void write_code_file(const std::filesystem::path& path, const Code& code);

}  // namespace triff
