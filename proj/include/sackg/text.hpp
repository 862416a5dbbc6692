#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sackg::text {

bool is_space(char c);

std::string trim(std::string_view s);

// ASCII lowercasing; bytes >= 0x80 pass through untouched so UTF-8
// sequences are preserved.
std::string fold_case(std::string_view s);

// Runs of whitespace become a single ' '.
std::string collapse_whitespace(std::string_view s);

// trim + collapse internal whitespace + case-fold. The canonical form used
// for dedup keys, vocabulary membership and substring matching.
std::string normalize(std::string_view s);

std::vector<std::string> tokens(std::string_view s);

std::size_t count_tokens(std::string_view s);

// Non-overlapping occurrences of needle in hay, scanning left to right.
std::size_t count_occurrences(std::string_view hay, std::string_view needle);

bool contains_digit(std::string_view s);

// First signed decimal substring, e.g. "-3" in "age of -3", "20" in
// "20-25 degrees". Returns nullopt when no digit is present.
std::optional<double> first_number(std::string_view s);

std::string replace_all(std::string s, std::string_view from, std::string_view to);

}  // namespace sackg::text
