#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace cam::util {

/// Strict UTF-8 check: rejects overlongs, surrogates and code points past U+10FFFF.
bool valid_utf8(std::string_view bytes);

/// Code points in a valid UTF-8 string.
std::size_t code_points(std::string_view text);

/// Length in code points of the longest line (split on LF, CR stripped).
std::size_t longest_line(std::string_view text);

std::string to_lower(std::string_view s);
bool ends_with_ci(std::string_view s, std::string_view suffix);

/// Lowercase hex SHA-256 digest.
std::string sha256_hex(std::string_view data);

/// ISO-8601 UTC timestamp with second precision, e.g. 2024-01-02T03:04:05Z.
std::string format_utc(long long epoch_seconds);
/// Parses an RFC 7231 HTTP date ("Tue, 15 Nov 1994 08:12:31 GMT").
std::optional<long long> parse_http_date(std::string_view text);
/// Parses the output of format_utc.
std::optional<long long> parse_utc(std::string_view text);

}  // namespace cam::util
