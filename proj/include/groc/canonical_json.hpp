#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

namespace groc {

using json = nlohmann::json;

/// Deterministic compact dump: object keys sorted, integers verbatim, floats
/// printed with exactly six decimals. Throws on NaN or infinity.
std::string canonical_dump(const json& value);

/// Same layout with two-space indentation, for human-facing reports.
std::string canonical_dump_pretty(const json& value);

/// Lowercase hex SHA-256 of the bytes.
std::string sha256_hex(std::string_view bytes);

/// 64-bit FNV-1a, lowercase hex (16 chars). Used for fixture keys.
std::string fnv1a_hex(std::string_view bytes);

}  // namespace groc
