// Canonical JSON output: insertion-ordered keys, %.12g floats. Emitting and
// re-emitting parsed output is byte-stable, which the CLI round-trip relies
// on.
#pragma once

#include <string>

#include <json.hpp>

namespace merodiff {

using Json = nlohmann::ordered_json;

std::string canonical_dump(const Json& j);

// Parse with errors mapped onto this library's error type.
Json parse_json(const std::string& text);

}  // namespace merodiff
