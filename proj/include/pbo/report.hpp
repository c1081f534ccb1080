#pragma once

// Self-describing JSON reports: every report carries the full run
// configuration and a git-style blob hash of its canonical serialization.

#include <string>
#include <string_view>

#include "json.hpp"

namespace pbo::report {

/// SHA-1 of "blob <size>\0" + content, lower-case hex.
std::string git_blob_sha1(std::string_view content);

/// {"command", "config", "input_hash", "passed", "results"}; input_hash is the
/// blob hash of config.dump() (sorted keys, no whitespace).
nlohmann::json envelope(std::string_view command, const nlohmann::json& config, const nlohmann::json& results, bool passed);

/// Writes `j` to `path` (stdout for "" or "-"), indented by two spaces with a trailing newline.
void write_json(const nlohmann::json& j, const std::string& path);

}  // namespace pbo::report
