#pragma once

#include <nlohmann/json_fwd.hpp>

#include <filesystem>
#include <string>

namespace vadam::cli {

/// Shortest exact decimal representation of a double ('.' decimal point,
/// locale independent).
std::string format_double(double value);

/// Writes to `<path>.tmp` and renames into place, so readers never observe
/// a partial file.
void atomic_write(const std::filesystem::path& path, const std::string& content);

/// atomic_write of json.dump(2) plus a trailing newline.
void write_json(const std::filesystem::path& path, const nlohmann::json& value);

} // namespace vadam::cli
