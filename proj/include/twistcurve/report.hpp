#pragma once

#include <string>

#include <json.hpp>

namespace twistcurve {

// Serializes a JSON document reproducibly: object keys in sorted order
// (nlohmann's default storage), doubles printed with %.17g so every value
// round-trips, 2-space indentation, LF line endings, trailing newline.
// Two runs producing equal documents produce byte-identical text.
std::string dump_deterministic(const nlohmann::json& doc);

// Standard report envelope: {command, config, result, version, wall_ms}.
nlohmann::json make_report(const std::string& command,
                           const nlohmann::json& config,
                           const nlohmann::json& result, double wall_ms);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace twistcurve
