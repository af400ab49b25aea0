#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

namespace pw2ss::jsonl {

/// Calls fn(line_number, record) for every non-empty line (1-based numbers).
/// Parse failures and Error exceptions thrown by fn are reported as
/// MalformedRecord with "path:line:" context.
void read(const std::string& path,
          const std::function<void(std::size_t, const nlohmann::json&)>& fn);

void write(const std::string& path, const std::vector<nlohmann::json>& records);

/// Fetches j[key], throwing MalformedRecord when absent.
const nlohmann::json& require(const nlohmann::json& j, const char* key);

/// Reads a 4-element array into a box.
struct BoxFields {
    double x_min, y_min, x_max, y_max;
};
BoxFields require_box(const nlohmann::json& j, const char* key);

} // namespace pw2ss::jsonl
