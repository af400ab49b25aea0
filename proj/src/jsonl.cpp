#include "pw2ss/jsonl.hpp"

#include <fstream>

#include "pw2ss/errors.hpp"

namespace pw2ss::jsonl {

using nlohmann::json;

void read(const std::string& path,
          const std::function<void(std::size_t, const json&)>& fn) {
    std::ifstream in(path);
    if (!in) throw IoFailure("cannot open " + path);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        json j = json::parse(line, nullptr, false);
        if (j.is_discarded())
            throw MalformedRecord(path + ":" + std::to_string(line_no) + ": invalid JSON");
        try {
            fn(line_no, j);
        } catch (const MalformedRecord& e) {
            throw MalformedRecord(path + ":" + std::to_string(line_no) + ": " + e.what());
        }
    }
}

void write(const std::string& path, const std::vector<json>& records) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoFailure("cannot write " + path);
    for (const auto& r : records) out << r.dump() << '\n';
    if (!out) throw IoFailure("write failed for " + path);
}

const json& require(const json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end())
        throw MalformedRecord(std::string("missing required field \"") + key + "\"");
    return *it;
}

BoxFields require_box(const json& j, const char* key) {
    const json& b = require(j, key);
    if (!b.is_array() || b.size() != 4)
        throw MalformedRecord(std::string("field \"") + key + "\" must be a 4-element array");
    return BoxFields{b[0].get<double>(), b[1].get<double>(), b[2].get<double>(),
                     b[3].get<double>()};
}

} // namespace pw2ss::jsonl
