#include "pw2ss/ocr.hpp"

#include "pw2ss/errors.hpp"
#include "pw2ss/jsonl.hpp"
#include "pw2ss/pixel_word.hpp"

namespace pw2ss {

using nlohmann::json;

std::vector<OcrScreen> read_ocr_file(const std::string& path) {
    std::vector<OcrScreen> out;
    jsonl::read(path, [&](std::size_t, const json& j) {
        OcrScreen screen;
        screen.screen_id = jsonl::require(j, "screen_id").get<std::string>();
        for (const auto& line : jsonl::require(j, "lines")) {
            OcrLine l;
            l.text = jsonl::require(line, "text").get<std::string>();
            if (trim(l.text).empty()) throw MalformedRecord("OCR line has empty text");
            auto b = jsonl::require_box(line, "bbox");
            l.bbox = BBox{b.x_min, b.y_min, b.x_max, b.y_max};
            if (!l.bbox.valid()) throw MalformedRecord("OCR line bbox is inverted");
            screen.lines.push_back(std::move(l));
        }
        out.push_back(std::move(screen));
    });
    return out;
}

void write_ocr_file(const std::string& path, const std::vector<OcrScreen>& screens) {
    std::vector<json> records;
    for (const auto& s : screens) {
        json j;
        j["screen_id"] = s.screen_id;
        j["lines"] = json::array();
        for (const auto& l : s.lines) {
            json lj;
            lj["text"] = l.text;
            lj["bbox"] = {l.bbox.x_min, l.bbox.y_min, l.bbox.x_max, l.bbox.y_max};
            j["lines"].push_back(lj);
        }
        records.push_back(std::move(j));
    }
    jsonl::write(path, records);
}

} // namespace pw2ss
