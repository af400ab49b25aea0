#pragma once

#include <string>
#include <vector>

#include "pw2ss/geometry.hpp"

namespace pw2ss {

/// One recognized text line in screen coordinates.
struct OcrLine {
    std::string text;
    BBox bbox;
    bool operator==(const OcrLine&) const = default;
};

struct OcrScreen {
    std::string screen_id;
    std::vector<OcrLine> lines;
};

/// OCR input file: JSONL, one screen per line:
/// {"screen_id": str, "lines": [{"text": str, "bbox": [x1,y1,x2,y2]}]}
std::vector<OcrScreen> read_ocr_file(const std::string& path);
void write_ocr_file(const std::string& path, const std::vector<OcrScreen>& screens);

} // namespace pw2ss
