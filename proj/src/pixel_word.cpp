#include "pw2ss/pixel_word.hpp"

#include <algorithm>
#include <cctype>

#include "pw2ss/errors.hpp"
#include "pw2ss/jsonl.hpp"

namespace pw2ss {

using nlohmann::json;

PixelWord PixelWord::make_text(std::string content, BBox box, std::optional<bool> click) {
    PixelWord w;
    w.kind = PixelWordKind::Text;
    w.text = std::move(content);
    w.bbox = box;
    w.clickable = click;
    return w;
}

PixelWord PixelWord::make_graphic(int category, BBox box, std::optional<bool> click) {
    PixelWord w;
    w.kind = PixelWordKind::Graphic;
    w.category = category;
    w.bbox = box;
    w.clickable = click;
    return w;
}

const std::array<std::string, kIconCategoryCount>& icon_taxonomy() {
    static const std::array<std::string, kIconCategoryCount> names = {
        "add",           "arrow_backward", "arrow_downward", "arrow_forward",
        "arrow_upward",  "avatar",         "calendar",       "call",
        "camera",        "cart",           "chat",           "check",
        "close",         "delete",         "download",       "edit",
        "favorite",      "filter",         "gallery",        "location",
        "menu",          "microphone",     "more",           "other",
        "pause",         "play",           "question_mark",  "refresh",
        "search",        "send",           "settings",       "share"};
    return names;
}

int other_icon_category() {
    static const int idx = map_icon_category("other");
    return idx;
}

int map_icon_category(const std::string& raw_label) {
    std::string lowered(raw_label.size(), '\0');
    std::transform(raw_label.begin(), raw_label.end(), lowered.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    const auto& names = icon_taxonomy();
    for (int i = 0; i < kIconCategoryCount; ++i)
        if (names[static_cast<std::size_t>(i)] == lowered) return i;
    // unknown labels collapse into "other"
    for (int i = 0; i < kIconCategoryCount; ++i)
        if (names[static_cast<std::size_t>(i)] == "other") return i;
    return 0;
}

const std::string& icon_category_name(int category) {
    return icon_taxonomy().at(static_cast<std::size_t>(category));
}

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

namespace {

json word_to_json(const PixelWord& w) {
    json j;
    j["bbox"] = {w.bbox.x_min, w.bbox.y_min, w.bbox.x_max, w.bbox.y_max};
    if (w.kind == PixelWordKind::Text) {
        j["kind"] = "text";
        j["text"] = w.text;
    } else {
        j["kind"] = "graphic";
        j["category"] = w.category;
    }
    if (w.clickable) j["clickable"] = *w.clickable;
    return j;
}

PixelWord word_from_json(const json& j) {
    const std::string kind = jsonl::require(j, "kind").get<std::string>();
    auto b = jsonl::require_box(j, "bbox");
    BBox box{b.x_min, b.y_min, b.x_max, b.y_max};
    if (!box.valid()) throw MalformedRecord("pixel word bbox is inverted");
    std::optional<bool> click;
    if (j.contains("clickable")) click = j["clickable"].get<bool>();
    if (kind == "text") {
        std::string text = jsonl::require(j, "text").get<std::string>();
        if (trim(text).empty()) throw MalformedRecord("text pixel word has empty text");
        return PixelWord::make_text(std::move(text), box, click);
    }
    if (kind == "graphic") {
        int category = jsonl::require(j, "category").get<int>();
        if (category < 0 || category >= kIconCategoryCount)
            throw MalformedRecord("graphic category out of range");
        return PixelWord::make_graphic(category, box, click);
    }
    throw MalformedRecord("unknown pixel word kind \"" + kind + "\"");
}

} // namespace

json screen_to_json(const ScreenSentence& s) {
    json j;
    j["screen_id"] = s.screen_id;
    j["width"] = s.screen_width;
    j["height"] = s.screen_height;
    j["pixel_words"] = json::array();
    for (const auto& w : s.pixel_words) j["pixel_words"].push_back(word_to_json(w));
    if (s.app_type) j["app_type"] = *s.app_type;
    if (!s.relations.empty()) {
        j["relations"] = json::array();
        for (const auto& r : s.relations) j["relations"].push_back({r.i, r.j, r.label});
    }
    if (s.raster_path) j["raster_path"] = *s.raster_path;
    return j;
}

ScreenSentence screen_from_json(const json& j) {
    ScreenSentence s;
    s.screen_id = jsonl::require(j, "screen_id").get<std::string>();
    s.screen_width = jsonl::require(j, "width").get<int>();
    s.screen_height = jsonl::require(j, "height").get<int>();
    for (const auto& w : jsonl::require(j, "pixel_words"))
        s.pixel_words.push_back(word_from_json(w));
    if (j.contains("app_type")) s.app_type = j["app_type"].get<int>();
    if (j.contains("relations")) {
        for (const auto& r : j["relations"]) {
            if (!r.is_array() || r.size() != 3)
                throw MalformedRecord("relation entries must be [i, j, label]");
            Relation rel{r[0].get<int>(), r[1].get<int>(), r[2].get<int>()};
            const int n = static_cast<int>(s.pixel_words.size());
            if (rel.i < 0 || rel.i >= n || rel.j < 0 || rel.j >= n || rel.i == rel.j)
                throw MalformedRecord("relation indices out of range or equal");
            s.relations.push_back(rel);
        }
    }
    if (j.contains("raster_path")) s.raster_path = j["raster_path"].get<std::string>();
    return s;
}

std::vector<ScreenSentence> read_screen_dataset(const std::string& path) {
    std::vector<ScreenSentence> out;
    jsonl::read(path, [&](std::size_t, const json& j) { out.push_back(screen_from_json(j)); });
    return out;
}

void write_screen_dataset(const std::string& path, const std::vector<ScreenSentence>& screens) {
    std::vector<json> records;
    records.reserve(screens.size());
    for (const auto& s : screens) records.push_back(screen_to_json(s));
    jsonl::write(path, records);
}

} // namespace pw2ss
