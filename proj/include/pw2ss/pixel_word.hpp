#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "pw2ss/geometry.hpp"

namespace pw2ss {

enum class PixelWordKind { Text, Graphic };

/// Atomic visual component of a screen: a text line or a graphic.
struct PixelWord {
    PixelWordKind kind = PixelWordKind::Text;
    std::string text;  // Text kind only; non-empty after trimming
    int category = 0;  // Graphic kind only; index into the icon taxonomy
    BBox bbox;
    std::optional<bool> clickable;

    static PixelWord make_text(std::string content, BBox box,
                               std::optional<bool> click = std::nullopt);
    static PixelWord make_graphic(int category, BBox box,
                                  std::optional<bool> click = std::nullopt);
    bool operator==(const PixelWord&) const = default;
};

struct Relation {
    int i = 0;
    int j = 0;
    int label = 0; // 1 = related, 0 = unrelated
    bool operator==(const Relation&) const = default;
};

/// All Pixel-Words of one screen plus optional task labels.
struct ScreenSentence {
    std::string screen_id;
    int screen_width = 0;
    int screen_height = 0;
    std::vector<PixelWord> pixel_words;
    std::optional<int> app_type;
    std::vector<Relation> relations;
    std::optional<std::string> raster_path;
    bool operator==(const ScreenSentence&) const = default;
};

inline constexpr int kIconCategoryCount = 32;

/// The 32-entry icon taxonomy (31 named categories plus "other"),
/// in canonical index order.
const std::array<std::string, kIconCategoryCount>& icon_taxonomy();

/// Index of the "other" category.
int other_icon_category();

/// Case-insensitive exact match against the taxonomy; unknown labels map
/// to "other".
int map_icon_category(const std::string& raw_label);

const std::string& icon_category_name(int category);

/// Whitespace-trimmed copy of s.
std::string trim(const std::string& s);

/// Dataset I/O in the ScreenSentence JSONL schema.
std::vector<ScreenSentence> read_screen_dataset(const std::string& path);
void write_screen_dataset(const std::string& path, const std::vector<ScreenSentence>& screens);

} // namespace pw2ss
