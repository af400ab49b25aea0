#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace pw2ss {

using Color = std::array<std::uint8_t, 3>;

/// 8-bit RGB raster, row-major.
struct Image {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> rgb; // 3 * width * height bytes

    Image() = default;
    Image(int w, int h, Color fill = {255, 255, 255});

    Color get(int x, int y) const {
        const std::size_t i = 3 * (static_cast<std::size_t>(y) * width + x);
        return {rgb[i], rgb[i + 1], rgb[i + 2]};
    }
    void set(int x, int y, Color c) {
        if (x < 0 || y < 0 || x >= width || y >= height) return;
        const std::size_t i = 3 * (static_cast<std::size_t>(y) * width + x);
        rgb[i] = c[0];
        rgb[i + 1] = c[1];
        rgb[i + 2] = c[2];
    }
    /// Fills pixels with x in [x0, x1) and y in [y0, y1), clipped.
    void fill_rect(int x0, int y0, int x1, int y1, Color c);
};

/// Binary PPM (P6, maxval 255).
Image read_ppm(const std::string& path);
void write_ppm(const Image& img, const std::string& path);

/// The single most frequent color; ties broken by smallest (r, g, b).
Color most_frequent_color(const Image& img);

} // namespace pw2ss
