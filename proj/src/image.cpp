#include "pw2ss/image.hpp"

#include <algorithm>
#include <fstream>
#include <unordered_map>

#include "pw2ss/errors.hpp"

namespace pw2ss {

Image::Image(int w, int h, Color fill) : width(w), height(h) {
    rgb.resize(3 * static_cast<std::size_t>(w) * h);
    for (std::size_t i = 0; i < rgb.size(); i += 3) {
        rgb[i] = fill[0];
        rgb[i + 1] = fill[1];
        rgb[i + 2] = fill[2];
    }
}

void Image::fill_rect(int x0, int y0, int x1, int y1, Color c) {
    x0 = std::max(x0, 0);
    y0 = std::max(y0, 0);
    x1 = std::min(x1, width);
    y1 = std::min(y1, height);
    for (int y = y0; y < y1; ++y)
        for (int x = x0; x < x1; ++x) set(x, y, c);
}

Image read_ppm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoFailure("cannot open " + path);
    std::string magic;
    in >> magic;
    if (magic != "P6") throw IoFailure(path + ": not a P6 PPM file");
    int w = 0, h = 0, maxval = 0;
    in >> w >> h >> maxval;
    if (!in || w <= 0 || h <= 0 || maxval != 255)
        throw IoFailure(path + ": bad PPM header");
    in.get(); // single whitespace byte after the header
    Image img(w, h);
    in.read(reinterpret_cast<char*>(img.rgb.data()),
            static_cast<std::streamsize>(img.rgb.size()));
    if (in.gcount() != static_cast<std::streamsize>(img.rgb.size()))
        throw IoFailure(path + ": truncated pixel data");
    return img;
}

void write_ppm(const Image& img, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoFailure("cannot write " + path);
    out << "P6\n" << img.width << " " << img.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(img.rgb.data()),
              static_cast<std::streamsize>(img.rgb.size()));
    if (!out) throw IoFailure("write failed for " + path);
}

Color most_frequent_color(const Image& img) {
    std::unordered_map<std::uint32_t, std::size_t> counts;
    for (std::size_t i = 0; i < img.rgb.size(); i += 3) {
        const std::uint32_t key = (static_cast<std::uint32_t>(img.rgb[i]) << 16) |
                                  (static_cast<std::uint32_t>(img.rgb[i + 1]) << 8) |
                                  img.rgb[i + 2];
        ++counts[key];
    }
    std::uint32_t best = 0;
    std::size_t best_count = 0;
    for (const auto& [key, count] : counts) {
        if (count > best_count || (count == best_count && key < best)) {
            best = key;
            best_count = count;
        }
    }
    return {static_cast<std::uint8_t>(best >> 16), static_cast<std::uint8_t>(best >> 8),
            static_cast<std::uint8_t>(best)};
}

} // namespace pw2ss
