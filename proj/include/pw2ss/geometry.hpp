#pragma once

#include <algorithm>

namespace pw2ss {

/// Axis-aligned box in screen space, origin top-left, real-valued pixels.
struct BBox {
    double x_min = 0.0;
    double y_min = 0.0;
    double x_max = 0.0;
    double y_max = 0.0;

    double width() const { return x_max - x_min; }
    double height() const { return y_max - y_min; }
    double area() const { return width() * height(); }
    bool valid() const { return x_min <= x_max && y_min <= y_max; }

    double center_x() const { return 0.5 * (x_min + x_max); }
    double center_y() const { return 0.5 * (y_min + y_max); }

    /// Closed containment of a point.
    bool contains(double x, double y) const {
        return x >= x_min && x <= x_max && y >= y_min && y <= y_max;
    }

    /// Closed containment of a whole box.
    bool contains(const BBox& b) const {
        return b.x_min >= x_min && b.y_min >= y_min && b.x_max <= x_max && b.y_max <= y_max;
    }

    BBox clamped(double w, double h) const {
        return BBox{std::clamp(x_min, 0.0, w), std::clamp(y_min, 0.0, h),
                    std::clamp(x_max, 0.0, w), std::clamp(y_max, 0.0, h)};
    }

    /// Intersection; may be degenerate (zero area) or inverted when disjoint.
    BBox intersect(const BBox& b) const {
        return BBox{std::max(x_min, b.x_min), std::max(y_min, b.y_min),
                    std::min(x_max, b.x_max), std::min(y_max, b.y_max)};
    }

    bool operator==(const BBox& b) const = default;
};

/// Positive-area overlap between two boxes.
double intersection_area(const BBox& a, const BBox& b);

/// Intersection over union; 0 when the union has zero area.
double iou(const BBox& a, const BBox& b);

/// True iff the center of `pred` lies inside `gt` (boundary inclusive).
bool center_hit(const BBox& pred, const BBox& gt);

} // namespace pw2ss
