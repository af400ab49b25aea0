#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "pw2ss/geometry.hpp"

namespace pw2ss {

/// One node of a parsed View Hierarchy tree.
struct ViewNode {
    std::string class_name;
    BBox bounds;
    std::optional<std::string> text;
    bool clickable = false;
    std::vector<std::string> ancestors; // root has none; derived during parse
    std::vector<ViewNode> children;
};

struct ViewHierarchy {
    std::string screen_id;
    int screen_width = 0;
    int screen_height = 0;
    ViewNode root;
};

struct VhParseReport {
    int dropped_nodes = 0; // inverted-bounds nodes, subtrees included
};

/// Parses a VH JSON document. Node bounds are clamped to the screen
/// rectangle; nodes with inverted bounds are dropped with their whole
/// subtree and counted in the report.
/// Throws MalformedDocument / EmptyHierarchy.
ViewHierarchy parse_vh(const std::string& document, VhParseReport* report = nullptr);

/// Inverse of parse_vh: parse_vh(serialize_vh(vh)) reproduces vh exactly.
std::string serialize_vh(const ViewHierarchy& vh);

/// Depth-first pre-order walk over all nodes.
void visit_nodes(const ViewNode& root, const std::function<void(const ViewNode&)>& fn);

/// Childless nodes whose sides are both >= min_side and whose aspect ratio
/// max(w/h, h/w) is <= max_aspect, in depth-first pre-order.
std::vector<const ViewNode*> leaf_nodes(const ViewHierarchy& vh,
                                        double min_side = 8.0,
                                        double max_aspect = 20.0);

bool operator==(const ViewNode& a, const ViewNode& b);
inline bool operator==(const ViewHierarchy& a, const ViewHierarchy& b) {
    return a.screen_id == b.screen_id && a.screen_width == b.screen_width &&
           a.screen_height == b.screen_height && a.root == b.root;
}

} // namespace pw2ss
