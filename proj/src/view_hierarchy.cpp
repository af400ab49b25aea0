#include "pw2ss/view_hierarchy.hpp"

#include <json.hpp>

#include "pw2ss/errors.hpp"

namespace pw2ss {
namespace {

using nlohmann::json;

int count_subtree(const json& node) {
    int n = 1;
    if (node.contains("children"))
        for (const auto& c : node["children"]) n += count_subtree(c);
    return n;
}

// Returns nullopt when the node (and its subtree) is dropped.
std::optional<ViewNode> parse_node(const json& j, double screen_w, double screen_h,
                                   const std::vector<std::string>& ancestors,
                                   VhParseReport& report) {
    if (!j.is_object() || !j.contains("class") || !j.contains("bounds") ||
        !j["class"].is_string() || !j["bounds"].is_array() || j["bounds"].size() != 4)
        throw MalformedDocument("VH node missing \"class\" or 4-element \"bounds\"");

    BBox raw{j["bounds"][0].get<double>(), j["bounds"][1].get<double>(),
             j["bounds"][2].get<double>(), j["bounds"][3].get<double>()};
    if (raw.x_min > raw.x_max || raw.y_min > raw.y_max) {
        report.dropped_nodes += count_subtree(j);
        return std::nullopt;
    }

    ViewNode node;
    node.class_name = j["class"].get<std::string>();
    node.bounds = raw.clamped(screen_w, screen_h);
    node.clickable = j.value("clickable", false);
    if (j.contains("text") && j["text"].is_string())
        node.text = j["text"].get<std::string>();
    node.ancestors = ancestors;

    if (j.contains("children")) {
        if (!j["children"].is_array())
            throw MalformedDocument("VH node \"children\" must be an array");
        auto child_ancestors = ancestors;
        child_ancestors.push_back(node.class_name);
        for (const auto& c : j["children"]) {
            auto child = parse_node(c, screen_w, screen_h, child_ancestors, report);
            if (child) node.children.push_back(std::move(*child));
        }
    }
    return node;
}

json node_to_json(const ViewNode& n) {
    json j;
    j["class"] = n.class_name;
    j["bounds"] = {n.bounds.x_min, n.bounds.y_min, n.bounds.x_max, n.bounds.y_max};
    j["clickable"] = n.clickable;
    if (n.text) j["text"] = *n.text;
    j["children"] = json::array();
    for (const auto& c : n.children) j["children"].push_back(node_to_json(c));
    return j;
}

} // namespace

ViewHierarchy parse_vh(const std::string& document, VhParseReport* report) {
    json j = json::parse(document, nullptr, false);
    if (j.is_discarded() || !j.is_object())
        throw MalformedDocument("document is not a JSON object");
    if (!j.contains("screen_id") || !j.contains("width") || !j.contains("height") ||
        !j.contains("root"))
        throw MalformedDocument("document missing screen_id/width/height/root");
    if (!j["width"].is_number_integer() || !j["height"].is_number_integer() ||
        j["width"].get<int>() <= 0 || j["height"].get<int>() <= 0)
        throw MalformedDocument("screen dimensions must be positive integers");

    ViewHierarchy vh;
    vh.screen_id = j["screen_id"].get<std::string>();
    vh.screen_width = j["width"].get<int>();
    vh.screen_height = j["height"].get<int>();

    VhParseReport local;
    auto root = parse_node(j["root"], vh.screen_width, vh.screen_height, {}, local);
    if (report) *report = local;
    if (!root) throw EmptyHierarchy("root node has inverted bounds");
    vh.root = std::move(*root);
    return vh;
}

std::string serialize_vh(const ViewHierarchy& vh) {
    json j;
    j["screen_id"] = vh.screen_id;
    j["width"] = vh.screen_width;
    j["height"] = vh.screen_height;
    j["root"] = node_to_json(vh.root);
    return j.dump();
}

void visit_nodes(const ViewNode& root, const std::function<void(const ViewNode&)>& fn) {
    fn(root);
    for (const auto& c : root.children) visit_nodes(c, fn);
}

std::vector<const ViewNode*> leaf_nodes(const ViewHierarchy& vh, double min_side,
                                        double max_aspect) {
    std::vector<const ViewNode*> out;
    visit_nodes(vh.root, [&](const ViewNode& n) {
        if (!n.children.empty()) return;
        const double w = n.bounds.width(), h = n.bounds.height();
        if (w < min_side || h < min_side) return;
        if (std::max(w / h, h / w) > max_aspect) return;
        out.push_back(&n);
    });
    return out;
}

bool operator==(const ViewNode& a, const ViewNode& b) {
    return a.class_name == b.class_name && a.bounds == b.bounds && a.text == b.text &&
           a.clickable == b.clickable && a.ancestors == b.ancestors &&
           a.children == b.children;
}

} // namespace pw2ss
