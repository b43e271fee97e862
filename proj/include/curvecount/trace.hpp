#pragma once

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "curvecount/count_value.hpp"

namespace curvecount {

// Derivation traces. Each node records which rule produced a value; the
// tags are part of the trace file schema and must not change.

namespace rule {
inline constexpr const char* kBaseSchubert = "base-schubert";
inline constexpr const char* kWeightShift = "eq9-shift";
inline constexpr const char* kSectionM = "eq4-m";
inline constexpr const char* kSplitting = "eq5-splitting";
inline constexpr const char* kSquareCheck = "eq7-check";
inline constexpr const char* kPointSquareCheck = "eq8-check";
inline constexpr const char* kGenus = "genus-eq10-13";
inline constexpr const char* kHyperplane = "hyperplane-rule";
inline constexpr const char* kVanish = "vanish";
}  // namespace rule

struct TraceNode {
    std::string key;
    std::string rule;
    Count value = 0;
    std::vector<std::shared_ptr<const TraceNode>> children;
};

using TracePtr = std::shared_ptr<const TraceNode>;

inline TracePtr make_trace(std::string key, const char* rule, Count value,
                           std::vector<TracePtr> children = {}) {
    auto node = std::make_shared<TraceNode>();
    node->key = std::move(key);
    node->rule = rule;
    node->value = std::move(value);
    node->children = std::move(children);
    return node;
}

/// Registry of finished subtrees so repeated subqueries attach the same
/// node. Serialization expands shared nodes in place, so trace files can
/// grow combinatorially; traces are opt-in for that reason.
class TraceBuilder {
  public:
    TracePtr find(const std::string& key) const {
        auto it = nodes_.find(key);
        return it == nodes_.end() ? nullptr : it->second;
    }

    void remember(const TracePtr& node) { nodes_.emplace(node->key, node); }

    /// Appends `node` to `children` unless an equal key is already there.
    static void attach(std::vector<TracePtr>& children, const TracePtr& node) {
        for (const auto& c : children)
            if (c->key == node->key) return;
        children.push_back(node);
    }

  private:
    std::map<std::string, TracePtr> nodes_;
};

inline nlohmann::ordered_json trace_to_json(const TraceNode& node) {
    nlohmann::ordered_json j;
    j["key"] = node.key;
    j["rule"] = node.rule;
    j["value"] = to_string(node.value);
    auto& kids = j["children"] = nlohmann::ordered_json::array();
    for (const auto& c : node.children) kids.push_back(trace_to_json(*c));
    return j;
}

}  // namespace curvecount
