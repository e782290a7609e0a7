// mpigen/overlay.hpp - custom configuration entries and the merge pass
#pragma once

#include <string>
#include <vector>

#include "mpigen/api_model.hpp"

namespace mpigen {

// One function entry from a custom file.  Entries are complementary to the
// standard database: attributes, parameter overrides/additions, blocks, or
// whole new functions.
struct OverlayEntry {
    std::string function_name;
    AttrMap attributes;
    std::vector<ParameterSpec> parameters;
    std::vector<Block> blocks;
    SourceLocation location;

    bool operator==(const OverlayEntry&) const = default;
};

struct OverlayConfig {
    std::vector<OverlayEntry> entries;   // file order; later entries apply later

    bool operator==(const OverlayConfig&) const = default;
};

struct MergedRegistry {
    ApiRegistry functions;
    // Functions mentioned in at least one custom file, first-mention order.
    // Only these are generated; the rest stay for cross-reference.
    std::vector<std::string> generation_set;
    // Parallel to generation_set: label of the custom file that first
    // mentioned the function, for the per-group output layout.
    std::vector<std::string> generation_groups;

    bool in_generation_set(std::string_view name) const;
};

// Applies overlays onto the standard registry, in order.
//
//  - attributes: set/override per key; an empty value deletes the attribute
//  - parameters: matched by name, field-wise override (unset overlay fields
//    keep the standard values); unmatched names append at the end
//  - blocks: set/override by block name
//  - unknown function names create custom-origin functions
//
// A kind override that flips the parameter between scalar and pointer
// without an explicit pointer flag is reported as an error (likely typo);
// any kind override gets a warning.
MergedRegistry merge(const ApiRegistry& standard, const std::vector<OverlayConfig>& overlays,
                     Diagnostics& diags);

}  // namespace mpigen
