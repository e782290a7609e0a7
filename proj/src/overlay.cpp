#include "mpigen/overlay.hpp"

#include <algorithm>
#include <filesystem>

#include "mpigen/resolver.hpp"

namespace mpigen {

namespace {

// Group label for a custom file path: basename minus extension minus a
// trailing "_api", e.g. "c/pt2pt_api.txt" -> "pt2pt".
std::string group_label(const std::string& file) {
    std::string stem = std::filesystem::path(file).stem().string();
    if (stem.size() > 4 && stem.substr(stem.size() - 4) == "_api")
        stem = stem.substr(0, stem.size() - 4);
    return stem.empty() ? "custom" : stem;
}

void merge_parameter(FunctionSpec& fn, const ParameterSpec& incoming, bool standard_function,
                     const SourceLocation& loc, Diagnostics& diags) {
    ParameterSpec* existing = fn.find_parameter(incoming.name);
    if (!existing) {
        fn.parameters.push_back(incoming);
        return;
    }

    if (incoming.kind != existing->kind) {
        diags.warning(loc, "overlay overrides kind of parameter '" + incoming.name + "' in '" +
                               fn.name + "' (" + existing->kind + " -> " + incoming.kind + ")");
        if (standard_function && incoming.pointer_hint == PointerHint::unset) {
            ParameterSpec merged = *existing;
            merged.kind = incoming.kind;
            if (incoming.direction)
                merged.direction = incoming.direction;
            if (incoming.length_expr)
                merged.length_expr = incoming.length_expr;
            if (default_is_pointer(*existing) != default_is_pointer(merged)) {
                diags.error(loc, "overlay changes parameter '" + incoming.name + "' of '" +
                                     fn.name +
                                     "' between scalar and pointer arity without an explicit "
                                     "pointer flag; likely a typo");
                return;
            }
        }
    }

    existing->kind = incoming.kind;
    if (incoming.constant)
        existing->constant = incoming.constant;
    if (incoming.pointer_hint != PointerHint::unset)
        existing->pointer_hint = incoming.pointer_hint;
    if (incoming.direction)
        existing->direction = incoming.direction;
    if (incoming.length_expr)
        existing->length_expr = incoming.length_expr;
    if (incoming.description)
        existing->description = incoming.description;
}

void apply_entry(ApiRegistry& registry, const OverlayEntry& entry, Diagnostics& diags) {
    FunctionSpec* fn = registry.find(entry.function_name);
    bool is_new = fn == nullptr;
    if (is_new) {
        FunctionSpec created;
        created.name = entry.function_name;
        created.origin = Origin::custom;
        registry.insert(std::move(created));
        fn = registry.find(entry.function_name);
    }

    for (const auto& [key, value] : entry.attributes.items()) {
        if (value.empty())
            fn->attributes.erase(key);   // empty value suppresses the attribute
        else
            fn->attributes.set(key, value);
    }

    bool standard_function = fn->origin == Origin::standard;
    for (const ParameterSpec& p : entry.parameters)
        merge_parameter(*fn, p, standard_function, entry.location, diags);

    for (const Block& b : entry.blocks) {
        bool replaced = false;
        for (Block& existing : fn->blocks) {
            if (existing.name == b.name) {
                existing = b;
                replaced = true;
                break;
            }
        }
        if (!replaced)
            fn->blocks.push_back(b);
    }
}

}  // namespace

bool MergedRegistry::in_generation_set(std::string_view name) const {
    return std::find(generation_set.begin(), generation_set.end(), name) != generation_set.end();
}

MergedRegistry merge(const ApiRegistry& standard, const std::vector<OverlayConfig>& overlays,
                     Diagnostics& diags) {
    MergedRegistry merged;
    merged.functions = standard;

    for (const OverlayConfig& overlay : overlays) {
        for (const OverlayEntry& entry : overlay.entries) {
            apply_entry(merged.functions, entry, diags);
            if (!merged.in_generation_set(entry.function_name)) {
                merged.generation_set.push_back(entry.function_name);
                merged.generation_groups.push_back(group_label(entry.location.file));
            }
        }
    }
    return merged;
}

}  // namespace mpigen
