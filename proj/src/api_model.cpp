#include "mpigen/api_model.hpp"

#include <set>

namespace mpigen {

const char* to_string(Direction d) {
    switch (d) {
        case Direction::in:
            return "in";
        case Direction::out:
            return "out";
        case Direction::inout:
            return "inout";
    }
    return "in";
}

std::optional<Direction> direction_from_string(std::string_view s) {
    if (s == "in")
        return Direction::in;
    if (s == "out")
        return Direction::out;
    if (s == "inout")
        return Direction::inout;
    return std::nullopt;
}

void AttrMap::set(std::string key, std::string value) {
    for (auto& [k, v] : items_) {
        if (k == key) {
            v = std::move(value);
            return;
        }
    }
    items_.emplace_back(std::move(key), std::move(value));
}

void AttrMap::erase(std::string_view key) {
    for (auto it = items_.begin(); it != items_.end(); ++it) {
        if (it->first == key) {
            items_.erase(it);
            return;
        }
    }
}

std::optional<std::string> AttrMap::get(std::string_view key) const {
    for (const auto& [k, v] : items_) {
        if (k == key)
            return v;
    }
    return std::nullopt;
}

const ParameterSpec* FunctionSpec::find_parameter(std::string_view pname) const {
    for (const auto& p : parameters) {
        if (p.name == pname)
            return &p;
    }
    return nullptr;
}

ParameterSpec* FunctionSpec::find_parameter(std::string_view pname) {
    for (auto& p : parameters) {
        if (p.name == pname)
            return &p;
    }
    return nullptr;
}

const Block* FunctionSpec::find_block(std::string_view bname) const {
    for (const auto& b : blocks) {
        if (b.name == bname)
            return &b;
    }
    return nullptr;
}

void ApiRegistry::insert(FunctionSpec fn) {
    auto it = index_.find(fn.name);
    if (it != index_.end()) {
        functions_[it->second] = std::move(fn);
        return;
    }
    index_.emplace(fn.name, functions_.size());
    functions_.push_back(std::move(fn));
}

const FunctionSpec* ApiRegistry::find(std::string_view name) const {
    auto it = index_.find(std::string(name));
    return it == index_.end() ? nullptr : &functions_[it->second];
}

FunctionSpec* ApiRegistry::find(std::string_view name) {
    auto it = index_.find(std::string(name));
    return it == index_.end() ? nullptr : &functions_[it->second];
}

const std::string* KindTable::local_lookup(std::string_view kind) const {
    for (const auto& [k, v] : entries) {
        if (k == kind)
            return &v;
    }
    return nullptr;
}

void KindMapSet::add_table(KindTable table) {
    tables_.push_back(std::move(table));
}

const KindTable* KindMapSet::find_table(std::string_view name) const {
    for (const auto& t : tables_) {
        if (t.name == name)
            return &t;
    }
    return nullptr;
}

bool KindMapSet::validate(Diagnostics& diags, const SourceLocation& loc) const {
    bool ok = true;
    for (const auto& t : tables_) {
        if (!t.base)
            continue;
        std::set<std::string> seen{t.name};
        const KindTable* cur = &t;
        while (cur->base) {
            const KindTable* parent = find_table(*cur->base);
            if (!parent) {
                diags.error(loc, "table '" + cur->name + "' names unknown base '" +
                                     *cur->base + "'");
                ok = false;
                break;
            }
            if (!seen.insert(parent->name).second) {
                diags.error(loc, "base chain of table '" + t.name + "' forms a cycle at '" +
                                     parent->name + "'");
                ok = false;
                break;
            }
            cur = parent;
        }
    }
    return ok;
}

const std::string& kindmap_lookup(const KindMapSet& maps, std::string_view table,
                                  std::string_view kind) {
    const KindTable* t = maps.find_table(table);
    if (!t)
        throw UnknownTableError("unknown kind table '" + std::string(table) + "'");
    std::set<std::string> seen;
    while (t) {
        if (const std::string* v = t->local_lookup(kind))
            return *v;
        if (!t->base || !seen.insert(t->name).second)
            break;
        t = maps.find_table(*t->base);
    }
    throw UnknownKindError("kind '" + std::string(kind) + "' not found in table '" +
                           std::string(table) + "' or its base chain");
}

}  // namespace mpigen
