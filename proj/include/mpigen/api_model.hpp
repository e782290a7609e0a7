// mpigen/api_model.hpp - in-memory API database: functions, parameters, kind maps
#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "mpigen/diagnostics.hpp"

namespace mpigen {

enum class Direction { in, out, inout };
enum class PointerHint { unset, forced_pointer, forced_value };
enum class Origin { standard, custom };

const char* to_string(Direction d);
std::optional<Direction> direction_from_string(std::string_view s);

struct ParameterSpec {
    std::string name;
    std::string kind;   // uppercase token, e.g. BUFFER, RANK, POLYXFER_NUM_ELEM_NNI
    std::optional<bool> constant;
    PointerHint pointer_hint = PointerHint::unset;
    std::optional<Direction> direction;
    std::optional<std::string> length_expr;
    std::optional<std::string> description;

    bool is_constant() const { return constant.value_or(false); }
    // Unspecified direction means input.
    Direction effective_direction() const { return direction.value_or(Direction::in); }

    bool operator==(const ParameterSpec&) const = default;
};

// Ordered key/value map for function directives (".desc", ".seealso", ...).
// Insertion order is preserved so serialization is byte-stable.
class AttrMap {
public:
    void set(std::string key, std::string value);
    void erase(std::string_view key);
    std::optional<std::string> get(std::string_view key) const;
    bool contains(std::string_view key) const { return get(key).has_value(); }

    const std::vector<std::pair<std::string, std::string>>& items() const { return items_; }
    bool empty() const { return items_.empty(); }
    std::size_t size() const { return items_.size(); }

    bool operator==(const AttrMap&) const = default;

private:
    std::vector<std::pair<std::string, std::string>> items_;
};

enum class BlockFlavor { comment, code };

// Custom comment/code block.  The body is verbatim source text between the
// delimiter lines, byte for byte, including the trailing newline of each
// body line.
struct Block {
    std::string name;
    BlockFlavor flavor = BlockFlavor::comment;
    std::string body;
    std::string indent;   // indentation of the opening delimiter line

    bool operator==(const Block&) const = default;
};

struct FunctionSpec {
    std::string name;   // canonical, prefix included (MPI_Send, MPIX_Await)
    std::vector<ParameterSpec> parameters;
    AttrMap attributes;          // keys carry the leading dot
    std::vector<Block> blocks;   // unique names per function
    Origin origin = Origin::standard;

    const ParameterSpec* find_parameter(std::string_view pname) const;
    ParameterSpec* find_parameter(std::string_view pname);
    const Block* find_block(std::string_view bname) const;

    bool operator==(const FunctionSpec&) const = default;
};

// Ordered function database.  Iteration order equals insertion order so
// every downstream emitter is byte-stable across runs.
class ApiRegistry {
public:
    // Insert appends new names and replaces existing ones in place.
    void insert(FunctionSpec fn);

    const FunctionSpec* find(std::string_view name) const;
    FunctionSpec* find(std::string_view name);
    bool contains(std::string_view name) const { return find(name) != nullptr; }

    std::size_t size() const { return functions_.size(); }
    bool empty() const { return functions_.empty(); }
    const std::vector<FunctionSpec>& functions() const { return functions_; }

    auto begin() const { return functions_.begin(); }
    auto end() const { return functions_.end(); }

    bool operator==(const ApiRegistry& other) const { return functions_ == other.functions_; }

private:
    std::vector<FunctionSpec> functions_;
    std::unordered_map<std::string, std::size_t> index_;
};

// One kind->type table, optionally inheriting from a base table.
struct KindTable {
    std::string name;
    std::optional<std::string> base;
    std::vector<std::pair<std::string, std::string>> entries;   // declaration order

    const std::string* local_lookup(std::string_view kind) const;
    bool operator==(const KindTable&) const = default;
};

class KindMapSet {
public:
    void add_table(KindTable table);
    const KindTable* find_table(std::string_view name) const;
    bool has_table(std::string_view name) const { return find_table(name) != nullptr; }
    const std::vector<KindTable>& tables() const { return tables_; }

    // Validates every .base reference resolves and the chains are acyclic.
    // Reports through diags; returns false when invalid.
    bool validate(Diagnostics& diags, const SourceLocation& loc) const;

    bool operator==(const KindMapSet&) const = default;

private:
    std::vector<KindTable> tables_;
};

// Looks up a kind in the named table, falling back along the .base chain.
// Throws UnknownTableError / UnknownKindError.
const std::string& kindmap_lookup(const KindMapSet& maps, std::string_view table,
                                  std::string_view kind);

}  // namespace mpigen
