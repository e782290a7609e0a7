#include "mpigen/parser.hpp"

#include <cctype>
#include <set>
#include <sstream>

#include "nlohmann/json.hpp"

namespace mpigen {

namespace {

using ojson = nlohmann::ordered_json;

struct Line {
    std::string_view text;   // without trailing newline
    int number = 0;
};

std::vector<Line> split_lines(std::string_view text) {
    std::vector<Line> lines;
    int number = 1;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        if (nl == std::string_view::npos) {
            if (pos < text.size())
                lines.push_back({text.substr(pos), number});
            break;
        }
        lines.push_back({text.substr(pos, nl - pos), number});
        pos = nl + 1;
        ++number;
    }
    return lines;
}

std::string_view ltrim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    return s;
}

std::string_view rtrim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

std::string_view trim(std::string_view s) {
    return rtrim(ltrim(s));
}

bool is_identifier(std::string_view s) {
    if (s.empty())
        return false;
    if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_')
        return false;
    for (char c : s) {
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_')
            return false;
    }
    return true;
}

std::string_view indent_of(std::string_view line) {
    std::size_t i = 0;
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t'))
        ++i;
    return line.substr(0, i);
}

// Cuts a line at the first '#' outside brackets.
std::string_view strip_comment(std::string_view line) {
    int depth = 0;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (c == '[')
            ++depth;
        else if (c == ']' && depth > 0)
            --depth;
        else if (c == '#' && depth == 0)
            return line.substr(0, i);
    }
    return line;
}

// `/* -- NAME --` or `{ -- NAME --`; returns name when the line matches.
std::optional<std::pair<BlockFlavor, std::string>> match_block_opener(std::string_view line) {
    std::string_view body = trim(line);
    BlockFlavor flavor;
    if (body.rfind("/*", 0) == 0) {
        flavor = BlockFlavor::comment;
        body.remove_prefix(2);
    } else if (body.rfind("{", 0) == 0) {
        flavor = BlockFlavor::code;
        body.remove_prefix(1);
    } else {
        return std::nullopt;
    }
    body = ltrim(body);
    if (body.rfind("--", 0) != 0)
        return std::nullopt;
    body.remove_prefix(2);
    body = trim(body);
    if (body.size() < 2 || body.substr(body.size() - 2) != "--")
        return std::nullopt;
    std::string_view name = rtrim(body.substr(0, body.size() - 2));
    if (name.empty() || name.find_first_of(" \t") != std::string_view::npos)
        return std::nullopt;
    return std::make_pair(flavor, std::string(name));
}

// Everything the three text formats share: a sequence of function entries
// with parameters, directives and blocks.
struct RawEntry {
    std::string name;
    AttrMap attributes;
    std::vector<ParameterSpec> parameters;
    std::vector<Block> blocks;
    SourceLocation location;
};

struct EntryParseOptions {
    bool allow_directives = true;
    bool allow_blocks = true;
};

class EntryParser {
public:
    EntryParser(std::string_view filename, EntryParseOptions options, Diagnostics& diags)
        : filename_(filename), options_(options), diags_(diags) {}

    std::vector<RawEntry> parse(std::string_view text) {
        for (const Line& line : split_lines(text))
            feed(line);
        finish();
        return std::move(entries_);
    }

private:
    enum class Mode { normal, comment_block, code_block, bracket };

    SourceLocation loc(int line) const { return {std::string(filename_), line}; }

    void feed(const Line& line) {
        switch (mode_) {
            case Mode::comment_block:
                if (trim(line.text) == "*/") {
                    close_block();
                } else {
                    block_body_.append(line.text);
                    block_body_.push_back('\n');
                }
                return;
            case Mode::code_block: {
                std::string_view body = line.text;
                if (indent_of(body) == block_indent_ && trim(body) == "}") {
                    close_block();
                } else {
                    block_body_.append(line.text);
                    block_body_.push_back('\n');
                }
                return;
            }
            case Mode::bracket:
                consume_description(line.text, line.number);
                return;
            case Mode::normal:
                break;
        }

        std::string_view text = strip_comment(line.text);
        if (trim(text).empty())
            return;

        if (auto opener = match_block_opener(text)) {
            if (!options_.allow_blocks) {
                diags_.error(loc(line.number), "block not allowed in this file format");
                skip_block_ = true;
            } else if (!current_) {
                diags_.error(loc(line.number), "block outside a function");
                skip_block_ = true;
            } else {
                skip_block_ = false;
            }
            block_flavor_ = opener->first;
            block_name_ = opener->second;
            block_indent_ = std::string(indent_of(text));
            block_body_.clear();
            block_open_line_ = line.number;
            mode_ = block_flavor_ == BlockFlavor::comment ? Mode::comment_block : Mode::code_block;
            return;
        }

        if (indent_of(text).empty()) {
            open_function(text, line.number);
            return;
        }

        if (!current_) {
            diags_.error(loc(line.number), "member line outside a function");
            return;
        }

        std::string_view body = ltrim(text);
        if (body.front() == '.') {
            parse_directive(body, line.number);
            return;
        }
        if (body.front() == '[') {
            // Description continuation for the previous parameter.
            if (current_->parameters.empty()) {
                diags_.error(loc(line.number), "description with no preceding parameter");
                return;
            }
            mode_ = Mode::bracket;
            bracket_depth_ = 0;
            bracket_open_line_ = line.number;
            desc_.clear();
            desc_started_ = false;
            consume_description(text, line.number);
            return;
        }
        parse_parameter(text, line.number);
    }

    void finish() {
        switch (mode_) {
            case Mode::comment_block:
            case Mode::code_block:
                diags_.error(loc(block_open_line_), "unterminated block '" + block_name_ + "'");
                break;
            case Mode::bracket:
                diags_.error(loc(bracket_open_line_), "unterminated bracketed description");
                break;
            case Mode::normal:
                break;
        }
        flush_current();
    }

    void open_function(std::string_view text, int line_number) {
        std::string_view body = rtrim(text);
        if (body.empty() || body.back() != ':' || !is_identifier(body.substr(0, body.size() - 1))) {
            diags_.error(loc(line_number), "malformed top-level line; expected 'Name:'");
            return;
        }
        flush_current();
        current_.emplace();
        current_->name = std::string(body.substr(0, body.size() - 1));
        current_->location = loc(line_number);
    }

    void flush_current() {
        if (current_)
            entries_.push_back(std::move(*current_));
        current_.reset();
    }

    void parse_directive(std::string_view body, int line_number) {
        if (!options_.allow_directives) {
            diags_.error(loc(line_number), "directive not allowed in standard API file");
            return;
        }
        std::size_t colon = body.find(':');
        if (colon == std::string_view::npos) {
            diags_.error(loc(line_number), "malformed directive; expected '.key: value'");
            return;
        }
        std::string_view key = rtrim(body.substr(0, colon));
        if (key.size() < 2 || !is_identifier(key.substr(1))) {
            diags_.error(loc(line_number), "malformed directive key '" + std::string(key) + "'");
            return;
        }
        std::string_view value = trim(body.substr(colon + 1));
        current_->attributes.set(std::string(key), std::string(value));
    }

    void parse_parameter(std::string_view text, int line_number) {
        std::string_view body = ltrim(text);
        std::size_t colon = body.find(':');
        if (colon == std::string_view::npos) {
            diags_.error(loc(line_number), "malformed member line; expected 'name: KIND, ...'");
            return;
        }
        std::string name(rtrim(body.substr(0, colon)));
        if (!is_identifier(name)) {
            diags_.error(loc(line_number), "invalid parameter name '" + name + "'");
            return;
        }
        for (const auto& p : current_->parameters) {
            if (p.name == name)
                diags_.error(loc(line_number),
                             "duplicate parameter '" + name + "' in function '" + current_->name + "'");
        }

        ParameterSpec param;
        param.name = std::move(name);

        std::string_view rest = body.substr(colon + 1);
        std::string token;
        bool first_token = true;
        auto take_token = [&](int ln) {
            std::string t(trim(token));
            token.clear();
            if (t.empty())
                return;
            if (first_token) {
                param.kind = t;
                first_token = false;
                return;
            }
            apply_flag(param, t, ln);
        };

        for (std::size_t i = 0; i < rest.size(); ++i) {
            char c = rest[i];
            if (c == ',') {
                take_token(line_number);
            } else if (c == '[') {
                take_token(line_number);
                if (param.kind.empty()) {
                    diags_.error(loc(line_number),
                                 "parameter '" + param.name + "' is missing a kind");
                    return;
                }
                // Begin bracketed description; may span lines.
                current_->parameters.push_back(std::move(param));
                mode_ = Mode::bracket;
                bracket_depth_ = 0;
                bracket_open_line_ = line_number;
                desc_.clear();
                desc_started_ = false;
                consume_description(rest.substr(i), line_number);
                return;   // rest of the line handled by the bracket consumer
            } else {
                token.push_back(c);
            }
        }
        take_token(line_number);

        if (param.kind.empty()) {
            diags_.error(loc(line_number), "parameter '" + param.name + "' is missing a kind");
            return;
        }
        current_->parameters.push_back(std::move(param));
    }

    void apply_flag(ParameterSpec& param, std::string_view flag, int line_number) {
        std::size_t eq = flag.find('=');
        if (eq == std::string_view::npos) {
            diags_.error(loc(line_number), "unknown flag '" + std::string(flag) + "'");
            return;
        }
        std::string_view key = rtrim(flag.substr(0, eq));
        std::string_view value = ltrim(flag.substr(eq + 1));
        if (key == "constant" || key == "pointer") {
            std::optional<bool> b;
            if (value == "True")
                b = true;
            else if (value == "False")
                b = false;
            if (!b) {
                diags_.error(loc(line_number), "flag '" + std::string(key) +
                                                   "' expects True or False, got '" +
                                                   std::string(value) + "'");
                return;
            }
            if (key == "constant")
                param.constant = b;
            else
                param.pointer_hint = *b ? PointerHint::forced_pointer : PointerHint::forced_value;
        } else if (key == "direction") {
            auto d = direction_from_string(value);
            if (!d) {
                diags_.error(loc(line_number),
                             "direction expects in, out or inout, got '" + std::string(value) + "'");
                return;
            }
            param.direction = d;
        } else if (key == "length") {
            param.length_expr = std::string(value);
        } else {
            diags_.error(loc(line_number), "unknown flag '" + std::string(key) + "'");
        }
    }

    // Feeds one line (or a line suffix starting at '[') of a bracketed
    // description.  Segments are trimmed and joined with single spaces.
    void consume_description(std::string_view text, int line_number) {
        std::string segment;
        std::size_t i = 0;
        bool closed = false;
        if (bracket_depth_ == 0) {
            std::string_view lt = ltrim(text);
            i = text.size() - lt.size();
            if (i < text.size() && text[i] == '[') {
                bracket_depth_ = 1;
                ++i;
            }
        }
        for (; i < text.size(); ++i) {
            char c = text[i];
            if (closed) {
                if (c == '#')
                    break;
                if (!std::isspace(static_cast<unsigned char>(c))) {
                    diags_.error(loc(line_number), "text after bracketed description");
                    break;
                }
                continue;
            }
            if (c == '[') {
                ++bracket_depth_;
                segment.push_back(c);
            } else if (c == ']') {
                --bracket_depth_;
                if (bracket_depth_ == 0)
                    closed = true;
                else
                    segment.push_back(c);
            } else {
                segment.push_back(c);
            }
        }

        std::string_view piece = trim(segment);
        if (!piece.empty()) {
            if (desc_started_)
                desc_.push_back(' ');
            desc_.append(piece);
            desc_started_ = true;
        }

        if (closed) {
            current_->parameters.back().description = desc_;
            mode_ = Mode::normal;
        }
    }

    void close_block() {
        mode_ = Mode::normal;
        if (skip_block_)
            return;
        Block block{block_name_, block_flavor_, block_body_, block_indent_};
        for (auto& b : current_->blocks) {
            if (b.name == block.name) {
                b = std::move(block);
                return;
            }
        }
        current_->blocks.push_back(std::move(block));
    }

    std::string_view filename_;
    EntryParseOptions options_;
    Diagnostics& diags_;

    std::vector<RawEntry> entries_;
    std::optional<RawEntry> current_;
    Mode mode_ = Mode::normal;

    // block state
    BlockFlavor block_flavor_ = BlockFlavor::comment;
    std::string block_name_;
    std::string block_indent_;
    std::string block_body_;
    int block_open_line_ = 0;
    bool skip_block_ = false;

    // bracketed description state
    int bracket_depth_ = 0;
    int bracket_open_line_ = 0;
    std::string desc_;
    bool desc_started_ = false;
};

FunctionSpec entry_to_function(RawEntry&& entry, Origin origin) {
    FunctionSpec fn;
    fn.name = std::move(entry.name);
    fn.parameters = std::move(entry.parameters);
    fn.attributes = std::move(entry.attributes);
    fn.blocks = std::move(entry.blocks);
    fn.origin = origin;
    return fn;
}

}  // namespace

ApiRegistry parse_standard_api(std::string_view text, std::string_view filename,
                               Diagnostics& diags) {
    EntryParser parser(filename, {/*allow_directives=*/false, /*allow_blocks=*/false}, diags);
    std::vector<RawEntry> entries = parser.parse(text);
    ApiRegistry registry;
    for (auto& entry : entries) {
        if (registry.contains(entry.name)) {
            diags.error(entry.location,
                        "duplicate function '" + entry.name + "' in standard API file");
            continue;
        }
        registry.insert(entry_to_function(std::move(entry), Origin::standard));
    }
    return registry;
}

OverlayConfig parse_custom_config(std::string_view text, std::string_view filename,
                                  Diagnostics& diags) {
    EntryParser parser(filename, {/*allow_directives=*/true, /*allow_blocks=*/true}, diags);
    std::vector<RawEntry> entries = parser.parse(text);
    OverlayConfig config;
    config.entries.reserve(entries.size());
    for (auto& entry : entries) {
        OverlayEntry oe;
        oe.function_name = std::move(entry.name);
        oe.attributes = std::move(entry.attributes);
        oe.parameters = std::move(entry.parameters);
        oe.blocks = std::move(entry.blocks);
        oe.location = std::move(entry.location);
        config.entries.push_back(std::move(oe));
    }
    return config;
}

ApiRegistry parse_registry_dump(std::string_view text, std::string_view filename,
                                Diagnostics& diags) {
    EntryParser parser(filename, {/*allow_directives=*/true, /*allow_blocks=*/true}, diags);
    std::vector<RawEntry> entries = parser.parse(text);
    ApiRegistry registry;
    for (auto& entry : entries) {
        if (registry.contains(entry.name)) {
            diags.error(entry.location, "duplicate function '" + entry.name + "' in dump");
            continue;
        }
        Origin origin = Origin::standard;
        if (auto o = entry.attributes.get(".origin")) {
            origin = (*o == "custom") ? Origin::custom : Origin::standard;
            entry.attributes.erase(".origin");
        }
        registry.insert(entry_to_function(std::move(entry), origin));
    }
    return registry;
}

KindMapSet parse_kind_maps(std::string_view text, std::string_view filename, Diagnostics& diags) {
    KindMapSet maps;
    KindTable* current = nullptr;
    std::vector<KindTable> tables;
    std::vector<int> table_lines;

    for (const Line& line : split_lines(text)) {
        SourceLocation here{std::string(filename), line.number};
        std::string_view body = strip_comment(line.text);
        if (trim(body).empty())
            continue;
        if (indent_of(body).empty()) {
            std::string_view head = rtrim(body);
            if (head.back() != ':' || !is_identifier(head.substr(0, head.size() - 1))) {
                diags.error(here, "malformed table line; expected 'TABLE_NAME:'");
                continue;
            }
            std::string name(head.substr(0, head.size() - 1));
            for (const auto& t : tables) {
                if (t.name == name)
                    diags.error(here, "duplicate table '" + name + "'");
            }
            tables.push_back(KindTable{std::move(name), std::nullopt, {}});
            table_lines.push_back(line.number);
            current = &tables.back();
            continue;
        }
        if (!current) {
            diags.error(here, "entry outside a table");
            continue;
        }
        std::string_view entry = trim(body);
        std::size_t colon = entry.find(':');
        if (colon == std::string_view::npos) {
            diags.error(here, "malformed entry; expected 'KIND: type'");
            continue;
        }
        std::string key(rtrim(entry.substr(0, colon)));
        std::string value(trim(entry.substr(colon + 1)));
        if (key == ".base") {
            if (current->base)
                diags.error(here, "duplicate .base in table '" + current->name + "'");
            current->base = value;
            continue;
        }
        if (current->local_lookup(key)) {
            diags.error(here, "duplicate kind '" + key + "' in table '" + current->name + "'");
            continue;
        }
        current->entries.emplace_back(std::move(key), std::move(value));
    }

    for (std::size_t i = 0; i < tables.size(); ++i)
        maps.add_table(std::move(tables[i]));

    // Base references checked once the whole file is known.
    for (std::size_t i = 0; i < maps.tables().size(); ++i) {
        const KindTable& t = maps.tables()[i];
        SourceLocation here{std::string(filename), table_lines[i]};
        std::set<std::string> seen{t.name};
        const KindTable* cur = &t;
        while (cur->base) {
            const KindTable* parent = maps.find_table(*cur->base);
            if (!parent) {
                diags.error(here,
                            "table '" + cur->name + "' names unknown base '" + *cur->base + "'");
                break;
            }
            if (!seen.insert(parent->name).second) {
                diags.error(here, "base chain of table '" + t.name + "' forms a cycle at '" +
                                      parent->name + "'");
                break;
            }
            cur = parent;
        }
    }
    return maps;
}

namespace {

void serialize_parameter(std::ostringstream& os, const ParameterSpec& p) {
    os << "    " << p.name << ": " << p.kind;
    if (p.constant)
        os << ", constant=" << (*p.constant ? "True" : "False");
    if (p.pointer_hint != PointerHint::unset)
        os << ", pointer=" << (p.pointer_hint == PointerHint::forced_pointer ? "True" : "False");
    if (p.direction)
        os << ", direction=" << to_string(*p.direction);
    if (p.length_expr)
        os << ", length=" << *p.length_expr;
    if (p.description)
        os << ", [" << *p.description << "]";
    os << "\n";
}

}  // namespace

std::string block_region_text(const Block& block) {
    std::ostringstream os;
    if (block.flavor == BlockFlavor::comment) {
        os << block.indent << "/* -- " << block.name << " --\n";
        os << block.body;
        os << block.indent << "*/\n";
    } else {
        os << block.indent << "{ -- " << block.name << " --\n";
        os << block.body;
        os << block.indent << "}\n";
    }
    return os.str();
}

std::string serialize_registry(const ApiRegistry& registry) {
    std::ostringstream os;
    bool first = true;
    for (const FunctionSpec& fn : registry) {
        if (!first)
            os << "\n";
        first = false;
        os << fn.name << ":\n";
        if (fn.origin == Origin::custom)
            os << "    .origin: custom\n";
        for (const auto& [k, v] : fn.attributes.items())
            os << "    " << k << ": " << v << "\n";
        for (const ParameterSpec& p : fn.parameters)
            serialize_parameter(os, p);
        for (const Block& b : fn.blocks)
            os << block_region_text(b);
    }
    return os.str();
}

namespace {

ojson parameter_to_json(const ParameterSpec& p) {
    ojson j;
    j["name"] = p.name;
    j["kind"] = p.kind;
    if (p.constant)
        j["constant"] = *p.constant;
    if (p.pointer_hint != PointerHint::unset)
        j["pointer"] = p.pointer_hint == PointerHint::forced_pointer;
    if (p.direction)
        j["direction"] = to_string(*p.direction);
    if (p.length_expr)
        j["length"] = *p.length_expr;
    if (p.description)
        j["desc"] = *p.description;
    return j;
}

[[noreturn]] void schema_error(const std::string& file, const std::string& path,
                               const std::string& what) {
    throw SchemaError(file + ": " + path + ": " + what);
}

}  // namespace

std::string serialize_registry_json(const ApiRegistry& registry) {
    ojson root = ojson::object();
    for (const FunctionSpec& fn : registry) {
        ojson entry;
        ojson params = ojson::array();
        for (const ParameterSpec& p : fn.parameters)
            params.push_back(parameter_to_json(p));
        entry["parameters"] = std::move(params);
        ojson attrs = ojson::object();
        for (const auto& [k, v] : fn.attributes.items())
            attrs[k] = v;
        entry["attributes"] = std::move(attrs);
        root[fn.name] = std::move(entry);
    }
    return root.dump(2) + "\n";
}

ApiRegistry parse_json_export(std::string_view text, std::string_view filename) {
    const std::string file(filename);
    ojson root;
    try {
        root = ojson::parse(text);
    } catch (const ojson::parse_error& e) {
        throw SchemaError(file + ": not well-formed JSON: " + e.what());
    }
    if (!root.is_object())
        schema_error(file, "$", "top level must be an object mapping function names");

    ApiRegistry registry;
    for (const auto& [fname, entry] : root.items()) {
        std::string path = fname;
        if (!entry.is_object())
            schema_error(file, path, "function entry must be an object");
        if (registry.contains(fname))
            schema_error(file, path, "duplicate function name");

        FunctionSpec fn;
        fn.name = fname;
        fn.origin = Origin::standard;

        if (entry.contains("parameters")) {
            const auto& params = entry["parameters"];
            if (!params.is_array())
                schema_error(file, path + ".parameters", "must be an array");
            for (std::size_t i = 0; i < params.size(); ++i) {
                std::string ppath = path + ".parameters[" + std::to_string(i) + "]";
                const auto& pj = params[i];
                if (!pj.is_object())
                    schema_error(file, ppath, "parameter must be an object");
                ParameterSpec p;
                if (!pj.contains("name") || !pj["name"].is_string())
                    schema_error(file, ppath + ".name", "required string field");
                p.name = pj["name"].get<std::string>();
                if (!pj.contains("kind") || !pj["kind"].is_string())
                    schema_error(file, ppath + ".kind", "required string field");
                p.kind = pj["kind"].get<std::string>();
                if (pj.contains("constant")) {
                    if (!pj["constant"].is_boolean())
                        schema_error(file, ppath + ".constant", "must be a boolean");
                    p.constant = pj["constant"].get<bool>();
                }
                if (pj.contains("pointer")) {
                    if (!pj["pointer"].is_boolean())
                        schema_error(file, ppath + ".pointer", "must be a boolean");
                    p.pointer_hint = pj["pointer"].get<bool>() ? PointerHint::forced_pointer
                                                               : PointerHint::forced_value;
                }
                if (pj.contains("direction")) {
                    if (!pj["direction"].is_string())
                        schema_error(file, ppath + ".direction", "must be a string");
                    auto d = direction_from_string(pj["direction"].get<std::string>());
                    if (!d)
                        schema_error(file, ppath + ".direction", "must be in, out or inout");
                    p.direction = d;
                }
                if (pj.contains("length")) {
                    if (!pj["length"].is_string())
                        schema_error(file, ppath + ".length", "must be a string");
                    p.length_expr = pj["length"].get<std::string>();
                }
                if (pj.contains("desc")) {
                    if (!pj["desc"].is_string())
                        schema_error(file, ppath + ".desc", "must be a string");
                    p.description = pj["desc"].get<std::string>();
                }
                for (const auto& dup : fn.parameters) {
                    if (dup.name == p.name)
                        schema_error(file, ppath + ".name", "duplicate parameter name");
                }
                fn.parameters.push_back(std::move(p));
            }
        }

        if (entry.contains("attributes")) {
            const auto& attrs = entry["attributes"];
            if (!attrs.is_object())
                schema_error(file, path + ".attributes", "must be an object");
            for (const auto& [k, v] : attrs.items()) {
                if (k.empty() || k[0] != '.')
                    schema_error(file, path + ".attributes." + k,
                                 "attribute keys must start with '.'");
                if (!v.is_string())
                    schema_error(file, path + ".attributes." + k, "must be a string");
                fn.attributes.set(k, v.get<std::string>());
            }
        }

        registry.insert(std::move(fn));
    }
    return registry;
}

}  // namespace mpigen
