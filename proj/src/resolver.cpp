#include "mpigen/resolver.hpp"

#include <array>
#include <cctype>

namespace mpigen {

namespace {

constexpr std::array<std::string_view, 12> kHandleKinds = {
    "COMMUNICATOR", "DATATYPE", "REQUEST", "OP",      "INFO",    "GROUP",
    "WINDOW",       "FILE",     "MESSAGE", "SESSION", "ERRHANDLER", "STREAM"};

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

std::vector<std::string> split_list(std::string_view s) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        std::size_t comma = s.find(',', pos);
        std::string_view piece =
            comma == std::string_view::npos ? s.substr(pos) : s.substr(pos, comma - pos);
        piece = trim(piece);
        if (!piece.empty())
            out.emplace_back(piece);
        if (comma == std::string_view::npos)
            break;
        pos = comma + 1;
    }
    return out;
}

std::optional<RuleId> rule_from_string(std::string_view s) {
    if (s == "comm_valid")
        return RuleId::comm_valid;
    if (s == "datatype_valid_committed")
        return RuleId::datatype_valid_committed;
    if (s == "rank_send")
        return RuleId::rank_send;
    if (s == "rank_recv")
        return RuleId::rank_recv;
    if (s == "rank_plain")
        return RuleId::rank_plain;
    if (s == "tag_valid")
        return RuleId::tag_valid;
    if (s == "count_nonnegative")
        return RuleId::count_nonnegative;
    if (s == "buffer_addr")
        return RuleId::buffer_addr;
    if (s == "request_valid")
        return RuleId::request_valid;
    if (s == "none")
        return RuleId::none;
    return std::nullopt;
}

}  // namespace

const char* kind_table_name(Language language, SizeVariant size) {
    if (language == Language::c)
        return size == SizeVariant::small ? "SMALL_C_KIND_MAP" : "BIG_C_KIND_MAP";
    return size == SizeVariant::small ? "SMALL_F08_KIND_MAP" : "BIG_F08_KIND_MAP";
}

bool is_poly(std::string_view kind) {
    return kind.rfind("POLY", 0) == 0;
}

bool function_has_poly(const FunctionSpec& fn) {
    for (const auto& p : fn.parameters) {
        if (is_poly(p.kind))
            return true;
    }
    return false;
}

bool is_handle_kind(std::string_view kind) {
    for (auto h : kHandleKinds) {
        if (kind == h)
            return true;
    }
    return false;
}

bool default_is_pointer(const ParameterSpec& p) {
    if (p.pointer_hint != PointerHint::unset)
        return p.pointer_hint == PointerHint::forced_pointer;
    if (p.kind == "BUFFER")
        return true;
    if (p.effective_direction() != Direction::in)
        return true;
    if (p.length_expr)
        return true;
    return false;
}

ResolvedParameter resolve_parameter(const ParameterSpec& p, const EmitVariant& variant,
                                    const KindMapSet& maps) {
    ResolvedParameter r;
    r.source = p;
    try {
        r.type_text = kindmap_lookup(maps, kind_table_name(variant.language, variant.size), p.kind);
    } catch (const UnknownKindError& e) {
        throw UnknownKindError(std::string(e.what()) + " (parameter '" + p.name + "')");
    }
    r.is_pointer = default_is_pointer(p);

    if (variant.language == Language::c) {
        if (is_handle_kind(p.kind) && p.effective_direction() != Direction::out) {
            // MPI_Comm -> MPIR_Comm; falls back to an MPIR_ prefix when the
            // mapped type does not follow the MPI_ naming.
            std::string internal = r.type_text.rfind("MPI_", 0) == 0
                                       ? "MPIR_" + r.type_text.substr(4)
                                       : "MPIR_" + r.type_text;
            r.conversion = Conversion{ConversionKind::handle_to_internal, std::move(internal)};
        } else if (is_poly(p.kind) && variant.size == SizeVariant::big) {
            std::string internal = "MPI_Aint";
            try {
                internal = kindmap_lookup(maps, kind_table_name(variant.language, variant.size),
                                          "INTERNAL_COUNT");
            } catch (const GenError&) {
                // INTERNAL_COUNT not bound; keep the address-sized default.
            }
            ConversionKind ck = p.effective_direction() == Direction::out
                                    ? ConversionKind::count_widen_out
                                    : ConversionKind::count_narrow_in;
            r.conversion = Conversion{ck, std::move(internal)};
        } else if (is_poly(p.kind) && p.effective_direction() == Direction::out) {
            // Small-variant wide-out parameters still need a local bounce:
            // the external int* and the internal count type are distinct
            // pointer types.
            std::string internal = "MPI_Aint";
            try {
                internal = kindmap_lookup(maps, kind_table_name(variant.language, variant.size),
                                          "INTERNAL_COUNT");
            } catch (const GenError&) {
            }
            if (internal != r.type_text)
                r.conversion = Conversion{ConversionKind::count_widen_out, std::move(internal)};
        }
    }
    return r;
}

const char* to_string(RuleId id) {
    switch (id) {
        case RuleId::comm_valid:
            return "comm_valid";
        case RuleId::datatype_valid_committed:
            return "datatype_valid_committed";
        case RuleId::rank_send:
            return "rank_send";
        case RuleId::rank_recv:
            return "rank_recv";
        case RuleId::rank_plain:
            return "rank_plain";
        case RuleId::tag_valid:
            return "tag_valid";
        case RuleId::count_nonnegative:
            return "count_nonnegative";
        case RuleId::buffer_addr:
            return "buffer_addr";
        case RuleId::request_valid:
            return "request_valid";
        case RuleId::none:
            return "none";
    }
    return "none";
}

ValidationRuleSet ValidationRuleSet::defaults() {
    ValidationRuleSet rules;
    rules.send_patterns = {"Send", "send"};
    rules.recv_patterns = {"Recv", "recv", "Probe", "probe"};
    rules.kind_rules = {
        {"COMMUNICATOR", "comm_valid"},
        {"DATATYPE", "datatype_valid_committed"},
        {"RANK", "rank_by_class"},
        {"TAG", "tag_valid"},
        {"BUFFER", "buffer_addr"},
        {"*NNI", "count_nonnegative"},
    };
    return rules;
}

ValidationRuleSet parse_validation_rules(std::string_view text, std::string_view filename,
                                         Diagnostics& diags) {
    ValidationRuleSet rules;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        std::string_view line =
            nl == std::string_view::npos ? text.substr(pos) : text.substr(pos, nl - pos);
        ++line_no;
        SourceLocation here{std::string(filename), line_no};

        std::size_t hash = line.find('#');
        if (hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (!line.empty()) {
            std::size_t colon = line.find(':');
            if (colon == std::string_view::npos) {
                diags.error(here, "malformed rules line; expected 'KEY: value'");
            } else {
                std::string_view key = rtrim(line.substr(0, colon));
                std::string_view value = trim(line.substr(colon + 1));
                if (key == "send_class") {
                    rules.send_patterns = split_list(value);
                } else if (key == "recv_class") {
                    rules.recv_patterns = split_list(value);
                } else if (key.empty()) {
                    diags.error(here, "empty rule key");
                } else {
                    if (value != "rank_by_class" && !rule_from_string(value)) {
                        diags.error(here, "unknown validation rule '" + std::string(value) + "'");
                    } else {
                        rules.kind_rules.emplace_back(std::string(key), std::string(value));
                    }
                }
            }
        }

        if (nl == std::string_view::npos)
            break;
        pos = nl + 1;
    }
    return rules;
}

FunctionClass classify_function(std::string_view name, const ValidationRuleSet& rules) {
    for (const auto& pat : rules.send_patterns) {
        if (name.find(pat) != std::string_view::npos)
            return FunctionClass::send;
    }
    for (const auto& pat : rules.recv_patterns) {
        if (name.find(pat) != std::string_view::npos)
            return FunctionClass::recv;
    }
    return FunctionClass::plain;
}

RuleId validation_rule_for(const ParameterSpec& p, const FunctionSpec& fn,
                           const ValidationRuleSet& rules) {
    // Pure outputs cannot be validated on entry; a receive buffer's address
    // still can.
    if (p.effective_direction() == Direction::out && p.kind != "BUFFER")
        return RuleId::none;

    const std::string* rule_name = nullptr;
    for (const auto& [pattern, rule] : rules.kind_rules) {
        if (pattern == p.kind) {
            rule_name = &rule;
            break;
        }
    }
    if (!rule_name) {
        for (const auto& [pattern, rule] : rules.kind_rules) {
            if (pattern.size() > 1 && pattern.front() == '*') {
                std::string_view suffix(pattern);
                suffix.remove_prefix(1);
                if (p.kind.size() >= suffix.size() &&
                    std::string_view(p.kind).substr(p.kind.size() - suffix.size()) == suffix) {
                    rule_name = &rule;
                    break;
                }
            }
        }
    }
    if (!rule_name)
        return RuleId::none;

    if (*rule_name == "rank_by_class") {
        switch (classify_function(fn.name, rules)) {
            case FunctionClass::send:
                return RuleId::rank_send;
            case FunctionClass::recv:
                return RuleId::rank_recv;
            case FunctionClass::plain:
                return RuleId::rank_plain;
        }
    }
    return rule_from_string(*rule_name).value_or(RuleId::none);
}

}  // namespace mpigen
