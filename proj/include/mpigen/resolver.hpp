// mpigen/resolver.hpp - semantic kind resolution: types, pointer-ness,
// conversions, and per-parameter validation rule selection
#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mpigen/api_model.hpp"

namespace mpigen {

enum class Language { c, f08 };
enum class SizeVariant { small, big };

struct EmitVariant {
    Language language = Language::c;
    SizeVariant size = SizeVariant::small;
    std::string namespace_prefix = "MPI_";
    std::string suffix;   // "_c" for C big variants, empty otherwise

    bool operator==(const EmitVariant&) const = default;
};

// SMALL_C_KIND_MAP, BIG_C_KIND_MAP, SMALL_F08_KIND_MAP, BIG_F08_KIND_MAP
const char* kind_table_name(Language language, SizeVariant size);

// POLY kinds map to different types in small and big variants.
bool is_poly(std::string_view kind);
bool function_has_poly(const FunctionSpec& fn);

// MPI object handles that convert to internal object pointers in the
// C binding layer.
bool is_handle_kind(std::string_view kind);

// Declarative pointer rule: BUFFER is a pointer; out/inout parameters are
// pointers; array parameters (length_expr set) are pointers; everything
// else passes by value.  pointer_hint overrides.
bool default_is_pointer(const ParameterSpec& p);

enum class ConversionKind {
    handle_to_internal,   // MPI_Comm -> MPIR_Comm*
    count_narrow_in,      // MPI_Count -> internal count, with overflow guard
    count_widen_out       // internal count -> wide out-parameter write-back
};

struct Conversion {
    ConversionKind kind = ConversionKind::handle_to_internal;
    std::string internal_type;

    bool operator==(const Conversion&) const = default;
};

struct ResolvedParameter {
    ParameterSpec source;
    std::string type_text;
    bool is_pointer = false;
    std::optional<Conversion> conversion;

    bool operator==(const ResolvedParameter&) const = default;
};

// Resolves one parameter against the variant's kind table.
// Throws UnknownTableError / UnknownKindError with parameter context.
ResolvedParameter resolve_parameter(const ParameterSpec& p, const EmitVariant& variant,
                                    const KindMapSet& maps);

// ---------------------------------------------------------------------------
// Validation rules

enum class RuleId {
    comm_valid,
    datatype_valid_committed,
    rank_send,
    rank_recv,
    rank_plain,
    tag_valid,
    count_nonnegative,
    buffer_addr,
    request_valid,
    none
};

const char* to_string(RuleId id);

// Kind -> rule table plus the send/recv function-name classes, loadable
// from a rules file (docs/validation-rules.md) so none of it is hard-coded.
struct ValidationRuleSet {
    std::vector<std::string> send_patterns;   // substring match on function name
    std::vector<std::string> recv_patterns;
    // pattern -> rule name; pattern is an exact kind or "*SUFFIX".
    // "rank_by_class" resolves through the function-name classes.
    std::vector<std::pair<std::string, std::string>> kind_rules;

    static ValidationRuleSet defaults();
};

ValidationRuleSet parse_validation_rules(std::string_view text, std::string_view filename,
                                         Diagnostics& diags);

enum class FunctionClass { send, recv, plain };
FunctionClass classify_function(std::string_view name, const ValidationRuleSet& rules);

// Selects the validation rule for a parameter.  Depends only on the kind,
// the function-name class, the direction, and the rule set.  Pure output
// parameters are not validated, except BUFFER whose address always is.
RuleId validation_rule_for(const ParameterSpec& p, const FunctionSpec& fn,
                           const ValidationRuleSet& rules);

}  // namespace mpigen
