// mpigen/c_emitter.hpp - C binding source emission: profiling block, man
// page, validation, handle conversion, early returns, large-count twins,
// MPIX renaming
#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mpigen/overlay.hpp"
#include "mpigen/parallel.hpp"
#include "mpigen/resolver.hpp"

namespace mpigen {

enum class ProfilingSchemeId { weak_symbol, macro_rename, qmpi, none };

const char* to_string(ProfilingSchemeId id);
std::optional<ProfilingSchemeId> scheme_from_string(std::string_view s);

// Region delimiters recognized by the scheme-orthogonality mask.
inline constexpr const char* kProfilingBlockBegin = "/* -- Profiling Block -- */";
inline constexpr const char* kProfilingBlockEnd = "/* -- End Profiling Block -- */";
inline constexpr const char* kProfilingHookBegin = "/* -- Profiling Hook -- */";
inline constexpr const char* kProfilingHookEnd = "/* -- End Profiling Hook -- */";

// Functions emitted under the experimental namespace prefix.
struct RenameTable {
    std::vector<std::string> names;

    bool contains(std::string_view name) const;
};

RenameTable parse_rename_table(std::string_view text, std::string_view filename,
                               Diagnostics& diags);

// MPI_Send -> MPIX_Send; names already in the experimental namespace pass
// through unchanged.
std::string apply_mpix_prefix(std::string_view name);

// Strips the namespace prefix: MPI_Send / MPIX_Send -> Send.
std::string base_function_name(std::string_view name);

struct VariantPlan {
    EmitVariant variant;
    std::string emitted_name;   // public name in this language
    std::string c_symbol;       // C-side symbol; bind label for F08
    std::vector<ResolvedParameter> params;
};

struct EmitPlan {
    FunctionSpec fn;
    std::string prefix;                   // "MPI_" or "MPIX_"
    ProfilingSchemeId scheme = ProfilingSchemeId::weak_symbol;
    std::vector<VariantPlan> variants;    // small first; big iff the function has POLY
    std::vector<RuleId> rules;            // parallel to fn.parameters
    std::optional<std::string> early_return;
};

// Resolves every variant of one function.  Throws GenError (UnknownKind
// with function context, unknown early-return rule, ...).
EmitPlan plan_function(const FunctionSpec& fn, Language language, const KindMapSet& maps,
                       const RenameTable& rename, const ValidationRuleSet& rules,
                       ProfilingSchemeId scheme);

struct CEmitOptions {
    ProfilingSchemeId scheme = ProfilingSchemeId::weak_symbol;
    std::string internal_prefix = "MPID_";
    // The [logging] / [enter critical section] macro names; overridable,
    // their semantics live in the internal layer.
    std::string logging_enter = "MPIR_FUNC_ENTER";
    std::string logging_exit = "MPIR_FUNC_EXIT";
    std::string cs_enter = "MPID_THREAD_CS_ENTER(GLOBAL)";
    std::string cs_exit = "MPID_THREAD_CS_EXIT(GLOBAL)";
    std::string error_check_macro = "HAVE_ERROR_CHECKING";

    enum class Layout { per_function, per_group };
    Layout layout = Layout::per_function;
};

// Emits the full source unit for one function (all variants).
// maps supplies LIS_KIND_MAPPING text for the man-page parentheticals.
std::string emit_c_source(const EmitPlan& plan, const KindMapSet& maps,
                          const CEmitOptions& options);

// C declaration for one parameter, e.g. "const void *buf".
std::string c_parameter_decl(const ResolvedParameter& p);

// Emits every generated function plus the prototype index header.
// All-or-nothing: on any per-function error the diagnostics carry the
// aggregated messages and no files are returned.
std::vector<GeneratedFile> emit_c_corpus(const MergedRegistry& merged, const KindMapSet& maps,
                                         const RenameTable& rename,
                                         const ValidationRuleSet& rules,
                                         const CEmitOptions& options, ExecMode mode,
                                         Diagnostics& diags);

// Removes the delimited profiling regions; two corpora emitted under
// different schemes compare equal after masking.
std::string mask_profiling_regions(std::string_view text);

}  // namespace mpigen
