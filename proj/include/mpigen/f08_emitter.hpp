// mpigen/f08_emitter.hpp - Fortran 2008 binding emission: C-interop
// interface blocks, constant-checking wrappers, generic interfaces
#pragma once

#include <string>
#include <vector>

#include "mpigen/c_emitter.hpp"

namespace mpigen {

struct F08Constant {
    std::string fortran_sentinel;
    std::string c_sentinel;

    bool operator==(const F08Constant&) const = default;
};

// Kind -> sentinel substitution pairs (docs/f08-constants.md).
struct F08ConstantsTable {
    std::vector<std::pair<std::string, F08Constant>> entries;

    const F08Constant* find(std::string_view kind) const;
};

F08ConstantsTable parse_f08_constants(std::string_view text, std::string_view filename,
                                      Diagnostics& diags);

// True when no wrapper-level constant substitution applies; the wrapper is
// then a thin pass-through.
bool binds_directly(const EmitPlan& plan, const F08ConstantsTable& constants);

// Interface block declaring the C-linkable routine for each variant, with
// assumed-type/assumed-rank choice buffers and intents from the parameter
// directions.
std::string emit_f08_interface(const EmitPlan& plan);

// Wrapper subprogram per variant, substituting Fortran sentinels with the
// C counterparts from the constants table before invoking the interface.
std::string emit_f08_wrapper(const EmitPlan& plan, const F08ConstantsTable& constants);

// Generic-interface block unifying the small and large-count specifics
// under one public name.
std::string emit_f08_generic(const EmitPlan& plan);

// Interface module + wrappers module (+ descriptor-query declarations and
// stub bodies for choice-buffer functions).  Same all-or-nothing contract
// as the C corpus emitter.
std::vector<GeneratedFile> emit_f08_corpus(const MergedRegistry& merged, const KindMapSet& maps,
                                           const RenameTable& rename,
                                           const ValidationRuleSet& rules,
                                           const F08ConstantsTable& constants, ExecMode mode,
                                           Diagnostics& diags);

}  // namespace mpigen
