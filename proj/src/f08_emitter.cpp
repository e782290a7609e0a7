#include "mpigen/f08_emitter.hpp"

#include <cctype>
#include <sstream>

namespace mpigen {

namespace {

std::string_view trim_view(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

const char* intent_text(Direction d) {
    switch (d) {
        case Direction::in:
            return "INTENT(in)";
        case Direction::out:
            return "INTENT(out)";
        case Direction::inout:
            return "INTENT(inout)";
    }
    return "INTENT(in)";
}

bool is_choice_buffer(const ResolvedParameter& p) {
    return p.source.kind == "BUFFER";
}

// One dummy-argument declaration line.  In the C-interop interface scalars
// pass by VALUE; the Fortran-facing wrapper drops VALUE.  Parameters whose
// sentinel gets substituted need TARGET so c_loc applies.
std::string f08_parameter_decl(const ResolvedParameter& p, bool c_interface, bool target) {
    std::ostringstream os;
    os << p.type_text;
    bool scalar = !p.is_pointer && !p.source.length_expr && !is_choice_buffer(p);
    if (c_interface && scalar)
        os << ", VALUE";
    if (target)
        os << ", TARGET";
    os << ", " << intent_text(p.source.effective_direction());
    os << " :: " << p.source.name;
    if (p.source.length_expr)
        os << "(" << *p.source.length_expr << ")";
    return os.str();
}

std::string interface_routine_name(const VariantPlan& vp) {
    return "MPIR_C_" + vp.c_symbol;
}

std::string wrapper_name(const VariantPlan& vp) {
    return vp.c_symbol + "_f08";
}

std::string arg_list(const VariantPlan& vp) {
    std::string out;
    for (std::size_t i = 0; i < vp.params.size(); ++i) {
        if (i)
            out += ", ";
        out += vp.params[i].source.name;
    }
    return out;
}

}  // namespace

const F08Constant* F08ConstantsTable::find(std::string_view kind) const {
    for (const auto& [k, v] : entries) {
        if (k == kind)
            return &v;
    }
    return nullptr;
}

// Format: `KIND: fortran-sentinel, c-sentinel` per line, # comments.
F08ConstantsTable parse_f08_constants(std::string_view text, std::string_view filename,
                                      Diagnostics& diags) {
    F08ConstantsTable table;
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
        line = trim_view(line);
        if (!line.empty()) {
            std::size_t colon = line.find(':');
            std::size_t comma = line.find(',', colon == std::string_view::npos ? 0 : colon);
            if (colon == std::string_view::npos || comma == std::string_view::npos) {
                diags.error(here, "malformed constants line; expected 'KIND: fortran, c'");
            } else {
                std::string kind(trim_view(line.substr(0, colon)));
                F08Constant c{std::string(trim_view(line.substr(colon + 1, comma - colon - 1))),
                              std::string(trim_view(line.substr(comma + 1)))};
                if (kind.empty() || c.fortran_sentinel.empty() || c.c_sentinel.empty())
                    diags.error(here, "constants line with empty field");
                else if (table.find(kind))
                    diags.error(here, "duplicate constants entry for kind '" + kind + "'");
                else
                    table.entries.emplace_back(std::move(kind), std::move(c));
            }
        }
        if (nl == std::string_view::npos)
            break;
        pos = nl + 1;
    }
    return table;
}

bool binds_directly(const EmitPlan& plan, const F08ConstantsTable& constants) {
    for (const ParameterSpec& p : plan.fn.parameters) {
        if (constants.find(p.kind))
            return false;
    }
    return true;
}

std::string emit_f08_interface(const EmitPlan& plan) {
    std::ostringstream os;
    for (const VariantPlan& vp : plan.variants) {
        os << "! -- " << vp.c_symbol << " --\n";
        os << "function " << interface_routine_name(vp) << "(" << arg_list(vp) << ") &\n";
        os << "    bind(C, name=\"" << vp.c_symbol << "\") result(ierror)\n";
        os << "    implicit none\n";
        for (const ResolvedParameter& p : vp.params)
            os << "    " << f08_parameter_decl(p, /*c_interface=*/true, /*target=*/false) << "\n";
        os << "    INTEGER :: ierror\n";
        os << "end function " << interface_routine_name(vp) << "\n";
    }
    return os.str();
}

std::string emit_f08_wrapper(const EmitPlan& plan, const F08ConstantsTable& constants) {
    std::ostringstream os;
    for (const VariantPlan& vp : plan.variants) {
        std::vector<std::pair<const ResolvedParameter*, const F08Constant*>> substitutions;
        for (const ResolvedParameter& p : vp.params) {
            if (const F08Constant* c = constants.find(p.source.kind))
                substitutions.emplace_back(&p, c);
        }

        os << "! -- " << wrapper_name(vp) << (substitutions.empty() ? " (pass-through)" : "")
           << " --\n";
        std::string args = arg_list(vp);
        os << "subroutine " << wrapper_name(vp) << "(" << args << (args.empty() ? "" : ", ")
           << "ierror)\n";
        os << "    use :: mpi_f08_c_interfaces, only : " << interface_routine_name(vp) << "\n";
        if (!substitutions.empty())
            os << "    use, intrinsic :: iso_c_binding, only : C_PTR, c_loc, c_associated\n";
        os << "    implicit none\n";
        for (const ResolvedParameter& p : vp.params) {
            bool target = false;
            for (const auto& [sp, c] : substitutions)
                target = target || sp == &p;
            os << "    " << f08_parameter_decl(p, /*c_interface=*/false, target) << "\n";
        }
        os << "    INTEGER, INTENT(out) :: ierror\n";
        for (const auto& [p, c] : substitutions)
            os << "    TYPE(C_PTR) :: " << p->source.name << "_cptr\n";

        for (const auto& [p, c] : substitutions) {
            os << "    ! replace the Fortran sentinel with its C counterpart\n";
            os << "    " << p->source.name << "_cptr = c_loc(" << p->source.name << ")\n";
            os << "    if (c_associated(" << p->source.name << "_cptr, c_loc("
               << c->fortran_sentinel << "))) then\n";
            os << "        " << p->source.name << "_cptr = " << c->c_sentinel << "\n";
            os << "    end if\n";
        }

        std::string call_args;
        for (std::size_t i = 0; i < vp.params.size(); ++i) {
            if (i)
                call_args += ", ";
            bool substituted = false;
            for (const auto& [p, c] : substitutions)
                substituted = substituted || p == &vp.params[i];
            call_args += vp.params[i].source.name + (substituted ? "_cptr" : "");
        }
        os << "    ierror = " << interface_routine_name(vp) << "(" << call_args << ")\n";
        os << "end subroutine " << wrapper_name(vp) << "\n";
    }
    return os.str();
}

std::string emit_f08_generic(const EmitPlan& plan) {
    std::ostringstream os;
    const std::string& generic = plan.variants.front().emitted_name;
    os << "interface " << generic << "\n";
    for (const VariantPlan& vp : plan.variants)
        os << "    procedure :: " << wrapper_name(vp) << "\n";
    os << "end interface " << generic << "\n";
    return os.str();
}

namespace {

std::string banner_f90(const std::string& filename) {
    return "! -- " + filename + " --\n! DO NOT EDIT: automatically generated\n\n";
}

std::string banner_c(const std::string& filename) {
    return "/* -- " + filename + " -- */\n/* DO NOT EDIT: automatically generated */\n\n";
}

// Descriptor-query companion name: MPI_Send_c -> MPIR_Send_c_cdesc.
std::string cdesc_name(const VariantPlan& vp) {
    return "MPIR_" + base_function_name(vp.c_symbol) + "_cdesc";
}

std::string cdesc_signature(const VariantPlan& vp) {
    std::string out = "int " + cdesc_name(vp) + "(";
    for (std::size_t i = 0; i < vp.params.size(); ++i) {
        if (i)
            out += ", ";
        const ResolvedParameter& p = vp.params[i];
        if (is_choice_buffer(p))
            out += "CFI_cdesc_t *" + p.source.name;
        else
            out += c_parameter_decl(p);
    }
    out += ")";
    return out;
}

}  // namespace

std::vector<GeneratedFile> emit_f08_corpus(const MergedRegistry& merged, const KindMapSet& maps,
                                           const RenameTable& rename,
                                           const ValidationRuleSet& rules,
                                           const F08ConstantsTable& constants, ExecMode mode,
                                           Diagnostics& diags) {
    const SourceLocation emit_loc{"f08-emitter", 0};
    const std::size_t n = merged.generation_set.size();

    struct PerFunction {
        std::string interface_text;
        std::string wrapper_text;
        std::string generic_text;
        std::string cdesc_decls;
        std::string cdesc_stubs;
        std::string error;
    };
    std::vector<PerFunction> parts(n);
    // The C resolution drives the cdesc signatures.
    std::vector<EmitPlan> c_plans(n);

    for_each_index(n, mode, [&](std::size_t i) {
        const FunctionSpec* fn = merged.functions.find(merged.generation_set[i]);
        try {
            EmitPlan plan = plan_function(*fn, Language::f08, maps, rename, rules,
                                          ProfilingSchemeId::none);
            parts[i].interface_text = emit_f08_interface(plan);
            parts[i].wrapper_text = emit_f08_wrapper(plan, constants);
            parts[i].generic_text = emit_f08_generic(plan);

            bool has_buffer = false;
            for (const ParameterSpec& p : fn->parameters)
                has_buffer = has_buffer || p.kind == "BUFFER";
            if (has_buffer) {
                c_plans[i] = plan_function(*fn, Language::c, maps, rename, rules,
                                           ProfilingSchemeId::none);
                std::ostringstream decls, stubs;
                for (const VariantPlan& vp : c_plans[i].variants) {
                    decls << cdesc_signature(vp) << ";\n";
                    stubs << cdesc_signature(vp) << "\n";
                    stubs << "{\n";
                    stubs << "    /* descriptor decoding depends on the compiler ABI; forward\n";
                    stubs << "       the base address until a real implementation lands */\n";
                    std::string call_args;
                    for (std::size_t k = 0; k < vp.params.size(); ++k) {
                        if (k)
                            call_args += ", ";
                        const ResolvedParameter& p = vp.params[k];
                        call_args += is_choice_buffer(p) ? p.source.name + "->base_addr"
                                                         : p.source.name;
                    }
                    stubs << "    return " << vp.emitted_name << "(" << call_args << ");\n";
                    stubs << "}\n\n";
                }
                parts[i].cdesc_decls = decls.str();
                parts[i].cdesc_stubs = stubs.str();
            }
        } catch (const GenError& e) {
            parts[i].error = e.what();
        }
    });

    bool bad = false;
    for (std::size_t i = 0; i < n; ++i) {
        if (!parts[i].error.empty()) {
            diags.error(emit_loc, parts[i].error);
            bad = true;
        }
    }
    if (bad)
        return {};

    std::vector<GeneratedFile> files;

    std::ostringstream interfaces;
    interfaces << banner_f90("mpi_f08_interfaces.f90");
    interfaces << "module mpi_f08_c_interfaces\n";
    interfaces << "implicit none\n";
    interfaces << "\n";
    interfaces << "interface\n";
    interfaces << "\n";
    for (std::size_t i = 0; i < n; ++i)
        interfaces << parts[i].interface_text << "\n";
    interfaces << "end interface\n";
    interfaces << "\n";
    interfaces << "! generic interfaces unifying the small and large-count specifics\n";
    interfaces << "\n";
    for (std::size_t i = 0; i < n; ++i)
        interfaces << parts[i].generic_text << "\n";
    interfaces << "end module mpi_f08_c_interfaces\n";
    files.push_back({"mpi_f08_interfaces.f90", interfaces.str()});

    std::ostringstream wrappers;
    wrappers << banner_f90("mpi_f08_wrappers.f90");
    wrappers << "module mpi_f08_wrappers\n";
    wrappers << "implicit none\n";
    wrappers << "\n";
    wrappers << "contains\n";
    wrappers << "\n";
    for (std::size_t i = 0; i < n; ++i)
        wrappers << parts[i].wrapper_text << "\n";
    wrappers << "end module mpi_f08_wrappers\n";
    files.push_back({"mpi_f08_wrappers.f90", wrappers.str()});

    bool any_cdesc = false;
    for (std::size_t i = 0; i < n; ++i)
        any_cdesc = any_cdesc || !parts[i].cdesc_decls.empty();
    if (any_cdesc) {
        std::ostringstream header;
        header << banner_c("f08_cdesc.h");
        header << "#ifndef F08_CDESC_H_INCLUDED\n";
        header << "#define F08_CDESC_H_INCLUDED\n";
        header << "\n";
        header << "#include <ISO_Fortran_binding.h>\n";
        header << "\n";
        for (std::size_t i = 0; i < n; ++i)
            header << parts[i].cdesc_decls;
        header << "\n";
        header << "#endif /* F08_CDESC_H_INCLUDED */\n";
        files.push_back({"f08_cdesc.h", header.str()});

        std::ostringstream stubs;
        stubs << banner_c("f08_cdesc_stubs.c");
        stubs << "#include \"f08_cdesc.h\"\n";
        stubs << "\n";
        for (std::size_t i = 0; i < n; ++i)
            stubs << parts[i].cdesc_stubs;
        files.push_back({"f08_cdesc_stubs.c", stubs.str()});
    }

    return files;
}

}  // namespace mpigen
